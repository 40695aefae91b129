#ifndef SDCIL_DATASET_HPP
#define SDCIL_DATASET_HPP

#include "sdcil/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sdcil {

/// Class id. Dense 0..c-1 after loading; arbitrary non-negative ids inside a registry.
using Label = int;

/// Feature matrix with one integer label per row.
///
/// `class_ids` is the sorted set of labels present; `label_names` maps each id to
/// the token it was read from (index = id) and may be empty for generated data.
class LabeledDataset {
  public:
    LabeledDataset() = default;
    LabeledDataset(Matrix features, std::vector<Label> labels, std::vector<std::string> label_names = {});

    [[nodiscard]] const Matrix &features() const noexcept { return features_; }
    [[nodiscard]] const std::vector<Label> &labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<Label> &class_ids() const noexcept { return class_ids_; }
    [[nodiscard]] const std::vector<std::string> &label_names() const noexcept { return label_names_; }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return features_.cols(); }
    [[nodiscard]] std::size_t class_count() const noexcept { return class_ids_.size(); }

    [[nodiscard]] std::vector<std::size_t> indices_of(Label label) const;
    /// Feature rows of one class, in dataset order.
    [[nodiscard]] Matrix class_rows(Label label) const;
    [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> idx) const;
    /// Token for a class id, or the id itself as text when no dictionary is recorded.
    [[nodiscard]] std::string name_of(Label label) const;

  private:
    Matrix features_;
    std::vector<Label> labels_;
    std::vector<Label> class_ids_;
    std::vector<std::string> label_names_;
};

/// Per-dimension z-score transform fitted on training rows.
struct Scaler {
    static constexpr double min_std = 1e-8;

    std::vector<double> mean;
    std::vector<double> stddev;

    /// Identity transform of the given width.
    static Scaler identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return mean.size(); }
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
    [[nodiscard]] Matrix apply(const Matrix &x) const;
    [[nodiscard]] std::vector<double> invert(std::span<const double> z) const;
    [[nodiscard]] Matrix invert(const Matrix &z) const;

    friend bool operator==(const Scaler &, const Scaler &) = default;
};

struct Standardized {
    Scaler scaler;
    LabeledDataset data;
    /// One entry per column whose spread was floored.
    std::vector<std::string> warnings;
};

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = true;
};

enum class ToyShape { blobs, rings, moons };

/// Reads a comma-separated file. `label_column` defaults to the last column.
/// A first row whose feature tokens are all non-numeric is taken as a header.
LabeledDataset load_csv(const std::filesystem::path &path, std::optional<std::size_t> label_column = std::nullopt);

/// Reads an unlabeled comma-separated file; every column is a feature.
Matrix load_features(const std::filesystem::path &path);

/// Writes features and label tokens in the format `load_csv` reads.
void save_csv(const LabeledDataset &ds, const std::filesystem::path &path, bool header = false);

Standardized fit_standardize(const LabeledDataset &train);

/// Applies a fitted scaler to another dataset (labels untouched).
LabeledDataset transform(const Scaler &scaler, const LabeledDataset &ds);

/// Per class, round(train_fraction * n_class) rows go to train (at least one row
/// on each side), the rest to test. Row order is preserved inside each part.
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset &ds, const SplitSpec &spec);

/// Generated 2D data: `blobs` gives three Gaussian clusters, `rings` a disk inside
/// an annulus, `moons` two interleaved half circles.
LabeledDataset make_toy(ToyShape shape, std::size_t n_per_class, std::uint64_t seed);

/// Three-class, 21-attribute waveform data from the classic generator: each class is
/// a random convex mix of two of three shifted triangular waves plus unit Gaussian noise.
LabeledDataset make_waveform(std::size_t n, std::uint64_t seed);

std::optional<ToyShape> parse_toy_shape(std::string_view name);

}  // namespace sdcil

#endif  // SDCIL_DATASET_HPP
