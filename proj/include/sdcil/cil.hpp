#ifndef SDCIL_CIL_HPP
#define SDCIL_CIL_HPP

#include "sdcil/dataset.hpp"
#include "sdcil/geometry.hpp"
#include "sdcil/ocsvm.hpp"
#include "sdcil/pairwise.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sdcil {

inline constexpr int model_format_version = 1;

struct CilConfig {
    double nu_default = 0.2;
    /// 0 selects max(5, ceil(sqrt(n))) per class.
    std::size_t k_neighbors = 0;
    double side_threshold = 0.7;
    std::size_t width_candidates = 30;
    CvConfig cv;
    SolverConfig solver;
};

struct ClassEntry {
    Label label = 0;
    std::string name;
    OcsvmModel model;
};

enum class Region { unique_positive, multi_positive, none_positive };

std::string_view region_name(Region r);

struct PredictionDetail {
    Label label = 0;
    Region region = Region::none_positive;
    /// Sorted candidate labels.
    std::vector<Label> possible;
    std::map<Label, double> ocsvm_values;
    /// Pairwise votes per possible class; empty in the unique-positive region.
    std::map<Label, int> votes;
};

/// What one `add_class` call did.
struct AddClassReport {
    Label label = 0;
    WidthSelection selection;
    BoundaryPartition partition;
    std::size_t new_pairs = 0;
    double seconds = 0.0;
    std::vector<std::string> warnings;
};

/// Registry of per-class one-class SVMs plus a 1-vs-1 classifier for every pair of
/// registered classes. Classes are added one at a time; adding a class trains its
/// own model and its pairs against the stored support vectors of the others and
/// leaves every existing entry untouched. Raw class data is not retained.
///
/// Inputs to `add_class` and the predictors are in raw feature units; the stored
/// scaler is applied internally.
class CilModel {
  public:
    using PairKey = std::pair<Label, Label>;

    explicit CilModel(CilConfig config = {}, std::optional<Scaler> scaler = std::nullopt);

    [[nodiscard]] const CilConfig &config() const noexcept { return config_; }
    [[nodiscard]] const std::optional<Scaler> &scaler() const noexcept { return scaler_; }
    [[nodiscard]] const std::vector<ClassEntry> &classes() const noexcept { return classes_; }
    [[nodiscard]] const std::map<PairKey, PairwiseClassifier> &pairs() const noexcept { return pairs_; }
    [[nodiscard]] const ClassEntry *find(Label label) const;
    [[nodiscard]] std::size_t dim() const;

    /// Registers a class. Atomic: on any exception the registry is unchanged.
    /// `nu` defaults to the configured value; values outside [0.1, 0.4] only warn.
    AddClassReport add_class(Label label, const Matrix &raw_rows, std::optional<double> nu = std::nullopt,
                             std::string name = {});

    [[nodiscard]] Label predict(std::span<const double> x) const;
    [[nodiscard]] PredictionDetail predict_detail(std::span<const double> x) const;
    /// Same regions as `predict`, disputes settled by the owner of the nearest support vector.
    [[nodiscard]] Label ocsvm_nn_predict(std::span<const double> x) const;
    /// Decision values of every class model, in registration order.
    [[nodiscard]] std::vector<double> ocsvm_values(std::span<const double> x) const;

    /// Canonical serialized form of one class / one pair entry.
    [[nodiscard]] std::string class_payload(Label label) const;
    [[nodiscard]] std::string pair_payload(Label a, Label b) const;

    [[nodiscard]] std::string to_json_string(int indent = -1) const;
    static CilModel from_json_string(const std::string &text);
    void save(const std::filesystem::path &path) const;
    static CilModel load(const std::filesystem::path &path);

    friend bool operator==(const CilModel &a, const CilModel &b) { return a.to_json_string() == b.to_json_string(); }

  private:
    struct RegionInfo {
        Region region;
        std::vector<Label> possible;
        std::map<Label, double> values;
    };
    RegionInfo classify_region(std::span<const double> z) const;
    std::vector<double> standardize(std::span<const double> x) const;

    CilConfig config_;
    std::optional<Scaler> scaler_;
    std::vector<ClassEntry> classes_;
    std::map<PairKey, PairwiseClassifier> pairs_;
};

/// k-nearest-neighbour vote (Euclidean). Vote ties go to the tied label whose member is nearest.
Label knn_predict(const LabeledDataset &train, std::span<const double> x, std::size_t k = 1);

/// 1-vs-1 C-SVC voting trained on full class data (not support vectors).
class BatchOneVsOne {
  public:
    BatchOneVsOne(const LabeledDataset &train, const CvConfig &cv = {}, const SolverConfig &cfg = {});
    /// Majority vote; ties go to the larger summed pairwise margin, then the smaller label.
    [[nodiscard]] Label predict(std::span<const double> x) const;
    [[nodiscard]] const std::map<CilModel::PairKey, PairwiseClassifier> &pairs() const noexcept { return pairs_; }

  private:
    std::vector<Label> labels_;
    std::map<CilModel::PairKey, PairwiseClassifier> pairs_;
};

Label batch_svm_predict(const LabeledDataset &train, const CvConfig &cv, std::span<const double> x);

}  // namespace sdcil

#endif  // SDCIL_CIL_HPP
