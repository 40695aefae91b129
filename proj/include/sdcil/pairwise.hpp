#ifndef SDCIL_PAIRWISE_HPP
#define SDCIL_PAIRWISE_HPP

#include "sdcil/dataset.hpp"
#include "sdcil/kernels.hpp"
#include "sdcil/smo.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sdcil {

/// Gaussian C-SVC separating two classes. Positive decision means `label_a`.
struct PairwiseClassifier {
    Label label_a = 0;
    Label label_b = 1;
    /// Training vectors with non-zero multipliers.
    Matrix vectors;
    /// a_i * y_i, y = +1 for label_a rows.
    std::vector<double> coeffs;
    double bias = 0.0;
    KernelWidth width{1.0};
    double cost = 1.0;
    double cv_accuracy = 0.0;
    /// Accuracy of the final model on its own training set.
    double train_accuracy = 0.0;
};

struct CvConfig {
    std::size_t folds = 5;
    /// Defaults to 2^-3 .. 2^7.
    std::vector<double> cost_grid = default_cost_grid();
    /// Empty: `width_count` candidate widths built on the pooled training vectors.
    std::vector<KernelWidth> width_grid;
    std::size_t width_count = 30;
    std::uint64_t seed = 0;

    static std::vector<double> default_cost_grid();
};

/// Fold id per row, stratified on `y`. Uses min(folds, smaller class size) folds, or
/// leave-one-out when the smaller class cannot put two rows in every fold.
std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t folds, std::uint64_t seed,
                                          std::size_t &fold_count);

/// Grid-searches (C, s) by stratified cross-validation on the pooled rows of the
/// two classes, then retrains on all of them. Best mean accuracy wins; ties go to
/// the smaller C, then the smaller s. `label_a` and `label_b` are swapped if needed
/// so that label_a < label_b.
PairwiseClassifier train_pair(const Matrix &rows_a, Label label_a, const Matrix &rows_b, Label label_b,
                              const CvConfig &cv = {}, const SolverConfig &cfg = {});

/// sum coeffs_i k(v_i, x) + bias
double pair_decision(const PairwiseClassifier &clf, std::span<const double> x);

/// label_a if the decision is strictly positive, label_b otherwise.
Label predict_pair(const PairwiseClassifier &clf, std::span<const double> x);

}  // namespace sdcil

#endif  // SDCIL_PAIRWISE_HPP
