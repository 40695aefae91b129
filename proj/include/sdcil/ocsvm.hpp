#ifndef SDCIL_OCSVM_HPP
#define SDCIL_OCSVM_HPP

#include "sdcil/dataset.hpp"
#include "sdcil/kernels.hpp"
#include "sdcil/smo.hpp"

#include <span>
#include <vector>

namespace sdcil {

/// Multipliers at or below this are not support vectors.
inline constexpr double sv_threshold = 1e-8;

/// One-class SVM for a single class. Only the support vectors are kept; the
/// hyperplane normal is implicit in (support_vectors, sv_alphas) and its norm is
/// cached in `w_norm`.
struct OcsvmModel {
    Label class_label = 0;
    Matrix support_vectors;
    std::vector<double> sv_alphas;
    double rho = 0.0;
    KernelWidth width{1.0};
    double nu = 0.5;
    double w_norm = 0.0;
    std::size_t train_count = 0;
    bool converged = true;
    /// Rows of the training matrix that became support vectors. Not persisted.
    std::vector<std::size_t> sv_indices;

    [[nodiscard]] std::size_t dim() const noexcept { return support_vectors.cols(); }
    [[nodiscard]] double box_bound() const noexcept { return 1.0 / (nu * static_cast<double>(train_count)); }
};

/// Solves the dual on a precomputed kernel matrix of `x`.
OcsvmModel build_ocsvm(const Matrix &x, const GramMatrix &k, double nu, const SolverConfig &cfg = {},
                       Label label = 0);

OcsvmModel train_ocsvm(const Matrix &x, double nu, KernelWidth s, const SolverConfig &cfg = {}, Label label = 0);

/// sqrt(sum_ij a_i a_j k(sv_i, sv_j)).
double hyperplane_norm(const Matrix &support_vectors, std::span<const double> alphas, KernelWidth s);

/// sum_i a_i k(sv_i, x) - rho
double decision_value(const OcsvmModel &model, std::span<const double> x);

/// +1 iff the decision value is strictly positive.
int predict_one(const OcsvmModel &model, std::span<const double> x);

/// w_norm - rho: |w| times the largest distance any image can have on the positive
/// side of the hyperplane. Falls back to w_norm when that is not positive.
double cap_height(const OcsvmModel &model);

/// Signed feature-space distance of phi(x) to the hyperplane divided by the largest
/// attainable positive distance, so values from different widths are comparable.
/// Equals decision_value / cap_height; positive inside, at most 1.
double normalized_distance(const OcsvmModel &model, std::span<const double> x);

double sv_fraction(const OcsvmModel &model);

/// Fraction of training samples whose multiplier sits at the box bound 1/(nu l).
double bounded_sv_fraction(const OcsvmModel &model);

}  // namespace sdcil

#endif  // SDCIL_OCSVM_HPP
