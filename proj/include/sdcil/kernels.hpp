#ifndef SDCIL_KERNELS_HPP
#define SDCIL_KERNELS_HPP

#include "sdcil/matrix.hpp"

#include <span>
#include <vector>

namespace sdcil {

/// Gaussian kernel width s in k(x, y) = exp(-|x - y|^2 / (2 s^2)); same units as feature distance.
class KernelWidth {
  public:
    explicit KernelWidth(double s);
    [[nodiscard]] double value() const noexcept { return s_; }
    /// 1 / (2 s^2)
    [[nodiscard]] double gamma() const noexcept { return 0.5 / (s_ * s_); }
    friend auto operator<=>(const KernelWidth &, const KernelWidth &) = default;

  private:
    double s_;
};

double gaussian(std::span<const double> x, std::span<const double> y, KernelWidth s);

/// Dense symmetric kernel matrix over the rows of one sample set.
class GramMatrix {
  public:
    GramMatrix(Matrix values, KernelWidth width);

    [[nodiscard]] std::size_t size() const noexcept { return values_.rows(); }
    [[nodiscard]] KernelWidth width() const noexcept { return width_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept { return values_.row(i); }
    [[nodiscard]] const Matrix &values() const noexcept { return values_; }

    /// Principal submatrix on `idx` (in that order).
    [[nodiscard]] GramMatrix submatrix(std::span<const std::size_t> idx) const;

  private:
    Matrix values_;
    KernelWidth width_;
};

/// All pairwise squared Euclidean distances between rows.
Matrix squared_distances(const Matrix &x);

/// Kernel matrix from precomputed squared distances; lets width sweeps skip the distance pass.
GramMatrix gram_from_squared(const Matrix &sq_dist, KernelWidth s);

GramMatrix gram(const Matrix &x, KernelWidth s);

/// Median pairwise Euclidean distance, on an evenly strided subsample of at most
/// `max_rows` rows.
double median_pairwise_distance(const Matrix &x, std::size_t max_rows = 500);

/// `count` geometrically spaced widths over [0.05, 20] times the median pairwise
/// distance. Throws DataError when all rows coincide.
std::vector<KernelWidth> candidate_widths(const Matrix &x, std::size_t count = 30);

}  // namespace sdcil

#endif  // SDCIL_KERNELS_HPP
