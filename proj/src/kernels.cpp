#include "sdcil/kernels.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sdcil {

KernelWidth::KernelWidth(double s) : s_(s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DataError("kernel width must be positive and finite, got " + std::to_string(s));
    }
}

double gaussian(std::span<const double> x, std::span<const double> y, KernelWidth s) {
    if (x.size() != y.size()) {
        throw DataError("kernel arguments differ in dimension (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    }
    return std::exp(-squared_distance(x, y) * s.gamma());
}

GramMatrix::GramMatrix(Matrix values, KernelWidth width) : values_(std::move(values)), width_(width) {
    if (values_.rows() != values_.cols()) {
        throw DataError("kernel matrix must be square");
    }
}

GramMatrix GramMatrix::submatrix(std::span<const std::size_t> idx) const {
    Matrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const auto src = row(idx[a]);
        auto dst = sub.row(a);
        for (std::size_t b = 0; b < idx.size(); ++b) {
            dst[b] = src[idx[b]];
        }
    }
    return {std::move(sub), width_};
}

Matrix squared_distances(const Matrix &x) {
    const std::size_t n = x.rows();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = squared_distance(x.row(i), x.row(j));
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

GramMatrix gram_from_squared(const Matrix &sq_dist, KernelWidth s) {
    const double g = s.gamma();
    std::vector<double> k(sq_dist.values().size());
    std::transform(sq_dist.values().begin(), sq_dist.values().end(), k.begin(),
                   [g](double d2) { return std::exp(-d2 * g); });
    return {Matrix(sq_dist.rows(), sq_dist.cols(), std::move(k)), s};
}

GramMatrix gram(const Matrix &x, KernelWidth s) {
    if (x.rows() == 0) {
        throw DataError("kernel matrix needs at least one row");
    }
    return gram_from_squared(squared_distances(x), s);
}

double median_pairwise_distance(const Matrix &x, std::size_t max_rows) {
    const std::size_t n = x.rows();
    if (n < 2) {
        throw DataError("median pairwise distance needs at least two rows");
    }
    std::vector<std::size_t> pick;
    const std::size_t m = std::min(n, std::max<std::size_t>(max_rows, 2));
    for (std::size_t i = 0; i < m; ++i) {
        pick.push_back(i * n / m);
    }
    std::vector<double> dist;
    dist.reserve(m * (m - 1) / 2);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            dist.push_back(std::sqrt(squared_distance(x.row(pick[a]), x.row(pick[b]))));
        }
    }
    const auto mid = dist.size() / 2;
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
    double med = dist[mid];
    if (dist.size() % 2 == 0) {
        const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (med + lower);
    }
    return med;
}

std::vector<KernelWidth> candidate_widths(const Matrix &x, std::size_t count) {
    if (count == 0) {
        throw DataError("candidate grid needs at least one width");
    }
    const double med = median_pairwise_distance(x);
    if (!(med > 0.0)) {
        throw DataError("cannot build a width grid: median pairwise distance is zero");
    }
    const double lo = std::log(0.05 * med);
    const double hi = std::log(20.0 * med);
    std::vector<KernelWidth> out;
    out.reserve(count);
    if (count == 1) {
        out.emplace_back(std::exp(0.5 * (lo + hi)));
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        out.emplace_back(std::exp(lo + t * (hi - lo)));
    }
    return out;
}

}  // namespace sdcil
