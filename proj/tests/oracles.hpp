// Test-only reference computations. Nothing here calls into the solver or model code
// it is used to check.
#ifndef SDCIL_TESTS_ORACLES_HPP
#define SDCIL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double rbf(const Vec &a, const Vec &b, double s) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d2 += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::exp(-d2 / (2.0 * s * s));
}

inline Mat rbf_matrix(const Mat &x, double s) {
    Mat k(x.size(), Vec(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            k[i][j] = rbf(x[i], x[j], s);
        }
    }
    return k;
}

inline Mat random_points(std::size_t n, std::size_t d, std::uint64_t seed, double spread = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, spread);
    Mat x(n, Vec(d));
    for (auto &r : x) {
        for (auto &v : r) {
            v = g(rng);
        }
    }
    return x;
}

// Euclidean projection onto { a : 0 <= a_i <= ub, sum_i w_i a_i = target } with w_i = +-1,
// via bisection on the multiplier of the linear constraint.
inline Vec project(const Vec &v, const std::vector<int> &w, double ub, double target) {
    auto at = [&](double t) {
        Vec a(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            a[i] = std::clamp(v[i] - t * w[i], 0.0, ub);
        }
        return a;
    };
    auto lhs = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += w[i] * std::clamp(v[i] - t * w[i], 0.0, ub);
        }
        return s;
    };
    double lo = -1.0;
    double hi = 1.0;
    while (lhs(lo) < target) {
        lo *= 2.0;
    }
    while (lhs(hi) > target) {
        hi *= 2.0;
    }
    // stop once the bracket can no longer shrink in floating point
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (lhs(mid) > target ? lo : hi) = mid;
    }
    return at(0.5 * (lo + hi));
}

struct QpResult {
    Vec alpha;
    double objective;
};

// Accelerated projected gradient (FISTA) for
//   min 1/2 a'Qa + p'a  s.t.  w'a = target, 0 <= a <= ub.
inline QpResult projected_gradient(const Mat &q, const Vec &p, const std::vector<int> &w, double ub, double target,
                                   int iterations = 100000) {
    const std::size_t n = q.size();
    double lip = 0.0;
    for (const auto &row : q) {
        double s = 0.0;
        for (double v : row) {
            s += std::abs(v);
        }
        lip = std::max(lip, s);
    }
    const double step = 1.0 / lip;
    Vec x = project(Vec(n, target / static_cast<double>(n)), w, ub, target);
    Vec y = x;
    double t = 1.0;
    Vec grad(n);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double g = p[i];
            for (std::size_t j = 0; j < n; ++j) {
                g += q[i][j] * y[j];
            }
            grad[i] = y[i] - step * g;
        }
        Vec xn = project(grad, w, ub, target);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = xn[i] + ((t - 1.0) / tn) * (xn[i] - x[i]);
        }
        x = std::move(xn);
        t = tn;
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double qi = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            qi += q[i][j] * x[j];
        }
        obj += 0.5 * x[i] * qi + p[i] * x[i];
    }
    return {x, obj};
}

// One-class dual: min 1/2 a'Ka, sum a = 1, 0 <= a <= 1/(nu l).
inline QpResult ocsvm_dual(const Mat &k, double nu, int iterations = 100000) {
    const std::size_t n = k.size();
    return projected_gradient(k, Vec(n, 0.0), std::vector<int>(n, 1), 1.0 / (nu * static_cast<double>(n)), 1.0,
                              iterations);
}

// C-SVC dual: min 1/2 a'Qa - sum a, y'a = 0, 0 <= a <= C.
inline QpResult binary_dual(const Mat &k, const std::vector<int> &y, double cost, int iterations = 100000) {
    const std::size_t n = k.size();
    Mat q(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q[i][j] = y[i] * y[j] * k[i][j];
        }
    }
    return projected_gradient(q, Vec(n, -1.0), y, cost, 0.0, iterations);
}

}  // namespace oracle

#endif  // SDCIL_TESTS_ORACLES_HPP
