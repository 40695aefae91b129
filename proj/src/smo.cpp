#include "sdcil/smo.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace sdcil {

namespace {

constexpr double tau = 1e-12;

// Shared pairwise solver for
//   min 1/2 a'Qa + p'a   s.t.  y'a = const, 0 <= a_i <= upper,   Q_ij = y_i y_j K_ij.
// Each step updates the maximal KKT-violating pair.
class PairSolver {
  public:
    PairSolver(const GramMatrix &k, std::span<const int> y, std::vector<double> p, double upper,
               std::vector<double> alpha)
        : k_(k), y_(y.begin(), y.end()), p_(std::move(p)), upper_(upper), alpha_(std::move(alpha)),
          grad_(p_) {
        const std::size_t n = alpha_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha_[i] == 0.0) {
                continue;
            }
            const auto ki = k_.row(i);
            const double ai = alpha_[i] * y_[i];
            for (std::size_t t = 0; t < n; ++t) {
                grad_[t] += y_[t] * ai * ki[t];
            }
        }
    }

    DualSolution run(std::size_t max_iter, double eps) {
        DualSolution out;
        std::size_t iter = 0;
        double gap = 0.0;
        while (true) {
            const auto [i, j, g] = select_pair();
            gap = g;
            if (gap <= eps || i < 0) {
                out.converged = true;
                break;
            }
            if (iter >= max_iter) {
                break;
            }
            update(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            ++iter;
        }
        out.iterations = iter;
        out.kkt_gap = std::max(gap, 0.0);
        out.offset = offset();
        double obj = 0.0;
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            obj += alpha_[t] * (grad_[t] + p_[t]);
        }
        out.objective = 0.5 * obj;
        out.alphas = std::move(alpha_);
        return out;
    }

  private:
    bool in_up(std::size_t t) const { return y_[t] > 0 ? alpha_[t] < upper_ : alpha_[t] > 0.0; }
    bool in_low(std::size_t t) const { return y_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < upper_; }

    struct Pair {
        long i;
        long j;
        double gap;
    };

    Pair select_pair() const {
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        long i = -1;
        long j = -1;
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            const double v = -y_[t] * grad_[t];
            if (in_up(t) && v > gmax) {
                gmax = v;
                i = static_cast<long>(t);
            }
            if (in_low(t) && v < gmin) {
                gmin = v;
                j = static_cast<long>(t);
            }
        }
        if (i < 0 || j < 0) {
            return {-1, -1, 0.0};
        }
        return {i, j, gmax - gmin};
    }

    // Two-variable subproblem with clipping to the box.
    void update(std::size_t i, std::size_t j) {
        const double kii = k_(i, i);
        const double kjj = k_(j, j);
        const double kij = k_(i, j);
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        const double c = upper_;
        double &ai = alpha_[i];
        double &aj = alpha_[j];

        if (y_[i] != y_[j]) {
            double quad = kii + kjj + 2.0 * kij * y_[i] * y_[j];
            if (quad <= 0.0) {
                quad = tau;
            }
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            double quad = kii + kjj - 2.0 * kij;
            if (quad <= 0.0) {
                quad = tau;
            }
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }

        const double di = (ai - old_i) * y_[i];
        const double dj = (aj - old_j) * y_[j];
        const auto ki = k_.row(i);
        const auto kj = k_.row(j);
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            grad_[t] += y_[t] * (ki[t] * di + kj[t] * dj);
        }
    }

    // r with y_i G_i = r on free multipliers; one-class rho = r, binary bias = -r.
    double offset() const {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double sum_free = 0.0;
        std::size_t n_free = 0;
        for (std::size_t t = 0; t < alpha_.size(); ++t) {
            const double yg = y_[t] * grad_[t];
            const bool at_upper = alpha_[t] >= upper_ - bound_margin;
            const bool at_lower = alpha_[t] <= bound_margin;
            if (at_upper && !at_lower) {
                if (y_[t] > 0) {
                    lb = std::max(lb, yg);
                } else {
                    ub = std::min(ub, yg);
                }
            } else if (at_lower && !at_upper) {
                if (y_[t] > 0) {
                    ub = std::min(ub, yg);
                } else {
                    lb = std::max(lb, yg);
                }
            } else if (!at_upper && !at_lower) {
                ++n_free;
                sum_free += yg;
            } else {
                // Box narrower than the margin: the point pins r from both sides.
                ub = std::min(ub, yg);
                lb = std::max(lb, yg);
            }
        }
        if (n_free > 0) {
            return sum_free / static_cast<double>(n_free);
        }
        if (!std::isfinite(ub)) {
            return lb;
        }
        if (!std::isfinite(lb)) {
            return ub;
        }
        return 0.5 * (ub + lb);
    }

    const GramMatrix &k_;
    std::vector<int> y_;
    std::vector<double> p_;
    double upper_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
};

}  // namespace

DualSolution solve_ocsvm_dual(const GramMatrix &k, double nu, const SolverConfig &cfg) {
    const std::size_t l = k.size();
    if (l == 0) {
        throw DataError("one-class dual needs at least one sample");
    }
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw DataError("nu must lie in (0, 1], got " + std::to_string(nu));
    }
    const double nl = nu * static_cast<double>(l);
    if (nl < 1.0 - 1e-12) {
        throw DataError("nu * l = " + std::to_string(nl) + " < 1: the one-class constraints are infeasible");
    }
    const double upper = 1.0 / nl;

    // Feasible start: fill points in seeded order at the upper bound until the mass is 1.
    std::vector<std::size_t> order(l);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> alpha(l, 0.0);
    double remaining = 1.0;
    for (std::size_t t = 0; t < l && remaining > 0.0; ++t) {
        const double a = std::min(upper, remaining);
        alpha[order[t]] = a;
        remaining -= a;
    }

    std::vector<int> y(l, 1);
    PairSolver solver(k, y, std::vector<double>(l, 0.0), upper, std::move(alpha));
    return solver.run(cfg.iteration_cap(l), cfg.kkt_tolerance);
}

DualSolution solve_binary_dual(const GramMatrix &k, std::span<const int> y, double cost, const SolverConfig &cfg) {
    const std::size_t n = k.size();
    if (y.size() != n) {
        throw DataError("label count does not match kernel matrix");
    }
    if (!(cost > 0.0) || !std::isfinite(cost)) {
        throw DataError("cost must be positive");
    }
    bool pos = false;
    bool neg = false;
    for (int v : y) {
        if (v == 1) {
            pos = true;
        } else if (v == -1) {
            neg = true;
        } else {
            throw DataError("binary labels must be +1 or -1");
        }
    }
    if (!pos || !neg) {
        throw DataError("binary dual needs both label values");
    }
    PairSolver solver(k, y, std::vector<double>(n, -1.0), cost, std::vector<double>(n, 0.0));
    auto sol = solver.run(cfg.iteration_cap(n), cfg.kkt_tolerance);
    sol.offset = -sol.offset;
    return sol;
}

}  // namespace sdcil
