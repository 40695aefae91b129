#ifndef SDCIL_SMO_HPP
#define SDCIL_SMO_HPP

#include "sdcil/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sdcil {

struct SolverConfig {
    double kkt_tolerance = 1e-3;
    /// Iteration cap; 0 means max(10 * n, 10000).
    std::size_t max_iterations = 0;
    /// Orders the points that receive the initial mass in the one-class start.
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t iteration_cap(std::size_t n) const noexcept {
        return max_iterations != 0 ? max_iterations : std::max<std::size_t>(10 * n, 10000);
    }
};

struct DualSolution {
    std::vector<double> alphas;
    /// rho for the one-class dual (decision = sum a_i k_i - rho); bias b for the
    /// binary dual (decision = sum a_i y_i k_i + b).
    double offset = 0.0;
    /// Value of the minimized objective: 1/2 a'Ka for one-class, 1/2 a'Qa - sum a for binary.
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Largest KKT violation m(a) - M(a) at exit.
    double kkt_gap = 0.0;
};

/// Tolerance separating "free" multipliers from ones at a bound.
inline constexpr double bound_margin = 1e-8;

/// min 1/2 a'Ka s.t. 0 <= a_i <= 1/(nu l), sum a = 1.
/// Throws DataError when nu is outside (0, 1] or nu * l < 1.
DualSolution solve_ocsvm_dual(const GramMatrix &k, double nu, const SolverConfig &cfg = {});

/// Soft-margin C-SVC dual: min 1/2 a'Qa - sum a, Q_ij = y_i y_j K_ij, 0 <= a_i <= C, y'a = 0.
/// Labels must be +1/-1 with both present.
DualSolution solve_binary_dual(const GramMatrix &k, std::span<const int> y, double cost, const SolverConfig &cfg = {});

}  // namespace sdcil

#endif  // SDCIL_SMO_HPP
