#ifndef SDCIL_GEOMETRY_HPP
#define SDCIL_GEOMETRY_HPP

#include "sdcil/kernels.hpp"
#include "sdcil/ocsvm.hpp"
#include "sdcil/smo.hpp"

#include <optional>
#include <vector>

namespace sdcil {

/// Edge/interior split of one class's samples by the tangent-plane rule.
struct BoundaryPartition {
    std::vector<std::size_t> edge_indices;
    std::vector<std::size_t> interior_indices;
    std::size_t k_neighbors = 0;
    double side_threshold = 0.7;
};

/// max(5, ceil(sqrt(n))), capped at n - 1.
std::size_t default_neighbor_count(std::size_t n);

/// A point is an edge point when at least `side_threshold` of its k nearest
/// neighbours lie on the non-negative side of the plane through it whose normal
/// is the mean unit direction towards those neighbours. A vanishing normal
/// (perfectly surrounded point) marks it interior. Distance ties go to the lower index.
BoundaryPartition beps_partition(const Matrix &x, std::size_t k_neighbors, double side_threshold = 0.7);

/// max over interior of the normalized distance minus max over edge points.
/// Diagnostic only; `select_width` does not use it.
double mies_score(const OcsvmModel &model, const BoundaryPartition &part, const Matrix &x);

struct CandidateReport {
    double width = 0.0;
    double sv_fraction = 0.0;
    double max_edge_distance = 0.0;
    /// NaN when the interior set is empty.
    double max_interior_distance = 0.0;
    /// NaN when the interior set is empty.
    double f0 = 0.0;
    bool converged = false;
    bool admitted = false;
};

struct WidthSelection {
    KernelWidth chosen{1.0};
    std::size_t chosen_index = 0;
    /// True when no candidate passed the support-vector fraction filter.
    bool fallback = false;
    std::vector<CandidateReport> per_candidate;
    /// Model trained at the chosen width.
    OcsvmModel model;
};

/// Trains one model per candidate width. Candidates whose solve converged and whose
/// support-vector fraction lies in [nu, 1.5 nu] are admitted; the admitted one with the
/// smallest maximum edge-point normalized distance wins (ties to the smaller width).
/// With nothing admitted, the converged candidate whose fraction is closest to 1.25 nu is
/// taken and `fallback` is set. Throws TrainingError if no candidate converged.
WidthSelection select_width(const Matrix &x, double nu, std::vector<KernelWidth> candidates,
                            const BoundaryPartition &part, const SolverConfig &cfg = {}, Label label = 0);

/// Index of the candidate maximizing f0 among converged ones, if any has a finite score.
std::optional<std::size_t> mies_choice(const WidthSelection &selection);

}  // namespace sdcil

#endif  // SDCIL_GEOMETRY_HPP
