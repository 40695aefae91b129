#include "sdcil/geometry.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sdcil {

std::size_t default_neighbor_count(std::size_t n) {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const std::size_t k = std::max<std::size_t>(5, root);
    return n == 0 ? 0 : std::min(k, n - 1);
}

BoundaryPartition beps_partition(const Matrix &x, std::size_t k_neighbors, double side_threshold) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (k_neighbors < 2) {
        throw DataError("boundary detection needs at least two neighbours");
    }
    if (n < k_neighbors + 1) {
        throw DataError("boundary detection needs more samples than neighbours");
    }
    if (!(side_threshold > 0.5 && side_threshold <= 1.0)) {
        throw DataError("side threshold must lie in (0.5, 1]");
    }

    BoundaryPartition part;
    part.k_neighbors = k_neighbors;
    part.side_threshold = side_threshold;

    std::vector<std::pair<double, std::size_t>> dist(n - 1);
    std::vector<double> normal(d);
    std::vector<double> diff(d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = x.row(i);
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                dist[m++] = {squared_distance(xi, x.row(j)), j};
            }
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_neighbors), dist.end());

        std::fill(normal.begin(), normal.end(), 0.0);
        for (std::size_t q = 0; q < k_neighbors; ++q) {
            const double len = std::sqrt(dist[q].first);
            if (len == 0.0) {
                continue;
            }
            const auto xj = x.row(dist[q].second);
            for (std::size_t c = 0; c < d; ++c) {
                normal[c] += (xj[c] - xi[c]) / len;
            }
        }
        double norm = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            normal[c] /= static_cast<double>(k_neighbors);
            norm += normal[c] * normal[c];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            part.interior_indices.push_back(i);
            continue;
        }

        std::size_t same_side = 0;
        for (std::size_t q = 0; q < k_neighbors; ++q) {
            const auto xj = x.row(dist[q].second);
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                dot += (xj[c] - xi[c]) * normal[c];
            }
            if (dot >= 0.0) {
                ++same_side;
            }
        }
        const double frac = static_cast<double>(same_side) / static_cast<double>(k_neighbors);
        (frac >= side_threshold ? part.edge_indices : part.interior_indices).push_back(i);
    }
    return part;
}

double mies_score(const OcsvmModel &model, const BoundaryPartition &part, const Matrix &x) {
    if (part.edge_indices.empty() || part.interior_indices.empty()) {
        throw DataError("MIES score needs non-empty edge and interior sets");
    }
    auto max_over = [&](const std::vector<std::size_t> &idx) {
        double best = -std::numeric_limits<double>::infinity();
        for (auto i : idx) {
            best = std::max(best, normalized_distance(model, x.row(i)));
        }
        return best;
    };
    return max_over(part.interior_indices) - max_over(part.edge_indices);
}

WidthSelection select_width(const Matrix &x, double nu, std::vector<KernelWidth> candidates,
                            const BoundaryPartition &part, const SolverConfig &cfg, Label label) {
    if (candidates.empty()) {
        throw DataError("width selection needs at least one candidate");
    }
    if (part.edge_indices.empty()) {
        throw DataError("width selection needs a non-empty edge set");
    }
    std::sort(candidates.begin(), candidates.end());

    const std::size_t n = x.rows();
    const Matrix sq = squared_distances(x);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    constexpr double slack = 1e-12;

    WidthSelection out;
    std::optional<OcsvmModel> best_model;
    std::optional<std::size_t> best;
    std::optional<std::size_t> nearest;  // fallback: |fraction - 1.25 nu| smallest
    std::vector<OcsvmModel> converged_models(candidates.size());
    std::vector<double> dn(n);

    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const GramMatrix k = gram_from_squared(sq, candidates[c]);
        OcsvmModel model = build_ocsvm(x, k, nu, cfg, label);
        const double scale = cap_height(model);

        for (std::size_t i = 0; i < n; ++i) {
            const auto ki = k.row(i);
            double acc = 0.0;
            for (std::size_t s = 0; s < model.sv_indices.size(); ++s) {
                acc += model.sv_alphas[s] * ki[model.sv_indices[s]];
            }
            dn[i] = (acc - model.rho) / scale;
        }
        CandidateReport rep;
        rep.width = candidates[c].value();
        rep.sv_fraction = sv_fraction(model);
        rep.converged = model.converged;
        rep.max_edge_distance = -std::numeric_limits<double>::infinity();
        for (auto i : part.edge_indices) {
            rep.max_edge_distance = std::max(rep.max_edge_distance, dn[i]);
        }
        rep.max_interior_distance = nan;
        rep.f0 = nan;
        if (!part.interior_indices.empty()) {
            rep.max_interior_distance = -std::numeric_limits<double>::infinity();
            for (auto i : part.interior_indices) {
                rep.max_interior_distance = std::max(rep.max_interior_distance, dn[i]);
            }
            rep.f0 = rep.max_interior_distance - rep.max_edge_distance;
        }
        rep.admitted = rep.converged && rep.sv_fraction >= nu - slack && rep.sv_fraction <= 1.5 * nu + slack;
        out.per_candidate.push_back(rep);

        if (rep.admitted && (!best || rep.max_edge_distance < out.per_candidate[*best].max_edge_distance)) {
            best = c;
            best_model = model;
        }
        if (rep.converged) {
            if (!nearest || std::abs(rep.sv_fraction - 1.25 * nu) <
                                std::abs(out.per_candidate[*nearest].sv_fraction - 1.25 * nu)) {
                nearest = c;
            }
            converged_models[c] = std::move(model);
        }
    }

    if (best) {
        out.chosen_index = *best;
        out.model = std::move(*best_model);
    } else if (nearest) {
        out.chosen_index = *nearest;
        out.fallback = true;
        out.model = std::move(converged_models[*nearest]);
    } else {
        throw TrainingError("no candidate width produced a converged one-class model");
    }
    out.chosen = candidates[out.chosen_index];
    return out;
}

std::optional<std::size_t> mies_choice(const WidthSelection &selection) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < selection.per_candidate.size(); ++c) {
        const auto &rep = selection.per_candidate[c];
        if (!rep.converged || !std::isfinite(rep.f0)) {
            continue;
        }
        if (!best || rep.f0 > selection.per_candidate[*best].f0) {
            best = c;
        }
    }
    return best;
}

}  // namespace sdcil
