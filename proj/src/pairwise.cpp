#include "sdcil/pairwise.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace sdcil {

std::vector<double> CvConfig::default_cost_grid() {
    std::vector<double> grid;
    for (int e = -3; e <= 7; ++e) {
        grid.push_back(std::ldexp(1.0, e));
    }
    return grid;
}

std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t folds, std::uint64_t seed,
                                          std::size_t &fold_count) {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < y.size(); ++i) {
        (y[i] > 0 ? pos : neg).push_back(i);
    }
    const std::size_t smaller = std::min(pos.size(), neg.size());
    std::size_t f = std::min(folds, smaller);
    std::vector<std::size_t> assignment(y.size());
    if (f < 2 || smaller < 2 * f) {
        fold_count = y.size();
        std::iota(assignment.begin(), assignment.end(), std::size_t{0});
        return assignment;
    }
    fold_count = f;
    std::mt19937_64 rng(seed);
    for (auto *group : {&pos, &neg}) {
        std::shuffle(group->begin(), group->end(), rng);
        for (std::size_t r = 0; r < group->size(); ++r) {
            assignment[(*group)[r]] = r % f;
        }
    }
    return assignment;
}

namespace {

struct Fit {
    std::vector<double> coeffs;  // a_i y_i over the training rows
    double bias = 0.0;
    bool converged = false;
};

Fit fit_binary(const GramMatrix &k, std::span<const int> y, double cost, const SolverConfig &cfg) {
    const auto sol = solve_binary_dual(k, y, cost, cfg);
    Fit fit;
    fit.coeffs.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        fit.coeffs[i] = sol.alphas[i] * y[i];
    }
    fit.bias = sol.offset;
    fit.converged = sol.converged;
    return fit;
}

}  // namespace

PairwiseClassifier train_pair(const Matrix &rows_a, Label label_a, const Matrix &rows_b, Label label_b,
                              const CvConfig &cv, const SolverConfig &cfg) {
    if (label_a == label_b) {
        throw DataError("a pairwise classifier needs two distinct labels");
    }
    if (label_a > label_b) {
        return train_pair(rows_b, label_b, rows_a, label_a, cv, cfg);
    }
    if (rows_a.rows() < 2 || rows_b.rows() < 2) {
        throw DataError("each side of a pairwise classifier needs at least two vectors");
    }
    if (rows_a.cols() != rows_b.cols()) {
        throw DataError("pairwise classes differ in dimension");
    }
    if (cv.folds < 2 || cv.cost_grid.empty()) {
        throw DataError("cross-validation needs at least two folds and a non-empty cost grid");
    }

    Matrix pooled = rows_a;
    for (std::size_t i = 0; i < rows_b.rows(); ++i) {
        pooled.append_row(rows_b.row(i));
    }
    const std::size_t n = pooled.rows();
    std::vector<int> y(n, -1);
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(rows_a.rows()), 1);

    auto widths = cv.width_grid.empty() ? candidate_widths(pooled, cv.width_count) : cv.width_grid;
    std::sort(widths.begin(), widths.end());
    auto costs = cv.cost_grid;
    std::sort(costs.begin(), costs.end());

    std::size_t fold_count = 0;
    const auto fold_of = stratified_folds(y, cv.folds, cv.seed, fold_count);
    std::vector<std::vector<std::size_t>> train_idx(fold_count);
    std::vector<std::vector<std::size_t>> test_idx(fold_count);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < fold_count; ++f) {
            (fold_of[i] == f ? test_idx[f] : train_idx[f]).push_back(i);
        }
    }

    const Matrix sq = squared_distances(pooled);
    // correct[c][w]; std::nullopt when some fold failed to converge.
    std::vector<std::vector<std::optional<std::size_t>>> correct(costs.size(),
                                                                 std::vector<std::optional<std::size_t>>(widths.size()));
    for (std::size_t w = 0; w < widths.size(); ++w) {
        const GramMatrix k = gram_from_squared(sq, widths[w]);
        std::vector<GramMatrix> fold_k;
        std::vector<std::vector<int>> fold_y(fold_count);
        fold_k.reserve(fold_count);
        for (std::size_t f = 0; f < fold_count; ++f) {
            fold_k.push_back(k.submatrix(train_idx[f]));
            for (auto i : train_idx[f]) {
                fold_y[f].push_back(y[i]);
            }
        }
        for (std::size_t c = 0; c < costs.size(); ++c) {
            std::size_t hits = 0;
            bool ok = true;
            for (std::size_t f = 0; f < fold_count && ok; ++f) {
                const auto fit = fit_binary(fold_k[f], fold_y[f], costs[c], cfg);
                if (!fit.converged) {
                    ok = false;
                    break;
                }
                for (auto t : test_idx[f]) {
                    const auto kt = k.row(t);
                    double dec = fit.bias;
                    for (std::size_t r = 0; r < train_idx[f].size(); ++r) {
                        dec += fit.coeffs[r] * kt[train_idx[f][r]];
                    }
                    if ((dec > 0.0 ? 1 : -1) == y[t]) {
                        ++hits;
                    }
                }
            }
            if (ok) {
                correct[c][w] = hits;
            }
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t c = 0; c < costs.size(); ++c) {
        for (std::size_t w = 0; w < widths.size(); ++w) {
            if (correct[c][w] && (!best || *correct[c][w] > *correct[best->first][best->second])) {
                best = std::pair{c, w};
            }
        }
    }
    if (!best) {
        throw TrainingError("no (C, s) grid point converged for pair (" + std::to_string(label_a) + ", " +
                            std::to_string(label_b) + ")");
    }

    const auto [bc, bw] = *best;
    const GramMatrix k = gram_from_squared(sq, widths[bw]);
    const auto fit = fit_binary(k, y, costs[bc], cfg);

    PairwiseClassifier clf;
    clf.label_a = label_a;
    clf.label_b = label_b;
    clf.width = widths[bw];
    clf.cost = costs[bc];
    clf.bias = fit.bias;
    clf.cv_accuracy = static_cast<double>(*correct[bc][bw]) / static_cast<double>(n);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (fit.coeffs[i] != 0.0) {
            keep.push_back(i);
            clf.coeffs.push_back(fit.coeffs[i]);
        }
    }
    clf.vectors = pooled.select_rows(keep);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((pair_decision(clf, pooled.row(i)) > 0.0 ? 1 : -1) == y[i]) {
            ++hits;
        }
    }
    clf.train_accuracy = static_cast<double>(hits) / static_cast<double>(n);
    return clf;
}

double pair_decision(const PairwiseClassifier &clf, std::span<const double> x) {
    if (x.size() != clf.vectors.cols()) {
        throw DataError("sample dimension does not match pairwise classifier");
    }
    const double g = clf.width.gamma();
    double acc = clf.bias;
    for (std::size_t i = 0; i < clf.coeffs.size(); ++i) {
        acc += clf.coeffs[i] * std::exp(-squared_distance(clf.vectors.row(i), x) * g);
    }
    return acc;
}

Label predict_pair(const PairwiseClassifier &clf, std::span<const double> x) {
    return pair_decision(clf, x) > 0.0 ? clf.label_a : clf.label_b;
}

}  // namespace sdcil
