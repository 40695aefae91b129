#include "sdcil/error.hpp"
#include "sdcil/geometry.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

using namespace sdcil;

namespace {

/// Straight re-implementation of the tangent-plane rule: full sort, index tie-break.
std::set<std::size_t> edge_oracle(const oracle::Mat &x, std::size_t k, double threshold) {
    std::set<std::size_t> edge;
    const std::size_t d = x[0].size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<std::pair<double, std::size_t>> nb;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j != i) {
                double s = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    s += (x[j][c] - x[i][c]) * (x[j][c] - x[i][c]);
                }
                nb.emplace_back(s, j);
            }
        }
        std::sort(nb.begin(), nb.end());
        oracle::Vec n(d, 0.0);
        for (std::size_t q = 0; q < k; ++q) {
            const double len = std::sqrt(nb[q].first);
            for (std::size_t c = 0; c < d; ++c) {
                n[c] += (x[nb[q].second][c] - x[i][c]) / len / static_cast<double>(k);
            }
        }
        double norm = 0.0;
        for (double v : n) {
            norm += v * v;
        }
        if (std::sqrt(norm) < 1e-12) {
            continue;
        }
        std::size_t side = 0;
        for (std::size_t q = 0; q < k; ++q) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                dot += (x[nb[q].second][c] - x[i][c]) * n[c];
            }
            side += dot >= 0.0 ? 1 : 0;
        }
        if (static_cast<double>(side) / static_cast<double>(k) >= threshold) {
            edge.insert(i);
        }
    }
    return edge;
}

Matrix circle(std::size_t n, double r = 1.0) {
    Matrix m;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        const double p[2] = {r * std::cos(t), r * std::sin(t)};
        m.append_row(p);
    }
    return m;
}

Matrix grid5() {
    Matrix m;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double p[2] = {double(i), double(j)};
            m.append_row(p);
        }
    }
    return m;
}

void check_partition_covers(const BoundaryPartition &p, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (auto i : p.edge_indices) {
        ++seen[i];
    }
    for (auto i : p.interior_indices) {
        ++seen[i];
    }
    for (auto s : seen) {
        CHECK(s == 1);
    }
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("default neighbour count") {
    CHECK(default_neighbor_count(4) == 3);
    CHECK(default_neighbor_count(10) == 5);
    CHECK(default_neighbor_count(36) == 6);
    CHECK(default_neighbor_count(37) == 7);
    CHECK(default_neighbor_count(500) == 23);
}

TEST_CASE("every point of a circle is an edge point") {
    const auto x = circle(12);
    const auto p = beps_partition(x, 4, 0.7);
    CHECK(p.edge_indices.size() == 12);
    CHECK(p.interior_indices.empty());
    check_partition_covers(p, 12);
}

TEST_CASE("5x5 grid: border is edge, centre is interior") {
    const auto x = grid5();
    const auto p = beps_partition(x, 4, 0.7);
    check_partition_covers(p, 25);
    const auto expected = edge_oracle(testing::to_rows(x), 4, 0.7);
    CHECK(std::set<std::size_t>(p.edge_indices.begin(), p.edge_indices.end()) == expected);
    CHECK(p.edge_indices.size() == 16);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const bool border = i == 0 || j == 0 || i == 4 || j == 4;
            const auto idx = static_cast<std::size_t>(5 * i + j);
            const bool is_edge = std::find(p.edge_indices.begin(), p.edge_indices.end(), idx) != p.edge_indices.end();
            CHECK(is_edge == border);
        }
    }
    CHECK(std::find(p.interior_indices.begin(), p.interior_indices.end(), 12) != p.interior_indices.end());
}

TEST_CASE("agrees with the reference rule on random data") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto pts = oracle::random_points(60, 2 + seed % 3, seed);
        const auto p = beps_partition(testing::to_matrix(pts), 7, 0.7);
        CHECK(std::set<std::size_t>(p.edge_indices.begin(), p.edge_indices.end()) == edge_oracle(pts, 7, 0.7));
    }
}

TEST_CASE("gaussian cloud: edge points lie farther out") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    Matrix x;
    for (int i = 0; i < 500; ++i) {
        const double p[2] = {g(rng), g(rng)};
        x.append_row(p);
    }
    const auto p = beps_partition(x, 10, 0.7);
    REQUIRE(!p.edge_indices.empty());
    REQUIRE(!p.interior_indices.empty());
    auto mean_radius = [&](const std::vector<std::size_t> &idx) {
        double s = 0.0;
        for (auto i : idx) {
            s += std::hypot(x(i, 0), x(i, 1));
        }
        return s / static_cast<double>(idx.size());
    };
    CHECK(mean_radius(p.edge_indices) > mean_radius(p.interior_indices));
}

TEST_CASE("partition is permutation covariant") {
    const auto x = testing::uniform_disk(80, 6);
    std::vector<std::size_t> perm(80);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
    const auto y = x.select_rows(perm);
    const auto px = beps_partition(x, 9, 0.7);
    const auto py = beps_partition(y, 9, 0.7);
    std::set<std::size_t> mapped;
    for (auto i : py.edge_indices) {
        mapped.insert(perm[i]);
    }
    CHECK(mapped == std::set<std::size_t>(px.edge_indices.begin(), px.edge_indices.end()));
    CHECK(beps_partition(x, 9, 0.7).edge_indices == px.edge_indices);
}

TEST_CASE("duplicate points do not break the rule") {
    auto x = circle(10);
    x.append_row(x.row(0));
    const auto p = beps_partition(x, 4, 0.7);
    check_partition_covers(p, 11);
}

TEST_CASE("partition errors") {
    const auto x = circle(5);
    CHECK_THROWS_AS((void)beps_partition(x, 5, 0.7), DataError);
    CHECK_THROWS_AS((void)beps_partition(x, 1, 0.7), DataError);
    CHECK_THROWS_AS((void)beps_partition(x, 3, 0.5), DataError);
}

TEST_CASE("mies score arithmetic") {
    // One support vector at the origin: the normalized distance at radius r is
    // (exp(-r^2 / 2 s^2) - rho) / (1 - rho).
    OcsvmModel m;
    const double origin[2] = {0.0, 0.0};
    m.support_vectors.append_row(origin);
    m.sv_alphas = {1.0};
    m.w_norm = 1.0;
    m.rho = 0.5;
    m.train_count = 1;
    m.nu = 1.0;
    const double s = 1.0;
    const double r_edge = std::sqrt(-2.0 * s * s * std::log(0.5));
    const double r_in = std::sqrt(-2.0 * s * s * std::log(0.7));
    const auto x = testing::to_matrix({{r_edge, 0.0}, {0.0, -r_edge}, {r_in, 0.0}, {0.0, r_in}});

    BoundaryPartition part;
    part.edge_indices = {0, 1};
    part.interior_indices = {2};
    CHECK(mies_score(m, part, x) == doctest::Approx(0.4).epsilon(1e-12));

    part.edge_indices = {0};
    part.interior_indices = {1};
    CHECK(mies_score(m, part, x) == doctest::Approx(0.0));

    part.interior_indices.clear();
    CHECK_THROWS_AS((void)mies_score(m, part, x), DataError);
}

TEST_CASE("disk sweep: every converged candidate has a finite score") {
    const auto x = testing::uniform_disk(150, 12);
    const auto part = beps_partition(x, default_neighbor_count(150));
    REQUIRE(!part.interior_indices.empty());
    const auto sel = select_width(x, 0.2, candidate_widths(x), part);
    REQUIRE(sel.per_candidate.size() == 30);
    for (const auto &rep : sel.per_candidate) {
        if (rep.converged) {
            CHECK(std::isfinite(rep.f0));
        }
        if (rep.admitted) {
            CHECK(rep.converged);
        }
    }
    const auto best = mies_choice(sel);
    REQUIRE(best.has_value());
    CHECK(sel.per_candidate[*best].converged);
}

TEST_CASE("modified selection on a disk") {
    const auto x = testing::uniform_disk(200, 31);
    const auto part = beps_partition(x, default_neighbor_count(200));
    const auto sel = select_width(x, 0.2, candidate_widths(x), part);
    CHECK_FALSE(sel.fallback);
    CHECK(sel.per_candidate[sel.chosen_index].admitted);
    CHECK(sel.chosen.value() == sel.per_candidate[sel.chosen_index].width);
    CHECK(sel.model.width == sel.chosen);
    CHECK(sv_fraction(sel.model) >= 0.2);
    CHECK(sv_fraction(sel.model) <= 0.3);
    for (const auto &rep : sel.per_candidate) {
        if (rep.admitted) {
            CHECK(rep.max_edge_distance >= sel.per_candidate[sel.chosen_index].max_edge_distance);
        }
    }
}

TEST_CASE("ring: support vectors of the chosen model sit on the edge") {
    const auto x = testing::uniform_annulus(300, 17, 2.0, 3.0);
    const auto part = beps_partition(x, default_neighbor_count(300));
    const auto sel = select_width(x, 0.2, candidate_widths(x), part);
    const std::set<std::size_t> edge(part.edge_indices.begin(), part.edge_indices.end());
    std::size_t on_edge = 0;
    for (auto i : sel.model.sv_indices) {
        on_edge += edge.count(i);
    }
    CHECK(static_cast<double>(on_edge) >= 0.8 * static_cast<double>(sel.model.sv_indices.size()));
}

TEST_CASE("blob hull vertices are inside or support vectors") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    Matrix x;
    for (int i = 0; i < 200; ++i) {
        const double p[2] = {g(rng), 0.5 * g(rng)};
        x.append_row(p);
    }
    const auto part = beps_partition(x, default_neighbor_count(200));
    const auto sel = select_width(x, 0.2, candidate_widths(x), part);
    const std::set<std::size_t> svs(sel.model.sv_indices.begin(), sel.model.sv_indices.end());
    // Hull vertices via the extreme points along many directions.
    std::set<std::size_t> hull;
    for (int t = 0; t < 720; ++t) {
        const double a = std::numbers::pi * t / 360.0;
        std::size_t best = 0;
        for (std::size_t i = 1; i < x.rows(); ++i) {
            if (x(i, 0) * std::cos(a) + x(i, 1) * std::sin(a) > x(best, 0) * std::cos(a) + x(best, 1) * std::sin(a)) {
                best = i;
            }
        }
        hull.insert(best);
    }
    std::size_t good = 0;
    for (auto h : hull) {
        good += (predict_one(sel.model, x.row(h)) == 1 || svs.count(h)) ? 1 : 0;
    }
    CHECK(static_cast<double>(good) >= 0.95 * static_cast<double>(hull.size()));
}

TEST_CASE("single admitted candidate is chosen") {
    const auto x = testing::uniform_disk(100, 13);
    const auto part = beps_partition(x, default_neighbor_count(100));
    const auto sel = select_width(x, 0.2, {KernelWidth(0.8)}, part);
    REQUIRE(sel.per_candidate.size() == 1);
    if (sel.per_candidate[0].admitted) {
        CHECK_FALSE(sel.fallback);
    } else {
        CHECK(sel.fallback);
    }
    CHECK(sel.chosen == KernelWidth(0.8));
}

TEST_CASE("nothing admitted falls back to the fraction nearest 1.25 nu") {
    const auto x = testing::uniform_disk(100, 14);
    const auto part = beps_partition(x, default_neighbor_count(100));
    // Tiny widths make every sample a support vector.
    const std::vector<KernelWidth> tiny{KernelWidth(1e-3), KernelWidth(2e-3)};
    const auto sel = select_width(x, 0.2, tiny, part);
    CHECK(sel.fallback);
    for (const auto &rep : sel.per_candidate) {
        CHECK_FALSE(rep.admitted);
    }
}

TEST_CASE("no converged candidate is an error") {
    const auto x = testing::uniform_disk(100, 15);
    const auto part = beps_partition(x, default_neighbor_count(100));
    SolverConfig cfg;
    cfg.max_iterations = 1;
    CHECK_THROWS_AS((void)select_width(x, 0.2, {KernelWidth(0.3), KernelWidth(0.5)}, part, cfg), TrainingError);
    CHECK_THROWS_AS((void)select_width(x, 0.2, {}, part), DataError);
}

}
