#include "sdcil/dataset.hpp"
#include "sdcil/error.hpp"
#include "sdcil/kernels.hpp"
#include "test_support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace sdcil;

TEST_SUITE("kernels") {

TEST_CASE("gaussian values") {
    const std::vector<double> o{0.0, 0.0};
    const std::vector<double> p{3.0, 4.0};
    CHECK(gaussian(o, o, KernelWidth(0.3)) == 1.0);
    CHECK(gaussian(o, p, KernelWidth(5.0)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(gaussian(o, p, KernelWidth(5.0)) == doctest::Approx(0.606531).epsilon(1e-6));
    const std::vector<double> a{0.0};
    const std::vector<double> b{1.0};
    CHECK(gaussian(a, b, KernelWidth(1e-3)) < 1e-300);
}

TEST_CASE("gaussian symmetric and increasing in width") {
    const auto pts = oracle::random_points(20, 3, 7);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto &x = pts[i];
        const auto &y = pts[i + 1];
        CHECK(gaussian(x, y, KernelWidth(0.7)) == gaussian(y, x, KernelWidth(0.7)));
        double prev = 0.0;
        for (double s : {0.1, 0.3, 1.0, 3.0, 10.0}) {
            const double v = gaussian(x, y, KernelWidth(s));
            CHECK(v > prev);
            CHECK(v < 1.0);
            prev = v;
        }
    }
}

TEST_CASE("gaussian errors") {
    const std::vector<double> a{0.0};
    const std::vector<double> b{1.0, 2.0};
    CHECK_THROWS_AS((void)gaussian(a, b, KernelWidth(1.0)), DataError);
    CHECK_THROWS_AS((void)KernelWidth(0.0), DataError);
    CHECK_THROWS_AS((void)KernelWidth(-1.0), DataError);
    CHECK_THROWS_AS((void)KernelWidth(INFINITY), DataError);
}

TEST_CASE("gram small cases") {
    const auto one = gram(Matrix(1, 2, {1.0, 2.0}), KernelWidth(1.0));
    CHECK(one.size() == 1);
    CHECK(one(0, 0) == 1.0);
    const auto same = gram(Matrix(2, 2, {1.0, 2.0, 1.0, 2.0}), KernelWidth(1.0));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(same(i, j) == 1.0);
        }
    }
    CHECK_THROWS_AS((void)gram(Matrix(0, 2), KernelWidth(1.0)), DataError);
}

TEST_CASE("gram matches direct recomputation, is symmetric with unit diagonal and PSD") {
    const auto rows = oracle::random_points(50, 3, 21);
    const auto x = testing::to_matrix(rows);
    for (double s : {0.2, 1.0, 4.0}) {
        const auto k = gram(x, KernelWidth(s));
        const auto ref = oracle::rbf_matrix(rows, s);
        Eigen::MatrixXd e(50, 50);
        for (std::size_t i = 0; i < 50; ++i) {
            CHECK(std::abs(k(i, i) - 1.0) <= 1e-12);
            for (std::size_t j = 0; j < 50; ++j) {
                CHECK(std::abs(k(i, j) - ref[i][j]) <= 1e-14);
                CHECK(std::abs(k(i, j) - k(j, i)) <= 1e-12);
                e(static_cast<long>(i), static_cast<long>(j)) = k(i, j);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(e, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("gram PSD spot check on random instances up to n = 200") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const std::size_t n = 40 + 40 * seed;
        const auto x = testing::to_matrix(oracle::random_points(n, 2 + seed, 100 + seed));
        const auto k = gram(x, KernelWidth(0.5 + seed));
        Eigen::MatrixXd e(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                e(static_cast<long>(i), static_cast<long>(j)) = k(i, j);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(e, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("submatrix picks principal entries") {
    const auto x = testing::to_matrix(oracle::random_points(6, 2, 3));
    const auto k = gram(x, KernelWidth(1.0));
    const std::vector<std::size_t> idx{4, 1, 5};
    const auto sub = k.submatrix(idx);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            CHECK(sub(a, b) == k(idx[a], idx[b]));
        }
    }
}

TEST_CASE("candidate widths") {
    SUBCASE("single width is the median distance") {
        const auto x = testing::to_matrix(oracle::random_points(30, 2, 4));
        const auto w = candidate_widths(x, 1);
        REQUIRE(w.size() == 1);
        CHECK(w[0].value() == doctest::Approx(median_pairwise_distance(x)).epsilon(1e-12));
    }
    SUBCASE("30 widths on standardized iris bracket the brute-force median") {
        const auto iris = fit_standardize(load_csv(SDCIL_DATA_DIR "/iris.csv")).data.features();
        std::vector<double> d;
        for (std::size_t i = 0; i < iris.rows(); ++i) {
            for (std::size_t j = i + 1; j < iris.rows(); ++j) {
                d.push_back(std::sqrt(squared_distance(iris.row(i), iris.row(j))));
            }
        }
        std::sort(d.begin(), d.end());
        const double med = d.size() % 2 ? d[d.size() / 2] : 0.5 * (d[d.size() / 2 - 1] + d[d.size() / 2]);
        const auto w = candidate_widths(iris, 30);
        REQUIRE(w.size() == 30);
        CHECK(w.front().value() == doctest::Approx(0.05 * med).epsilon(1e-12));
        CHECK(w.back().value() == doctest::Approx(20.0 * med).epsilon(1e-12));
        for (std::size_t i = 1; i < w.size(); ++i) {
            CHECK(w[i].value() > w[i - 1].value());
            CHECK(w[i].value() / w[i - 1].value() == doctest::Approx(std::pow(400.0, 1.0 / 29.0)));
        }
    }
    SUBCASE("identical rows are rejected") {
        CHECK_THROWS_AS((void)candidate_widths(Matrix(2, 2, {1.0, 1.0, 1.0, 1.0}), 5), DataError);
        CHECK_THROWS_AS((void)candidate_widths(Matrix(1, 2, {1.0, 1.0}), 5), DataError);
    }
}

}
