#ifndef SDCIL_TESTS_SUPPORT_HPP
#define SDCIL_TESTS_SUPPORT_HPP

#include "sdcil/matrix.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testing {

inline sdcil::Matrix to_matrix(const oracle::Mat &rows) {
    sdcil::Matrix m;
    for (const auto &r : rows) {
        m.append_row(r);
    }
    return m;
}

inline oracle::Mat to_rows(const sdcil::Matrix &m) {
    oracle::Mat out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.emplace_back(m.row(i).begin(), m.row(i).end());
    }
    return out;
}

/// n points uniform over the disk of the given radius.
inline sdcil::Matrix uniform_disk(std::size_t n, std::uint64_t seed, double radius = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    sdcil::Matrix m;
    while (m.rows() < n) {
        const double p[2] = {u(rng), u(rng)};
        if (p[0] * p[0] + p[1] * p[1] <= radius * radius) {
            m.append_row(p);
        }
    }
    return m;
}

/// n points uniform over the annulus r0 <= |p| <= r1.
inline sdcil::Matrix uniform_annulus(std::size_t n, std::uint64_t seed, double r0, double r1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-r1, r1);
    sdcil::Matrix m;
    while (m.rows() < n) {
        const double p[2] = {u(rng), u(rng)};
        const double r2 = p[0] * p[0] + p[1] * p[1];
        if (r2 <= r1 * r1 && r2 >= r0 * r0) {
            m.append_row(p);
        }
    }
    return m;
}

inline std::filesystem::path temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "sdcil_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

inline void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing

#endif  // SDCIL_TESTS_SUPPORT_HPP
