#pragma once

// Shared helpers for the test binaries. The rank routine here is written
// independently of the library (Bareiss fraction-free elimination over
// integers, eliminating downward only) so it can serve as an oracle.

#include "masseylab/linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using masseylab::Integer;
using masseylab::Matrix;
using masseylab::Rational;
using masseylab::Vec;

inline std::size_t oracle_rank(std::vector<std::vector<Integer>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = rows; i-- > r;)
            if (a[i][c] != 0) sel = i;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        for (std::size_t j = r + 1; j < rows; ++j) {
            for (std::size_t cc = c + 1; cc < cols; ++cc)
                a[j][cc] = (a[r][c] * a[j][cc] - a[j][c] * a[r][cc]) / prev;
            a[j][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

inline std::vector<Integer> clear_denominators(const Vec& v) {
    Integer lcm = 1;
    for (const auto& x : v) {
        const Integer den = boost::multiprecision::denominator(x);
        lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(boost::multiprecision::numerator(x) *
                      (lcm / boost::multiprecision::denominator(x)));
    return out;
}

inline std::size_t oracle_rank(const std::vector<Vec>& rows) {
    std::vector<std::vector<Integer>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) a.push_back(clear_denominators(r));
    return oracle_rank(std::move(a));
}

inline std::size_t oracle_rank(const Matrix& m) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return oracle_rank(rows);
}

inline Rational random_small_rational(std::mt19937& gen, int num_range = 4, int max_den = 3) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(gen), den(gen));
}

inline Matrix random_matrix(std::mt19937& gen, std::size_t rows, std::size_t cols,
                            int num_range = 4, int max_den = 3) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = random_small_rational(gen, num_range, max_den);
    return m;
}

inline Vec random_vec(std::mt19937& gen, std::size_t n, int num_range = 4, int max_den = 3) {
    Vec v(n);
    for (auto& x : v) x = random_small_rational(gen, num_range, max_den);
    return v;
}

} // namespace testsupport
