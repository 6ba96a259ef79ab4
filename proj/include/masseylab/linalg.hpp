#pragma once

#include "masseylab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace masseylab {

using Vec = std::vector<Rational>;

bool is_zero_vec(const Vec& v);
Vec scaled(const Vec& v, const Rational& c);
void add_scaled(Vec& target, const Vec& src, const Rational& c); // target += c * src

// Dense matrix of exact rationals, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec apply(const Vec& v) const; // matrix * column vector
    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;

    void swap_rows(std::size_t i, std::size_t j);
    void scale_row(std::size_t i, const Rational& c);
    void add_scaled_row(std::size_t target, std::size_t src, const Rational& c);

    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Reduced row echelon form. Pivot search scans columns left to right and rows
// top-down, pivots are normalized to 1 and cleared above and below, so the
// result is canonical for the row space.
Matrix rref(Matrix m);
std::vector<std::size_t> pivot_columns(const Matrix& reduced);
std::size_t rank(const Matrix& m);

// Canonical kernel basis: one vector per free column (ascending), then row
// reduced so the basis itself is in RREF.
std::vector<Vec> kernel_basis(const Matrix& m);

struct Solution {
    Vec particular;               // free variables set to 0
    std::vector<Vec> homogeneous; // kernel_basis of the matrix
};

std::optional<Solution> solve(const Matrix& m, const Vec& b);

// Row-reduces [m | I] once so that repeated right-hand sides cost O(n^2).
class LinearSolver {
public:
    explicit LinearSolver(const Matrix& m);

    std::optional<Vec> particular(const Vec& b) const; // free variables zero
    const std::vector<Vec>& kernel() const { return kernel_; }
    std::size_t rank() const { return pivots_.size(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Matrix reduced_;                   // rref(m)
    Matrix ops_;                       // ops_ * m == reduced_
    std::vector<std::size_t> pivots_;  // pivot column per pivot row
    std::vector<Vec> kernel_;
};

// Subspace of Q^ambient stored as an RREF basis with strictly increasing
// pivot columns and no zero rows; equal subspaces compare entry-wise equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace from_vectors(std::size_t ambient, const std::vector<Vec>& gens);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool member(const Vec& v) const;

    bool operator==(const Subspace& rhs) const = default;

private:
    std::size_t ambient_ = 0;
    Matrix basis_; // dim x ambient, RREF
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);

} // namespace masseylab
