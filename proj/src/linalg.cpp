#include "masseylab/linalg.hpp"

#include <regex>
#include <stdexcept>

namespace masseylab {

std::string rational_to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<Rational> rational_from_string(const std::string& s) {
    static const std::regex shape(R"(^-?[0-9]+(/[0-9]+)?$)");
    if (!std::regex_match(s, shape)) return std::nullopt;
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    const Integer num(s.substr(0, slash));
    const Integer den(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rational(num, den);
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Vec scaled(const Vec& v, const Rational& c) {
    Vec out(v);
    for (auto& x : out) x *= c;
    return out;
}

void add_scaled(Vec& target, const Vec& src, const Rational& c) {
    if (target.size() != src.size()) throw std::invalid_argument("add_scaled: length mismatch");
    if (c == 0) return;
    for (std::size_t i = 0; i < target.size(); ++i) target[i] += c * src[i];
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    Vec out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = at(i, j);
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("operator*: shape mismatch");
    Matrix m(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                if (rhs.at(k, j) != 0) m.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return m;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void Matrix::scale_row(std::size_t i, const Rational& c) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) *= c;
}

void Matrix::add_scaled_row(std::size_t target, std::size_t src, const Rational& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(target, j) += c * at(src, j);
}

namespace {

// Shared elimination over the first `cols` columns; extra columns (augmented
// data) tag along in the row operations.
void eliminate(Matrix& m, std::size_t cols, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { sel = i; break; }
        if (sel == m.rows()) continue;
        m.swap_rows(sel, r);
        m.scale_row(r, Rational(1) / m.at(r, c));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            if (m.at(i, c) != 0) m.add_scaled_row(i, r, -m.at(i, c));
        }
        pivots.push_back(c);
        ++r;
    }
}

} // namespace

Matrix rref(Matrix m) {
    std::vector<std::size_t> pivots;
    eliminate(m, m.cols(), pivots);
    return m;
}

std::vector<std::size_t> pivot_columns(const Matrix& reduced) {
    std::vector<std::size_t> pivots;
    std::size_t c = 0;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        while (c < reduced.cols() && reduced.at(r, c) == 0) ++c;
        if (c == reduced.cols()) break;
        pivots.push_back(c);
    }
    return pivots;
}

std::size_t rank(const Matrix& m) {
    return pivot_columns(rref(m)).size();
}

namespace {

std::vector<Vec> kernel_from_rref(const Matrix& reduced, const std::vector<std::size_t>& pivots,
                                  std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced.at(r, f);
        out.push_back(std::move(v));
    }
    // Canonicalize: the free-column vectors already have distinct unit
    // coordinates, but their leading entries may sit at pivot columns.
    Matrix canon = rref(Matrix::from_rows(out, cols));
    out.clear();
    for (std::size_t r = 0; r < canon.rows(); ++r) {
        Vec v = canon.row(r);
        if (!is_zero_vec(v)) out.push_back(std::move(v));
    }
    return out;
}

} // namespace

std::vector<Vec> kernel_basis(const Matrix& m) {
    Matrix reduced = rref(m);
    return kernel_from_rref(reduced, pivot_columns(reduced), m.cols());
}

LinearSolver::LinearSolver(const Matrix& m) : rows_(m.rows()), cols_(m.cols()) {
    Matrix aug(rows_, cols_ + rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    eliminate(aug, cols_, pivots_);
    reduced_ = Matrix(rows_, cols_);
    ops_ = Matrix(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) reduced_.at(i, j) = aug.at(i, j);
        for (std::size_t j = 0; j < rows_; ++j) ops_.at(i, j) = aug.at(i, cols_ + j);
    }
    kernel_ = kernel_from_rref(reduced_, pivots_, cols_);
}

std::optional<Vec> LinearSolver::particular(const Vec& b) const {
    if (b.size() != rows_) throw std::invalid_argument("particular: length mismatch");
    const Vec y = ops_.apply(b);
    for (std::size_t i = pivots_.size(); i < rows_; ++i)
        if (y[i] != 0) return std::nullopt;
    Vec x(cols_);
    for (std::size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = y[r];
    return x;
}

std::optional<Solution> solve(const Matrix& m, const Vec& b) {
    LinearSolver solver(m);
    auto part = solver.particular(b);
    if (!part) return std::nullopt;
    return Solution{std::move(*part), solver.kernel()};
}

Subspace Subspace::from_vectors(std::size_t ambient, const std::vector<Vec>& gens) {
    Subspace s(ambient);
    Matrix reduced = rref(Matrix::from_rows(gens, ambient));
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        Vec v = reduced.row(r);
        if (!is_zero_vec(v)) rows.push_back(std::move(v));
    }
    s.basis_ = Matrix::from_rows(rows, ambient);
    return s;
}

bool Subspace::member(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("member: length mismatch");
    Vec rem(v);
    const auto pivots = pivot_columns(basis_);
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        const Rational c = rem[pivots[r]];
        if (c != 0)
            for (std::size_t j = 0; j < ambient_; ++j) rem[j] -= c * basis_.at(r, j);
    }
    return is_zero_vec(rem);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace_sum: ambient mismatch");
    std::vector<Vec> gens;
    for (std::size_t r = 0; r < a.basis().rows(); ++r) gens.push_back(a.basis().row(r));
    for (std::size_t r = 0; r < b.basis().rows(); ++r) gens.push_back(b.basis().row(r));
    return Subspace::from_vectors(a.ambient(), gens);
}

} // namespace masseylab
