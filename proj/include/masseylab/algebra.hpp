#pragma once

#include "masseylab/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace masseylab {

class MasseylabError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Semantic misuse: degree out of range, mismatched algebras, bad model
// parameters. Distinct from ParseError so the CLI can map exit codes.
class DomainError : public MasseylabError {
public:
    using MasseylabError::MasseylabError;
};

class ParseError : public MasseylabError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : MasseylabError(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = 0;
};

struct GeneratorSpec {
    std::string name;
    int degree = 0; // >= 1

    bool operator==(const GeneratorSpec&) const = default;
};

struct AxiomViolation {
    std::string axiom;   // "unit", "graded-commutativity", "associativity",
                         // "d-squared", "leibniz", "table"
    std::string witness; // names the offending basis elements
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::size_t checks_run = 0;
    bool ok() const { return violations.empty(); }
};

class AlgebraError : public MasseylabError {
public:
    AlgebraError(const std::string& what, AxiomReport report)
        : MasseylabError(what), report_(std::move(report)) {}
    const AxiomReport& report() const { return report_; }

private:
    AxiomReport report_;
};

// Extra bookkeeping kept only for algebras built from free generators: the
// generator list in canonical order and the monomial exponent vectors that
// back each basis element.
struct FreeStructure {
    std::vector<GeneratorSpec> generators;            // sorted by (degree, declaration)
    std::vector<std::string> differential_sources;    // per generator, "0" for closed
    std::vector<std::vector<std::vector<int>>> monomials; // [degree][index] = exponents
};

class Algebra;
using AlgebraHandle = std::shared_ptr<const Algebra>;

// Homogeneous element of a fixed degree, stored as coordinates over that
// degree's basis.
class Cochain {
public:
    Cochain() = default;
    Cochain(AlgebraHandle algebra, int degree);
    Cochain(AlgebraHandle algebra, int degree, Vec coords);

    const AlgebraHandle& algebra() const { return algebra_; }
    int degree() const { return degree_; }
    const Vec& coords() const { return coords_; }
    bool is_zero() const { return is_zero_vec(coords_); }

    Cochain operator+(const Cochain& rhs) const;
    Cochain operator-(const Cochain& rhs) const;
    Cochain operator-() const;
    Cochain scaled_by(const Rational& c) const;
    bool operator==(const Cochain& rhs) const;

    std::string to_string() const; // e.g. "-a2*z + 3/2*Omega*z", "0"

private:
    AlgebraHandle algebra_;
    int degree_ = 0;
    Vec coords_;
};

// Immutable graded algebra with differential, truncated at degree_bound.
// Every backend (free generators, explicit tables, Hirsch extensions) is
// normalized into per-degree bases, product tables and differential matrices.
class Algebra {
public:
    enum class Backend { free, structure_constants };

    Backend backend() const { return backend_; }
    int degree_bound() const { return degree_bound_; }
    const std::string& label() const { return label_; }

    std::size_t dim(int degree) const;
    const std::vector<std::string>& basis_names(int degree) const;
    const std::string& basis_name(int degree, std::size_t index) const;

    // Basis elements and (for free backends) generators with plain
    // identifier names, looked up globally.
    std::optional<std::pair<int, std::size_t>> find_basis_element(const std::string& name) const;

    std::size_t unit_index() const { return unit_index_; }

    // Coordinates of e_i * e_j in degree di+dj; requires di+dj <= degree_bound.
    const Vec& product_coords(int di, std::size_t i, int dj, std::size_t j) const;

    // d_k : A^k -> A^(k+1) as a dim(k+1) x dim(k) matrix; requires k <= D-1.
    const Matrix& differential_matrix(int k) const;

    const FreeStructure* free_structure() const { return free_.get(); }

    // Deep structural equality (bases, tables, differentials); labels ignored.
    bool same_tables(const Algebra& rhs) const;

    // Opaque per-algebra slot for derived data (cohomology caches). The
    // algebra itself stays observationally immutable.
    struct CacheSlot {
        std::mutex mutex;
        std::shared_ptr<void> data;
    };
    CacheSlot& cache_slot() const { return cache_; }

private:
    Backend backend_ = Backend::structure_constants;
    int degree_bound_ = 0;
    std::string label_;
    std::vector<std::vector<std::string>> names_;       // [degree]
    std::map<std::string, std::pair<int, std::size_t>> name_index_;
    std::size_t unit_index_ = 0;
    // products_[di][dj][i * dim(dj) + j] = coords in degree di+dj
    std::vector<std::vector<std::vector<Vec>>> products_;
    std::vector<Matrix> differentials_;                 // [k], k <= D-1
    std::shared_ptr<const FreeStructure> free_;
    mutable CacheSlot cache_;

    friend class AlgebraBuilder;
};

// --- construction ---------------------------------------------------------

AlgebraHandle build_free_cdga(const std::vector<GeneratorSpec>& generators,
                              const std::map<std::string, std::string>& differential,
                              int degree_bound, const std::string& label = "");

struct ScProductEntry {
    std::string left;
    std::string right;
    std::vector<std::pair<std::string, Rational>> result;
};

struct ScDifferentialEntry {
    std::string on;
    std::vector<std::pair<std::string, Rational>> result;
};

struct ScAlgebraSpec {
    int degree_bound = 0;
    std::vector<std::vector<std::string>> basis_by_degree; // index = degree
    std::string unit;
    std::vector<ScProductEntry> products;       // all pairs with deg sum <= D
                                                // (rows involving the unit may
                                                // be omitted and are implied)
    std::vector<ScDifferentialEntry> differential; // omitted elements are closed
    std::string label;
};

// Validates the table exhaustively (unit, graded commutativity both orders,
// associativity, Leibniz, d^2 = 0) and throws AlgebraError with witnesses on
// the first failure category.
AlgebraHandle build_sc_algebra(const ScAlgebraSpec& spec);

struct HirschExtensionSpec {
    std::string generator_name;
    int generator_degree = 0; // odd
    Cochain euler_cocycle;    // closed, degree generator_degree + 1, over the base
    std::string label;        // optional; derived from the base when empty
};

AlgebraHandle hirsch_extend(const AlgebraHandle& base, const HirschExtensionSpec& ext);

// --- operations -----------------------------------------------------------

Cochain basis_cochain(const AlgebraHandle& a, int degree, std::size_t index);
Cochain zero_cochain(const AlgebraHandle& a, int degree);

Cochain multiply(const Cochain& u, const Cochain& v);
Cochain differentiate(const Cochain& u);

AxiomReport verify_axioms(const AlgebraHandle& a);

namespace detail {
// Assembles the tables without running the axiom checks; used to exercise
// verify_axioms on corrupted input.
AlgebraHandle build_sc_algebra_unchecked(const ScAlgebraSpec& spec);
} // namespace detail

} // namespace masseylab
