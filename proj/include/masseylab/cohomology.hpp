#pragma once

#include "masseylab/algebra.hpp"
#include "masseylab/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace masseylab {

// Element of H^k(A), stored as coordinates over the canonical basis of H^k.
// The canonical basis is chosen deterministically: representatives are picked
// greedily from the RREF basis of the cocycle space, skipping anything already
// spanned by coboundaries and earlier picks.
class CohomologyClass {
public:
    CohomologyClass(AlgebraHandle algebra, int degree, Vec coords);

    const AlgebraHandle& algebra() const { return algebra_; }
    int degree() const { return degree_; }
    const Vec& coords() const { return coords_; }
    bool is_zero() const;

    // Canonical cocycle representative: the coordinate combination of the
    // basis representatives.
    Cochain representative() const;
    std::string to_string() const;

    CohomologyClass operator+(const CohomologyClass& rhs) const;
    CohomologyClass operator-(const CohomologyClass& rhs) const;
    CohomologyClass operator-() const;
    CohomologyClass scaled_by(const Rational& s) const;
    bool operator==(const CohomologyClass& rhs) const;

private:
    AlgebraHandle algebra_;
    int degree_ = 0;
    Vec coords_;
};

struct CohomologyBasis {
    int degree = 0;
    std::vector<Cochain> representatives;
    std::size_t dim() const { return representatives.size(); }
};

// Degrees 0 .. degree_bound() - 1 are analyzable; everything else throws
// DomainError (the top stored degree has no outgoing differential, so its
// cocycles are not determined by the table).
int max_analyzable_degree(const AlgebraHandle& a);

CohomologyBasis cohomology_basis(const AlgebraHandle& a, int degree);
std::size_t betti_number(const AlgebraHandle& a, int degree);
std::vector<std::size_t> betti_vector(const AlgebraHandle& a, int top_degree);

// Absent when the cochain is not closed; coboundaries map to the zero class.
std::optional<CohomologyClass> class_of(const Cochain& cocycle);
CohomologyClass basis_class(const AlgebraHandle& a, int degree, std::size_t index);
CohomologyClass zero_class(const AlgebraHandle& a, int degree);

bool is_coboundary(const Cochain& cocycle);

// Solves d(x) = target for a closed target; free coordinates are zero.
// nullopt when the target is not exact (or has degree 0). Throws DomainError
// when the target is provably not closed.
std::optional<Cochain> find_primitive(const Cochain& target);

// Cup product [u][v] = [uv]; requires both factors on the same algebra and
// the product degree to stay analyzable.
CohomologyClass cup(const CohomologyClass& u, const CohomologyClass& v);

} // namespace masseylab
