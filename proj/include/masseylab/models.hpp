#pragma once

#include "masseylab/algebra.hpp"
#include "masseylab/linalg.hpp"

#include <string>
#include <variant>
#include <vector>

namespace masseylab {

// Cohomology ring of a quaternionic-Kähler-type orbifold base: 1 | a1..ak |
// Omega with a_i a_j = delta_ij lambda_i Omega and zero differential.
struct QKOrbifoldSpec {
    int k = 1;
    std::vector<Rational> lambdas; // size k, all nonzero; empty means all 1
};

// Tag wrapper so the model variant can tell the orbifold base apart from its
// degree-3 extension.
struct ThreeSasakianSpec {
    QKOrbifoldSpec base;
};

// Which sign closes the ring relation a_i^3 = sign * b^3. `minus` is the
// printed convention; `plus` is the alternative preset (see the H^5 family
// check, where the two conventions flip a sign in the closed basis).
enum class RelationSign { minus, plus };

// CP^3 blown up at k points: 1 | b,a1..ak | b^2,a1^2..ak^2 | b^3, d = 0.
struct BlowupSpec {
    int k = 1;
    RelationSign relation_sign = RelationSign::minus;
};

// S^1-bundle total space over the blow-up: extension by x of degree 1 with
// dx = l*b - a1 - ... - ak.
struct CircleBundleSpec {
    int k = 1;
    int l = 1; // Euler coefficient, > 0
    RelationSign relation_sign = RelationSign::minus;
};

using ModelSpec = std::variant<QKOrbifoldSpec, ThreeSasakianSpec, BlowupSpec, CircleBundleSpec>;

AlgebraHandle qk_orbifold_algebra(const QKOrbifoldSpec& spec);
AlgebraHandle three_sasakian_model(const QKOrbifoldSpec& spec);
AlgebraHandle cp3_blowup_algebra(const BlowupSpec& spec);
AlgebraHandle sasaki_circle_model(const CircleBundleSpec& spec);

AlgebraHandle build_model(const ModelSpec& spec);
std::string model_label(const ModelSpec& spec);

// Multiplication pairings H^j x H^{n-j} -> H^n expressed in the coordinate of
// the top class (the single basis class of H^n; requires b_n = 1).
struct PairingEntry {
    int degree = 0; // j
    Matrix gram;    // b_j rows, b_{n-j} columns
    bool nondegenerate = false;
};

struct PoincarePairing {
    int formal_dimension = 0;
    std::vector<PairingEntry> entries; // j = 0 .. floor(n/2)
    bool all_nondegenerate = false;
};

PoincarePairing poincare_gram(const AlgebraHandle& a, int formal_dimension);

// Symmetric congruence diagonalization: transform^T * gram * transform ==
// diagonal, exactly. Rejects non-symmetric or degenerate input.
struct PairingDiagonalization {
    Matrix transform;
    Matrix diagonal;
};

PairingDiagonalization diagonalize_pairing(const Matrix& gram);

// (positive, negative) counts of a diagonal matrix; congruence-invariant.
std::pair<std::size_t, std::size_t> signature_of_diagonal(const Matrix& diagonal);

} // namespace masseylab
