#pragma once

#include "masseylab/algebra.hpp"

#include <string>

namespace masseylab {

// Parses a homogeneous algebra expression over basis-element / generator
// names into a Cochain. Grammar:
//
//   expr     := ('+'|'-')? term (('+'|'-') term)*
//   term     := coeff ('*' monomial)? | monomial
//   monomial := factor ('*' factor)*
//   factor   := name ('^' positive-int)?
//   coeff    := integer ('/' positive-integer)?
//
// Whitespace-insensitive. Sums must be homogeneous. ParseError carries the
// byte offset of the offending token; degree overflow and unknown names are
// reported the same way.
//
// A bare scalar literal is a multiple of the unit (degree 0); the literal
// "0" is degree-flexible and coerces to expected_degree when one is given.
Cochain parse_expression(const std::string& src, const AlgebraHandle& algebra);
Cochain parse_expression(const std::string& src, const AlgebraHandle& algebra,
                         int expected_degree);

} // namespace masseylab
