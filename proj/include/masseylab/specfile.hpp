#pragma once

#include "masseylab/algebra.hpp"

#include <iosfwd>
#include <string>

namespace masseylab {

// JSON algebra documents. Free presentations are stored as generators plus
// differential expressions and rebuilt through build_free_cdga; everything
// else is stored as explicit per-degree bases and tables and rebuilt (and
// re-validated) through build_sc_algebra. Coefficients are exact rational
// strings; the documents contain no floating point.
//
// Malformed JSON or schema violations raise ParseError; documents that parse
// but describe an invalid algebra raise DomainError / AlgebraError from the
// builders.
AlgebraHandle load_algebra(std::istream& in, const std::string& origin = "<stream>");
AlgebraHandle load_algebra_file(const std::string& path);

std::string export_algebra(const AlgebraHandle& a);
void save_algebra_file(const AlgebraHandle& a, const std::string& path);

} // namespace masseylab
