#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "corrheight/bipoly.hpp"

namespace corrh::arith {

/// Sparse polynomial in x, y, t: exponent triple -> nonzero coefficient.
using MPoly = std::map<std::array<unsigned, 3>, Rational>;

/// Grammar: sums of products of powers; integers, decimals and p/q as coefficients;
/// variables x, y, t; `^` takes a non-negative integer; `2x` means `2*x`; division only
/// by nonzero constants. Throws ParseError carrying the offending column.
MPoly parse_polynomial(std::string_view text);

bool uses_variable(const MPoly& p, int var);  // 0 = x, 1 = y, 2 = t
BiPoly to_bipoly(const MPoly& p);             // rejects t
UniPoly to_unipoly(const MPoly& p, int var);  // rejects the other two variables
/// Substitute t = value.
BiPoly specialize(const MPoly& family, const Rational& value);
std::string to_string(const MPoly& p);

/// "3", "-7/2", "0.25"; throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace corrh::arith
