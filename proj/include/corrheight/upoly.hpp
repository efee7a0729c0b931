#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrheight/poly.hpp"

namespace corrh::arith {

Integer content(const IntPoly& f);
/// Primitive part with positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);
/// p = scale * prim with prim primitive in Z[x] and lc(prim) > 0.
std::pair<Rational, IntPoly> split_content(const UniPoly& p);
IntPoly primitive_integer(const UniPoly& p);
UniPoly to_uni(const IntPoly& f);

UniPoly monic(const UniPoly& p);
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
std::optional<IntPoly> try_exact_div(const IntPoly& a, const IntPoly& b);

/// Primitive gcd over Z[x] (positive leading coefficient), modular algorithm.
IntPoly gcd_int(const IntPoly& a, const IntPoly& b);
UniPoly poly_gcd(const UniPoly& p, const UniPoly& q);

/// Yun decomposition of a primitive polynomial: factors s_i (i = multiplicity), trivial ones dropped.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& f);
IntPoly squarefree_part_int(const IntPoly& f);
UniPoly squarefree_part(const UniPoly& p);

/// Substitute x -> x + c (Taylor shift).
IntPoly taylor_shift(const IntPoly& f, const Integer& c);
/// Reverse coefficients: x^deg f(1/x).
template <class T>
DensePoly<T> reversed(const DensePoly<T>& f) {
  std::vector<T> c(f.coeffs().rbegin(), f.coeffs().rend());
  return DensePoly<T>(std::move(c));
}

std::string to_string(const IntPoly& f, char var = 'x');
std::string to_string(const UniPoly& f, char var = 'x');

}  // namespace corrh::arith
