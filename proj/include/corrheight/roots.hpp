#pragma once

#include <utility>
#include <vector>

#include "corrheight/interval.hpp"
#include "corrheight/upoly.hpp"

namespace corrh::arith {

/// Certified isolating box. `real` boxes are symmetric about the real axis and hold a real root.
struct ComplexBox {
  Interval re, im;
  long precision = 0;
  bool real = false;

  CInterval box() const { return CInterval(re, im); }
  BigFloat width() const { return max(re.width(), im.width()); }
};

/// Polynomial with complex interval coefficients, constant term first.
using CIPoly = std::vector<CInterval>;

CIPoly to_cipoly(const IntPoly& f);
CIPoly to_cipoly(const UniPoly& f);
CIPoly derivative(const CIPoly& f);
CInterval horner(const CIPoly& f, const CInterval& z);

/// Simultaneous Aberth-Ehrlich iteration on the midpoint polynomial; approximations only.
std::vector<CFloat> aberth(const CIPoly& f, int max_iter = 400);

/// Krawczyk certificate around an approximation: a box holding exactly one root of every
/// member of the family f. With `on_real_axis` the box is symmetric about the real axis.
/// Returns false when no contracting radius was found.
bool certify_near(const CIPoly& f, const CIPoly& df, const CFloat& z, bool on_real_axis, CInterval& out);

/// All deg f roots of a squarefree family, as pairwise disjoint certified boxes, at the
/// working precision. With `real_coeffs` roots are paired under conjugation; real roots
/// come back in real-axis-symmetric boxes and are flagged. Throws PrecisionExhausted.
std::vector<ComplexBox> certified_roots(const CIPoly& f, bool real_coeffs);

/// Roots of p with multiplicities. The precision is a starting point and is doubled
/// internally up to a fixed budget.
std::vector<std::pair<ComplexBox, unsigned>> isolate_roots(const UniPoly& p, long precision = 128);

/// Shrink a certified box for p to width <= target_width, staying inside it.
ComplexBox refine_box(const UniPoly& p, const ComplexBox& box, const BigFloat& target_width);

/// Largest precision the isolation routines will try.
constexpr long kMaxIsolationPrecision = 1L << 15;

}  // namespace corrh::arith
