#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrheight/algebraic.hpp"
#include "corrheight/bipoly.hpp"

namespace corrh {

using arith::BiPoly;
using arith::ZYPoly;

/// F = g(y) - f(x) up to a constant, in primitive integer form with lc(g) > 0.
struct SplitForm {
  IntPoly f, g;
};

struct Correspondence {
  BiPoly F;     // as given
  ZYPoly in_x;  // primitive integer form, polynomial in x over Z[y]
  ZYPoly in_y;  // same, polynomial in y over Z[x]
  int dx = 0, dy = 0;
  Rational alpha;
  std::optional<SplitForm> split;
  std::vector<std::string> warnings;
  std::string text;

  /// Same curve with the roles of x and y exchanged (predecessors become successors).
  Correspondence reversed() const;
};

/// Raises ValidationError for a constant or univariate F, a factor in x or y alone, or a
/// repeated factor (the message carries the squarefree part). Reducibility is only a warning.
Correspondence validate(const BiPoly& F);
Correspondence validate(std::string_view text);

struct KappaBound {
  Rational value;  // upper bound, exact dyadic
  bool certified = false;
  std::string provenance;
};

/// Certified for split forms: with g(b) = f(a),
///   |h(b) - alpha h(a)| <= max(U_f + L_g, U_g + L_f) / deg g,
/// where h(p(a)) <= deg p h(a) + U_p and h(p(a)) >= deg p h(a) - L_p are the per-place bounds
/// computed by poly_height_bounds. The returned value is divided by alpha.
/// Otherwise twice the largest deviation seen on small rationals, flagged uncertified.
KappaBound kappa_bound(const Correspondence& C);

/// (U_p, L_p) as exact upper bounds.
std::pair<Rational, Rational> poly_height_bounds(const IntPoly& p);

/// The coarser coefficient-height bound h(coeffs) + log(deg + 1) + deg log 2, used only as a
/// sanity ceiling for the per-place bound.
Rational coarse_poly_bound(const IntPoly& p);

struct Successor {
  ProjPoint point;
  unsigned multiplicity;
};

/// Successors of a in canonical order (real part descending, then imaginary part descending,
/// infinity last); multiplicities sum to d_y.
std::vector<Successor> successors(const Correspondence& C, const ProjPoint& a);
/// Mirror image: multiplicities sum to d_x.
std::vector<Successor> predecessors(const Correspondence& C, const ProjPoint& b);

}  // namespace corrh
