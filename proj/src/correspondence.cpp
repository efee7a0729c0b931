#include "corrheight/correspondence.hpp"

#include <cmath>

#include "corrheight/factor.hpp"
#include "corrheight/parse.hpp"

namespace corrh {

using namespace arith;

namespace {

IntPoly content_of(const ZYPoly& F) {
  IntPoly g;
  for (const auto& c : F.coeffs()) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive_part(c) : gcd_int(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

ZYPoly primitive_zy(const ZYPoly& F) {
  if (F.is_zero()) return F;
  IntPoly c = content_of(F);
  // also strip the integer content
  Integer ic = 0;
  for (const auto& v : F.coeffs())
    for (const auto& z : v.coeffs()) mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), z.get_mpz_t());
  if (sgn(F.lead().lead()) < 0) ic = -ic;
  IntPoly divisor = c.scaled(ic / content(c));
  return exact_div(F, ZYPoly::constant(divisor));
}

// gcd in Z[x][y] by the primitive remainder sequence; fine for correspondence-sized inputs
ZYPoly gcd_zy(ZYPoly a, ZYPoly b) {
  a = primitive_zy(a);
  b = primitive_zy(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero() && b.degree() > 0) {
    ZYPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_zy(r);
  }
  if (b.is_zero()) return a;
  return ZYPoly{IntPoly{1}};
}

ZYPoly derivative_zy(const ZYPoly& F) {
  if (F.degree() <= 0) return {};
  std::vector<IntPoly> c(F.size() - 1);
  for (std::size_t i = 1; i < F.size(); ++i) c[i - 1] = F[i].scaled(Integer(static_cast<unsigned long>(i)));
  return ZYPoly(std::move(c));
}

BiPoly from_zx(const ZYPoly& G) {
  // G is a polynomial in y over Z[x]
  std::vector<std::vector<Rational>> rows;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < G[j].size(); ++i) {
      if (rows.size() <= i) rows.resize(i + 1);
      if (rows[i].size() <= j) rows[i].resize(j + 1);
      rows[i][j] = Rational(G[j][i]);
    }
  return BiPoly(std::move(rows));
}

std::optional<SplitForm> detect_split(const ZYPoly& in_x) {
  // no monomial x^i y^j with i, j >= 1
  for (std::size_t i = 1; i < in_x.size(); ++i)
    if (in_x[i].degree() > 0) return std::nullopt;
  std::vector<Integer> g(in_x[0].coeffs().begin(), in_x[0].coeffs().end());
  std::vector<Integer> f(in_x.size());
  if (!g.empty()) {
    f[0] = -g[0];
    g[0] = 0;
  }
  for (std::size_t i = 1; i < in_x.size(); ++i) f[i] = -in_x[i].coeff(0);
  SplitForm s{IntPoly(std::move(f)), IntPoly(std::move(g))};
  if (s.g.degree() < 1 || s.f.degree() < 1) return std::nullopt;
  if (sgn(s.g.lead()) < 0) {
    s.g = -s.g;
    s.f = -s.f;
  }
  return s;
}

bool irreducible_specialization(const BiPoly& F, int dy) {
  for (long x0 : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, 7L, -7L, 11L, 13L, 17L, -19L, 23L, 29L, 31L, -37L, 41L, 43L}) {
    UniPoly fy = F.eval_x(Rational(x0));
    if (fy.degree() != dy) continue;
    auto fs = factor_over_rationals(fy);
    if (fs.size() == 1 && fs[0].second == 1) return true;
  }
  return false;
}

Interval log_interval(const Integer& z) { return log(Interval(Integer(abs(z)))); }

}  // namespace

Correspondence validate(const BiPoly& F) {
  if (F.is_zero()) throw ValidationError("zero polynomial");
  Correspondence C;
  C.F = F;
  C.dx = F.deg_x();
  C.dy = F.deg_y();
  if (C.dx < 1 || C.dy < 1) throw ValidationError("F must involve both x and y (d_x, d_y >= 1)");
  C.in_x = F.to_zy();
  C.in_y = F.to_zx();
  if (content_of(C.in_y).degree() > 0)
    throw ValidationError("univariate factor in x: " + to_string(content_of(C.in_y), 'x'));
  if (content_of(C.in_x).degree() > 0)
    throw ValidationError("univariate factor in y: " + to_string(content_of(C.in_x), 'y'));
  ZYPoly g = gcd_zy(C.in_y, derivative_zy(C.in_y));
  if (g.degree() > 0) {
    ZYPoly part = exact_div(primitive_zy(C.in_y), g);
    throw ValidationError("F is not squarefree; squarefree part: " + from_zx(part).to_string());
  }
  C.alpha = Rational(C.dx, C.dy);
  C.alpha.canonicalize();
  C.split = detect_split(C.in_x);
  if (!irreducible_specialization(F, C.dy))
    C.warnings.push_back("F may be reducible over Q: no irreducible specialization F(x0, y) found");
  C.text = F.to_string();
  return C;
}

Correspondence validate(std::string_view text) {
  Correspondence C = validate(to_bipoly(parse_polynomial(text)));
  C.text = std::string(text);
  return C;
}

Correspondence Correspondence::reversed() const {
  Correspondence R = *this;
  R.F = F.swapped();
  std::swap(R.in_x, R.in_y);
  std::swap(R.dx, R.dy);
  R.alpha = 1 / alpha;
  R.split.reset();
  if (split) R.split = detect_split(R.in_x);
  return R;
}

std::pair<Rational, Rational> poly_height_bounds(const IntPoly& p) {
  if (p.degree() < 1) throw ValidationError("height bounds need a nonconstant polynomial");
  PrecisionGuard guard(128);
  const int d = p.degree();
  // upper: log+ of the coefficient 1-norm (integer coefficients: no finite contribution)
  Integer l1 = 0;
  for (const auto& c : p.coeffs()) l1 += abs(c);
  Interval U = log_plus(Interval(l1));

  // lower, archimedean: for |a| >= R, |p(a)| >= |a|^d (|c_d| - sum_{i<d} |c_i| R^(i-d)),
  // and below R the deficit is at most d log+ R. Search R on a dyadic grid.
  auto eps_at = [&](const Interval& R) {
    Interval s{Integer(abs(p.lead()))};
    for (int i = 0; i < d; ++i) {
      if (sgn(p[i]) == 0) continue;
      s -= Interval(Integer(abs(p[i]))) / pow(R, static_cast<unsigned>(d - i));
    }
    return s;
  };
  Interval best = Interval(BigFloat::infinity(1), BigFloat::infinity(1));
  for (int k = 0; k <= 4096; ++k) {
    // R = 2^(k/64) for k = 0..4096 covers [1, 2^64]
    Interval R = exp(Interval(Rational(k, 64)) * interval_log2());
    Interval e = eps_at(R);
    if (!e.positive()) continue;
    Interval L = max(max(Interval(0L), -log(e)), Interval(static_cast<long>(d)) * log_plus(R));
    if (L.hi() < best.hi()) best = L;
    if (best.hi().sign() <= 0) break;
  }
  if (!best.is_finite()) throw PrecisionExhausted("no admissible radius in the archimedean lower bound");
  Interval Lsum = best;

  // lower, finite primes dividing the leading coefficient
  if (abs(p.lead()) > 1) {
    for (auto& [q, e] : factor_integer(p.lead())) {
      const long vd = valuation(p.lead(), q);
      Rational worst(vd);
      for (int i = 0; i < d; ++i) {
        if (sgn(p[i]) == 0) continue;
        Rational r(vd - valuation(p[i], q), d - i);
        r.canonicalize();
        worst = std::max(worst, Rational(r * d));
      }
      Lsum += Interval(worst) * log_interval(q);
    }
  }
  return {U.hi().to_rational(), Lsum.hi().to_rational()};
}

Rational coarse_poly_bound(const IntPoly& p) {
  PrecisionGuard guard(128);
  Integer m = 0;
  for (const auto& c : p.coeffs()) m = std::max(m, Integer(abs(c)));
  Interval b = log(Interval(m)) + log(Interval(static_cast<long>(p.degree() + 1))) +
               Interval(static_cast<long>(p.degree())) * interval_log2();
  return b.lo().to_rational();
}

KappaBound kappa_bound(const Correspondence& C) {
  KappaBound k;
  if (C.split) {
    auto [Uf, Lf] = poly_height_bounds(C.split->f);
    auto [Ug, Lg] = poly_height_bounds(C.split->g);
    Rational raw = std::max(Uf + Lg, Ug + Lf) / C.split->g.degree();
    k.value = raw / C.alpha;
    k.certified = true;
    k.provenance = "split-form";
    return k;
  }
  // empirical: small rationals, deviations of alpha^-1 h(b) from h(a)
  PrecisionGuard guard(128);
  BigFloat worst(0L);
  const Interval inv_alpha(1 / C.alpha);
  for (long q = 1; q <= 6; ++q)
    for (long p = -12; p <= 12; ++p) {
      Rational a(p, q);
      a.canonicalize();
      if (a.get_den() != q) continue;
      ProjPoint pa = ProjPoint::rational(a);
      Interval ha = pa.height().value;
      for (const auto& s : successors(C, pa)) {
        Interval dev = abs(inv_alpha * s.point.height().value - ha);
        worst = max(worst, dev.hi());
      }
    }
  k.value = (worst * BigFloat(2L)).to_rational();
  k.certified = false;
  k.provenance = "empirical";
  return k;
}

}  // namespace corrh
