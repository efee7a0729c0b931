// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corrheight/factor.hpp"
#include "corrheight/heights.hpp"
#include "corrheight/places.hpp"

using namespace corrh;
using namespace corrh::arith;

namespace {

ProjPoint R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return ProjPoint::rational(r);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- criterion 1

Outcome integral_edges() {
  auto C = validate("y^2 - x^3 + x - 1");
  const std::map<long, long> listed = {{-1, 1}, {0, 1}, {1, 1}, {3, 5}, {5, 11}, {56, 419}};
  Outcome o{true, ""};
  for (auto [x, y] : listed) {
    auto s = successors(C, R(x));
    bool ok = s.size() == 2;
    std::set<Rational> got;
    for (const auto& e : s) {
      if (e.point.is_infinity() || !e.point.finite().is_rational() || e.multiplicity != 1) ok = false;
      else got.insert(e.point.finite().rational_value());
    }
    ok = ok && got == std::set<Rational>{Rational(y), Rational(-y)};
    if (!ok) o = {false, "x = " + std::to_string(x)};
  }
  auto inf = successors(C, ProjPoint::infinity());
  if (!(inf.size() == 1 && inf[0].point.is_infinity() && inf[0].multiplicity == 2)) o = {false, "infinity"};
  if (!o.pass) return o;

  // every rational point with x of height <= log 100: the six above plus three with
  // non-integral coordinates, which are not integral edges and stay out of the sample
  auto grid = rationals_up_to(100);
  std::set<Rational> six, extra;
  for (auto [x, y] : listed) six.insert(Rational(x));
  for (const auto& x : grid) {
    auto rs = rational_successors(C, ProjPoint::rational(x));
    if (rs.empty() || six.count(x)) continue;
    extra.insert(x);
    for (auto& [p, m] : rs)
      if (x.get_den() == 1 && p.finite().rational_value().get_den() == 1) return {false, "integral point missed"};
  }
  std::vector<Rational> pool;
  for (const auto& x : grid)
    if (!six.count(x) && !extra.count(x)) pool.push_back(x);
  std::mt19937_64 rng(1404);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(200);
  for (const auto& x : pool)
    for (const auto& e : successors(C, ProjPoint::rational(x)))
      if (e.point.is_infinity() || e.point.finite().is_rational()) return {false, "rational successor at " + x.get_str()};
  std::ostringstream d;
  d << "6 listed, 200 sampled irrational, non-integral points at";
  for (const auto& x : extra) d << ' ' << x.get_str();
  return {true, d.str()};
}

// ---- criterion 2

Outcome rational_paths() {
  auto C = validate("y^2 - x^3 + x - 1");
  auto r = rational_path_search(C, std::log(100.0), 5);
  std::set<Rational> starts;
  for (const auto& s : r) starts.insert(s.start);
  std::ostringstream d;
  d << "starts";
  for (const auto& s : starts) d << ' ' << s.get_str();
  return {starts == std::set<Rational>{Rational(0), Rational(1), Rational(-1)}, d.str()};
}

// ---- criterion 3

Outcome shift_relation() {
  PathEngine E(validate("y^2 - x^3 - 1"));
  const Interval bound = pow(Interval(Rational(2, 3)), 8) * Interval(3L) * Interval(E.kappa().value);
  int good = 0;
  BigFloat worst(0L);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto P = single_node(E, R(static_cast<long>(seed % 7) - 3));
    // evaluated at depth 9: at depth 8 the tail term alone equals the bound
    auto s = shift_scaling_check(E, P, 9, RandomWeighted{seed});
    BigFloat r = max(s.base.estimate.radius(), s.shifted.estimate.radius());
    worst = max(worst, r);
    if (s.overlap && s.base.estimate.certified && r <= bound.lo()) ++good;
  }
  return {good == 20, std::to_string(good) + "/20 overlap, worst radius " + worst.to_string(4) + " <= " +
                          bound.hi().to_string(4)};
}

// ---- criterion 4

Outcome small_height() {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto Q = canonical_height(E, R(0), ByIndex{{1, 0, 0}}, 10);
  auto P = canonical_height(E, R(0), ByIndex{{0}}, 8);
  bool overlap = (Interval(Rational(4, 9)) * P.estimate.value).overlaps(Q.estimate.value);
  int first = -1;
  for (int n = 0; n <= 10 && first < 0; ++n)
    if (canonical_height(E, R(0), ByIndex{{0}}, n).estimate.value.lo().sign() > 0) first = n;
  return {overlap && first >= 0 && P.estimate.certified,
          "hhat(P) = " + P.estimate.mid().to_string(9) + ", lower bound positive from depth " + std::to_string(first)};
}

// ---- criterion 5

Outcome monomial() {
  PathEngine M(validate("y^2 - x^3"));
  bool ok = true;
  auto two = canonical_height(M, R(2), ByIndex{{0}}, 6);
  ok = ok && two.path.nodes[1].finite().box().re.lo() > 0;
  ok = ok && two.estimate.value.overlaps(interval_log2()) && two.estimate.radius() <= BigFloat(1e-4);
  const std::vector<ProjPoint> units = {R(1), R(-1), parse_point("root(x^2 + x + 1, -0.5+0.866i)"),
                                        parse_point("root(x^2 + 1, 1i)"),
                                        parse_point("root(x^4 + x^3 + x^2 + x + 1, 0.309+0.951i)")};
  int k = 0;
  for (const auto& u : units)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      // kappa = 0 here, so depth only costs: cyclotomic fibres stop being irreducible
      auto r = canonical_height(M, u, RandomWeighted{seed}, 4);
      if (r.estimate.value.contains(BigFloat(0L)) && r.estimate.radius() <= BigFloat(1e-4)) ++k;
      else ok = false;
    }
  return {ok, "log 2 enclosed with radius " + two.estimate.radius().to_string(3) + ", " + std::to_string(k) +
                  "/15 unit paths at 0"};
}

// ---- criterion 6

Outcome product_formula() {
  std::mt19937_64 rng(7711);
  std::uniform_int_distribution<long> coef(-40, 40);
  std::uniform_int_distribution<int> deg(1, 6);
  int tested = 0, good = 0;
  BigFloat worst(0L);
  while (tested < 100) {
    const int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& v : c) v = coef(rng);
    if (c.back() == 0 || c[0] == 0) continue;
    auto fs = factor_over_rationals(UniPoly(c));
    IntPoly m = primitive_integer(fs.back().first);
    auto roots = AlgebraicNumber::roots_of(to_uni(m));
    const AlgebraicNumber& a = roots[rng() % roots.size()];
    ++tested;
    Interval pf = product_formula_check(a);
    worst = max(worst, pf.rad());
    if (pf.contains(BigFloat(0L)) && pf.rad() <= BigFloat(1e-9) && height_from_places(a).value.overlaps(a.height().value))
      ++good;
  }
  return {good == 100, std::to_string(good) + "/100, worst product radius " + worst.to_string(3)};
}

// ---- criterion 7

Outcome local_global() {
  int good = 0, total = 0;
  BigFloat worst(0L);
  for (const char* curve : {"y^2 - x^3 - 1", "y^2 - x^3 + x - 1"}) {
    PathEngine E(validate(curve));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto P = single_node(E, R(static_cast<long>(seed % 5) - 2));
      auto r = local_global_check(E, P, 10, 1e-3, RandomWeighted{seed});
      ++total;
      worst = max(worst, r.difference.mag());
      if (r.pass) ++good;
    }
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + ", worst |sum - hhat| " + worst.to_string(3)};
}

// ---- criterion 8

Outcome expected_relation() {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto r = expected_height_relation_check(E, R(0), 10000, 8, 2024);
  return {r.pass, "lhs " + fmt("%.6f", r.lhs) + " rhs " + fmt("%.6f", r.rhs) + " z " + fmt("%.2f", r.z)};
}

// ---- criterion 9

Outcome continuity() {
  PathEngine E(validate("y^2 - x^3 - 1"));
  int good = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = i % 7;
    auto base = walk(E, R(i % 5 - 2), RandomWeighted{static_cast<std::uint64_t>(i)}, n);
    std::vector<unsigned> a(base.branches), b(base.branches);
    a.push_back(0);
    b.push_back(1);
    auto A = extend(E, base, ByIndex{a}, 1).front();
    auto B = extend(E, base, ByIndex{b}, 1).front();
    auto s = RandomWeighted{static_cast<std::uint64_t>(1000 + i)};
    if (tree_continuity_check(E, A, B, n, n + 4, s).holds) ++good;
  }
  return {good == 50, std::to_string(good) + "/50"};
}

// ---- criterion 10

Outcome specialization() {
  auto fam = FamilyCorrespondence::parse("y^2 - x^3 - t");
  std::vector<Rational> ts;
  for (int k = 1; k <= 10; ++k) ts.push_back(Rational(1L << k));
  auto rep = specialization_experiment(fam, R(0), ByIndex{{0}}, ts, 8);
  std::vector<double> diff(11, 0);
  for (int k = 2; k <= 10; ++k) diff[k] = std::abs(rep.rows[k - 1].ratio - rep.rows[k - 2].ratio);
  bool ok = true;
  for (int k = 5; k <= 10; ++k) ok = ok && diff[k] < diff[k - 1];
  for (const auto& r : rep.rows) ok = ok && !r.skipped;
  std::string d = "ratio at 2^10 " + fmt("%.5f", rep.rows.back().ratio) + ", diffs";
  for (int k = 4; k <= 10; ++k) d += fmt(" %.2e", diff[k]);
  return {ok, d};
}

// ---- criterion 11: an independent 200-bit root finder

constexpr mpfr_prec_t kOracleBits = 200;

struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, kOracleBits), mpfr_set_zero(v, 1); }
  Mp(const Mp& o) { mpfr_init2(v, kOracleBits), mpfr_set(v, o.v, MPFR_RNDN); }
  Mp& operator=(const Mp& o) {
    mpfr_set(v, o.v, MPFR_RNDN);
    return *this;
  }
  ~Mp() { mpfr_clear(v); }
};

struct Cx {
  Mp re, im;
};

Cx cx(const Rational& q) {
  Cx z;
  mpfr_set_q(z.re.v, q.get_mpq_t(), MPFR_RNDN);
  return z;
}
Cx add(const Cx& a, const Cx& b) {
  Cx z;
  mpfr_add(z.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_add(z.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return z;
}
Cx mul(const Cx& a, const Cx& b) {
  Cx z;
  Mp t;
  mpfr_mul(z.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(z.re.v, z.re.v, t.v, MPFR_RNDN);
  mpfr_mul(z.im.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_add(z.im.v, z.im.v, t.v, MPFR_RNDN);
  return z;
}
Cx neg(const Cx& a) {
  Cx z;
  mpfr_neg(z.re.v, a.re.v, MPFR_RNDN);
  mpfr_neg(z.im.v, a.im.v, MPFR_RNDN);
  return z;
}
Cx div(const Cx& a, const Cx& b) {
  Mp n, t;
  mpfr_sqr(n.v, b.re.v, MPFR_RNDN);
  mpfr_sqr(t.v, b.im.v, MPFR_RNDN);
  mpfr_add(n.v, n.v, t.v, MPFR_RNDN);
  Cx c = b;
  mpfr_neg(c.im.v, c.im.v, MPFR_RNDN);
  Cx z = mul(a, c);
  mpfr_div(z.re.v, z.re.v, n.v, MPFR_RNDN);
  mpfr_div(z.im.v, z.im.v, n.v, MPFR_RNDN);
  return z;
}
Cx csqrt(const Cx& w) {
  Mp r, t;
  mpfr_hypot(r.v, w.re.v, w.im.v, MPFR_RNDN);
  Cx z;
  mpfr_add(t.v, r.v, w.re.v, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  mpfr_sqrt(z.re.v, t.v, MPFR_RNDN);
  mpfr_sub(t.v, r.v, w.re.v, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  mpfr_sqrt(z.im.v, t.v, MPFR_RNDN);
  if (mpfr_sgn(w.im.v) < 0) mpfr_neg(z.im.v, z.im.v, MPFR_RNDN);
  return z;
}
double cabs_d(const Cx& z) { return std::hypot(mpfr_get_d(z.re.v, MPFR_RNDN), mpfr_get_d(z.im.v, MPFR_RNDN)); }

// Elements of Q(a) as coefficient vectors modulo the minimal polynomial of a.
struct Field {
  std::vector<Rational> m;  // monic minpoly, constant first, degree 1 or 2
  std::vector<Rational> reduce(std::vector<Rational> u) const {
    const std::size_t d = m.size() - 1;
    for (std::size_t i = u.size(); i-- > d;) {
      Rational c = u[i];
      for (std::size_t j = 0; j <= d; ++j) u[i - d + j] -= c * m[j];
    }
    u.resize(d);
    return u;
  }
  std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    std::vector<Rational> r(a.size() + b.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return reduce(r);
  }
  static bool zero(const std::vector<Rational>& u) {
    return std::all_of(u.begin(), u.end(), [](const Rational& c) { return c == 0; });
  }
};

struct OracleRoot {
  Cx z;
  unsigned mult;
};

// Roots of F(a, y), c[i][j] the coefficient of x^i y^j; returns finite roots and the number
// of roots at infinity.
std::vector<OracleRoot> oracle_roots(const std::vector<std::vector<long>>& c, int dy, const Field& K, const Cx& a,
                                     unsigned& at_infinity) {
  std::vector<std::vector<Rational>> ex(dy + 1);
  std::vector<Cx> num(dy + 1);
  for (int j = 0; j <= dy; ++j) {
    std::vector<Rational> acc(1, Rational(0));
    std::vector<Rational> pw(1, Rational(1));
    Cx s, p = cx(Rational(1));
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<Rational> term = pw;
      for (auto& t : term) t *= c[i][j];
      acc.resize(std::max(acc.size(), term.size()), Rational(0));
      for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
      s = add(s, mul(cx(Rational(c[i][j])), p));
      std::vector<Rational> x{Rational(0), Rational(1)};
      pw = K.mul(pw, x);
      p = mul(p, a);
    }
    ex[j] = K.reduce(acc);
    num[j] = s;
  }
  int deg = dy;
  while (deg >= 0 && Field::zero(ex[deg])) --deg;
  at_infinity = static_cast<unsigned>(dy - std::max(deg, 0));
  std::vector<OracleRoot> out;
  if (deg == 1) out.push_back({div(neg(num[0]), num[1]), 1});
  if (deg == 2) {
    auto disc = K.reduce([&] {
      auto b2 = K.mul(ex[1], ex[1]);
      auto ac = K.mul(ex[2], ex[0]);
      b2.resize(std::max(b2.size(), ac.size()), Rational(0));
      for (std::size_t k = 0; k < ac.size(); ++k) b2[k] -= 4 * ac[k];
      return b2;
    }());
    Cx two_a = add(num[2], num[2]);
    if (Field::zero(disc)) {
      out.push_back({div(neg(num[1]), two_a), 2});
    } else {
      Cx d = add(mul(num[1], num[1]), neg(mul(cx(Rational(4)), mul(num[2], num[0]))));
      Cx r = csqrt(d);
      out.push_back({div(add(neg(num[1]), r), two_a), 1});
      out.push_back({div(add(neg(num[1]), neg(r)), two_a), 1});
    }
  }
  return out;
}

BigFloat big(const Mp& m, mpfr_rnd_t rnd, const Mp& eps, int sign) {
  BigFloat b;
  mpfr_set_prec(b.get(), kOracleBits + 8);
  if (sign > 0) mpfr_add(b.get(), m.v, eps.v, rnd);
  else mpfr_sub(b.get(), m.v, eps.v, rnd);
  return b;
}

// The oracle's error disc (a square of side 2^-179 (1 + |z|)) meets the box.
bool meets(const Cx& z, const ComplexBox& box) {
  Mp eps;
  mpfr_set_d(eps.v, 1 + cabs_d(z), MPFR_RNDU);
  mpfr_mul_2si(eps.v, eps.v, -180, MPFR_RNDU);
  return big(z.re, MPFR_RNDD, eps, -1) <= box.re.hi() && box.re.lo() <= big(z.re, MPFR_RNDU, eps, 1) &&
         big(z.im, MPFR_RNDD, eps, -1) <= box.im.hi() && box.im.lo() <= big(z.im, MPFR_RNDU, eps, 1);
}

std::string poly_text(const std::vector<std::vector<long>>& c) {
  std::ostringstream s;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      if (c[i][j] == 0) continue;
      s << (first ? (c[i][j] < 0 ? "-" : "") : (c[i][j] < 0 ? " - " : " + ")) << std::labs(c[i][j]);
      if (i) s << "*x^" << i;
      if (j) s << "*y^" << j;
      first = false;
    }
  return first ? "0" : s.str();
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> coef(-6, 6);
  int done = 0, rejected = 0, quadratic_starts = 0;
  std::string failure;
  while (done < 50) {
    const int dx = 1 + static_cast<int>(rng() % 3), dy = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<long>> c(dx + 1, std::vector<long>(dy + 1, 0));
    for (auto& row : c)
      for (auto& v : row)
        if (rng() % 3) v = coef(rng);
    Correspondence C;
    try {
      C = validate(poly_text(c));
    } catch (const ValidationError&) {
      ++rejected;
      continue;
    }
    if (C.dx != dx || C.dy != dy) continue;

    // the start: a rational, or a quadratic irrational, of height <= log 20
    Field K;
    Cx a;
    std::optional<ProjPoint> start;
    if (rng() % 3) {
      long p = static_cast<long>(rng() % 41) - 20, q = 1 + static_cast<long>(rng() % 20);
      Rational r(p, q);
      r.canonicalize();
      K.m = {-r, Rational(1)};
      a = cx(r);
      start = ProjPoint::rational(r);
    } else {
      long k = 1 + static_cast<long>(rng() % 3), b = static_cast<long>(rng() % 9) - 4, e = static_cast<long>(rng() % 11) - 5;
      if (e == 0) continue;
      auto fs = factor_over_rationals(UniPoly(std::vector<Rational>{Rational(e), Rational(b), Rational(k)}));
      if (fs.size() != 1 || fs[0].first.degree() != 2) continue;
      double disc = static_cast<double>(b * b - 4 * k * e);
      double mahler = std::log(static_cast<double>(k));
      if (disc >= 0) {
        for (double s : {1.0, -1.0}) mahler += std::log(std::max(1.0, std::abs((-b + s * std::sqrt(disc)) / (2.0 * k))));
      } else {
        mahler += 2 * std::log(std::max(1.0, std::sqrt(static_cast<double>(e) / k)));
      }
      if (mahler / 2 > std::log(20.0) - 1e-9) continue;
      auto roots = AlgebraicNumber::roots_of(UniPoly(std::vector<Rational>{Rational(e), Rational(b), Rational(k)}));
      const AlgebraicNumber& root = roots[rng() % roots.size()];
      K.m = {Rational(e, k), Rational(b, k), Rational(1)};
      for (auto& v : K.m) v.canonicalize();
      // the oracle's own value of the chosen root: the closer of the two formula roots
      Cx d = cx(Rational(b * b - 4 * k * e));
      Cx r = csqrt(d), mb = cx(Rational(-b)), den = cx(Rational(2 * k));
      Cx z1 = div(add(mb, r), den), z2 = div(add(mb, neg(r)), den);
      auto dist = [&](const Cx& z) {
        return std::hypot(mpfr_get_d(z.re.v, MPFR_RNDN) - root.box().re.mid().to_double(),
                          mpfr_get_d(z.im.v, MPFR_RNDN) - root.box().im.mid().to_double());
      };
      a = dist(z1) < dist(z2) ? z1 : z2;
      start = ProjPoint(root);
      ++quadratic_starts;
    }

    unsigned inf = 0;
    auto oracle = oracle_roots(c, dy, K, a, inf);
    auto got = successors(C, *start);
    unsigned got_inf = 0, finite_total = 0;
    std::vector<unsigned> hits(got.size(), 0);
    bool ok = true;
    for (const auto& s : got)
      if (s.point.is_infinity()) got_inf += s.multiplicity;
      else finite_total += s.multiplicity;
    for (const auto& r : oracle) {
      int where = -1, count = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].point.is_infinity()) continue;
        if (meets(r.z, got[i].point.finite().box())) where = static_cast<int>(i), ++count;
      }
      if (count != 1) ok = false;
      else hits[where] += r.mult;
    }
    for (std::size_t i = 0; i < got.size(); ++i)
      if (!got[i].point.is_infinity() && hits[i] != got[i].multiplicity) ok = false;
    if (got_inf != inf || finite_total + got_inf != static_cast<unsigned>(dy)) ok = false;
    if (!ok && failure.empty()) failure = C.text + " at " + start->to_string();
    ++done;
  }
  std::string d = "50 cases (" + std::to_string(quadratic_starts) + " quadratic starts, " + std::to_string(rejected) +
                  " rejected draws)";
  if (!failure.empty()) d += ", first mismatch " + failure;
  return {failure.empty(), d};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "integral edges on y^2 = x^3 - x + 1", 10, integral_edges},
      {2, "rational path search, height log 100, depth 5", 60, rational_paths},
      {3, "shift relation on 20 random paths of y^2 = x^3 + 1", 0, shift_relation},
      {4, "path of small positive height", 120, small_height},
      {5, "monomial closed form and roots of unity", 0, monomial},
      {6, "product formula and place heights on 100 random numbers", 0, product_formula},
      {7, "local-global sum on two curves, depth 10", 0, local_global},
      {8, "expected height relation, N = 10^4, depth 8", 0, expected_relation},
      {9, "tree continuity on 50 prefix pairs", 0, continuity},
      {10, "specialization y^2 = x^3 + 2^k, k = 1..10", 600, specialization},
      {11, "successors against a 200-bit root oracle", 0, oracle_equivalence},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      o.pass = false;
      o.detail += fmt(", over the %.0f s limit", c.limit);
    }
    if (!o.pass) ++failed;
    std::printf("%s [%2d] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
