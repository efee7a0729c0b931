#include "corrheight/heights.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace corrh {

using namespace arith;

namespace {

void require_polarized(const Correspondence& C) {
  if (C.alpha <= 1) throw ValidationError("canonical heights need alpha > 1 (alpha = " + C.alpha.get_str() + ")");
}

Interval inv_alpha_pow(const Rational& alpha, int n) {
  return Interval(1L) / pow(Interval(alpha), static_cast<unsigned>(n));
}

PathPrefix at_least(PathEngine& E, const PathPrefix& P, int n, const ExtensionStrategy& s) {
  if (n < 0) throw ValidationError("negative depth");
  if (static_cast<int>(P.length()) >= n) return P;
  if (std::holds_alternative<All>(s)) throw ValidationError("canonical heights follow a single path");
  return extend(E, P, s, n - static_cast<int>(P.length())).front();
}

Interval symmetric(const BigFloat& r) { return Interval(-r, r); }

Interval local_value(OrbitGraph& g, NodeRef r, const RationalPlace& v) {
  if (OrbitGraph::is_infinity(r)) return Interval(0L);
  const IntPoly& m = g.minpoly(r.orbit);
  const long d = m.degree();
  if (v.archimedean) {
    Interval s(0L);
    for (const auto& b : g.boxes(r.orbit)) s += log_plus(b.box().abs());
    return s / Interval(d);
  }
  if (!mpz_divisible_p(m.lead().get_mpz_t(), v.prime.get_mpz_t())) return Interval(0L);
  Interval s(0L);
  for (const auto& seg : newton_polygon(m, v.prime))
    if (seg.slope > 0) s += Interval(seg.slope * seg.length) * log(Interval(v.prime));
  return s / Interval(d);
}

}  // namespace

Interval kappa_prime(const Rational& alpha, const KappaBound& k) {
  return Interval(alpha / (alpha - 1) * k.value);
}

CanonicalHeightResult canonical_height(PathEngine& E, const PathPrefix& P, int n, const ExtensionStrategy& s) {
  require_polarized(E.correspondence());
  CanonicalHeightResult res;
  res.path = at_least(E, P, n, s);
  res.depth = n;
  res.kappa = E.kappa();
  res.alpha = E.correspondence().alpha;
  PrecisionGuard guard(std::max(E.precision(), 128L));
  const Interval scale = inv_alpha_pow(res.alpha, n);
  const Interval& h = res.path.heights[n];
  res.tail_radius = scale * kappa_prime(res.alpha, res.kappa);
  res.numeric_radius = scale * Interval(h.rad());
  res.estimate.value = scale * h + symmetric(res.tail_radius.hi());
  res.estimate.certified = res.kappa.certified;
  return res;
}

CanonicalHeightResult canonical_height(PathEngine& E, const ProjPoint& a, const ExtensionStrategy& s, int n) {
  return canonical_height(E, single_node(E, a), n, s);
}

ShiftScaling shift_scaling_check(PathEngine& E, const PathPrefix& P, int n, const ExtensionStrategy& s) {
  ShiftScaling r;
  const PathPrefix Q = at_least(E, P, n + 1, s);
  r.base = canonical_height(E, Q, n, s);
  r.shifted = canonical_height(E, shift(Q), n, s);
  r.overlap = (Interval(r.base.alpha) * r.base.estimate.value).overlaps(r.shifted.estimate.value);
  return r;
}

HminHmax hmin_hmax(PathEngine& E, const ProjPoint& a, double tolerance, std::size_t max_expansions) {
  const Correspondence& C = E.correspondence();
  require_polarized(C);
  const KappaBound K = E.kappa();
  const BigFloat eps(tolerance);
  return E.run([&](OrbitGraph& g) {
    HminHmax out;
    const Interval kp = kappa_prime(C.alpha, K);
    struct Item {
      BigFloat lo, hi;
      NodeRef r;
      int depth;
    };
    auto item = [&](NodeRef r, int depth) {
      const Interval scale = inv_alpha_pow(C.alpha, depth);
      const Interval h = g.height(r.orbit);
      BigFloat lo = (scale * (h - kp)).lo();
      if (lo.sign() < 0) lo = BigFloat(0L);
      return Item{lo, (scale * (h + kp)).hi(), r, depth};
    };
    const NodeRef root = g.insert(a);

    // one search per side; `low` selects hmin
    auto search = [&](bool low) {
      auto worse = [low](const Item& x, const Item& y) {
        if (low) return x.lo != y.lo ? x.lo > y.lo : x.hi > y.hi;
        return x.hi != y.hi ? x.hi < y.hi : x.lo < y.lo;
      };
      std::priority_queue<Item, std::vector<Item>, decltype(worse)> open(worse);
      std::set<std::pair<NodeRef, int>> seen;
      Item r0 = item(root, 0);
      BigFloat best = low ? r0.hi : r0.lo;
      open.push(r0);
      seen.insert({root, 0});
      bool complete = false;
      Interval result;
      std::size_t expanded = 0;
      std::string note;
      while (!open.empty()) {
        Item it = open.top();
        open.pop();
        if (low ? it.lo > best : it.hi < best) continue;
        const BigFloat front = low ? it.lo : it.hi;
        result = low ? Interval(front, best) : Interval(best, front);
        if (abs(best - front) <= eps) {
          complete = true;
          break;
        }
        if (expanded >= max_expansions) {
          note = "expansion budget reached";
          break;
        }
        std::vector<Edge> edges;
        try {
          edges = g.successors(it.r);
        } catch (const BudgetExceeded& e) {
          note = e.what();
          break;
        }
        ++expanded;
        for (const auto& e : edges) {
          if (!seen.insert({e.to, it.depth + 1}).second) continue;
          Item c = item(e.to, it.depth + 1);
          if (low) {
            best = min(best, c.hi);
            if (c.lo <= best) open.push(c);
          } else {
            best = max(best, c.lo);
            if (c.hi >= best) open.push(c);
          }
        }
      }
      out.expanded += expanded;
      if (!note.empty()) out.note += (out.note.empty() ? "" : "; ") + std::string(low ? "hmin: " : "hmax: ") + note;
      return std::make_pair(HeightEstimate{result, K.certified}, complete);
    };
    auto [lo, c1] = search(true);
    auto [hi, c2] = search(false);
    out.hmin = lo;
    out.hmax = hi;
    out.complete = c1 && c2;
    return out;
  });
}

ExpectedHeight expected_height(PathEngine& E, const ProjPoint& a, std::size_t N, int n, std::uint64_t seed) {
  const Correspondence& C = E.correspondence();
  require_polarized(C);
  if (N == 0) throw ValidationError("need at least one sample");
  return E.run([&](OrbitGraph& g) {
    const double scale = std::pow(C.alpha.get_d(), -n);
    const NodeRef root = g.insert(a);
    // Welford: a constant sample gives exactly zero spread
    long double mean = 0, m2 = 0;
    std::vector<unsigned> hist;
    for (std::size_t s = 0; s < N; ++s) {
      hist.clear();
      NodeRef r = root;
      for (int step = 0; step < n; ++step) {
        const auto edges = g.successors(r);
        const unsigned slot = random_slot(seed, s, hist, C.dy);
        hist.push_back(slot);
        r = edges[edge_for_slot(edges, slot)].to;
      }
      const double v = scale * g.height(r.orbit).mid().to_double();
      const long double delta = v - mean;
      mean += delta / static_cast<long double>(s + 1);
      m2 += delta * (v - mean);
    }
    ExpectedHeight eh;
    eh.samples = N;
    eh.depth = n;
    eh.mean = static_cast<double>(mean);
    const long double var = N > 1 ? m2 / (N - 1) : 0;
    eh.std_error = static_cast<double>(std::sqrt(std::max<long double>(var, 0) / N));
    return eh;
  });
}

ExpectedRelation expected_height_relation_check(PathEngine& E, const ProjPoint& a, std::size_t N, int n,
                                                std::uint64_t seed) {
  const Correspondence& C = E.correspondence();
  if (n < 1) throw ValidationError("the relation needs depth >= 1");
  ExpectedRelation rel;
  rel.at_a = expected_height(E, a, N, n, seed);
  const double alpha = C.alpha.get_d();
  rel.rhs = alpha * rel.at_a.mean;
  rel.rhs_se = alpha * rel.at_a.std_error;
  double var = 0;
  std::uint64_t stream = 0;
  for (const auto& s : successors(C, a)) {
    ++stream;
    const ExpectedHeight eb = expected_height(E, s.point, N, n - 1, seed ^ (0x9e3779b97f4a7c15ULL * stream));
    const double w = static_cast<double>(s.multiplicity) / C.dy;
    rel.lhs += w * eb.mean;
    var += w * w * eb.std_error * eb.std_error;
    rel.successors.emplace_back(s.point, eb);
    rel.multiplicities.push_back(s.multiplicity);
  }
  rel.lhs_se = std::sqrt(var);
  const double se = std::sqrt(var + rel.rhs_se * rel.rhs_se);
  const double gap = std::abs(rel.lhs - rel.rhs);
  rel.z = se > 0 ? gap / se : (gap == 0 ? 0 : std::numeric_limits<double>::infinity());
  rel.pass = rel.z <= 3;
  return rel;
}

std::string RationalPlace::to_string() const { return archimedean ? "inf" : "p=" + prime.get_str(); }

LocalHeightValue local_canonical_height(PathEngine& E, const PathPrefix& P, const RationalPlace& v, int n,
                                        double tolerance, const ExtensionStrategy& s) {
  const Correspondence& C = E.correspondence();
  require_polarized(C);
  const PathPrefix Q = at_least(E, P, n, s);
  return E.run([&](OrbitGraph& g) {
    LocalHeightValue out;
    out.place = v;
    out.depth = n;
    out.value = inv_alpha_pow(C.alpha, n) * local_value(g, g.insert(Q.nodes[n]), v);
    if (n >= 1) {
      const Interval prev = inv_alpha_pow(C.alpha, n - 1) * local_value(g, g.insert(Q.nodes[n - 1]), v);
      out.stabilized = abs(prev - out.value).hi() <= BigFloat(tolerance);
    }
    return out;
  });
}

LocalGlobal local_global_check(PathEngine& E, const PathPrefix& P, int n, double tolerance,
                               const ExtensionStrategy& s) {
  LocalGlobal lg;
  lg.global = canonical_height(E, P, n, s);
  const PathPrefix& Q = lg.global.path;
  std::vector<RationalPlace> places{RationalPlace{}};
  if (!Q.nodes[n].is_infinity()) {
    const Integer lc = abs(Q.nodes[n].finite().minpoly().lead());
    if (lc > 1)
      for (auto& [p, e] : factor_integer(lc)) places.push_back(RationalPlace{false, p});
  }
  PrecisionGuard guard(std::max(E.precision(), 128L));
  lg.sum = Interval(0L);
  for (const auto& v : places) {
    lg.locals.push_back(local_canonical_height(E, Q, v, n, tolerance, s));
    lg.sum += lg.locals.back().value;
  }
  // against the truncation itself; the telescoping tail is shared by both sides
  const Interval center = inv_alpha_pow(lg.global.alpha, n) * Q.heights[n];
  lg.difference = lg.sum - center;
  lg.pass = lg.difference.mag() <= BigFloat(tolerance) + lg.global.estimate.radius();
  return lg;
}

Continuity tree_continuity_check(PathEngine& E, const PathPrefix& P, const PathPrefix& Q, int n, int m,
                                 const ExtensionStrategy& s) {
  if (m <= n) throw ValidationError("continuity depth must exceed the shared depth");
  if (static_cast<int>(P.length()) < n || static_cast<int>(Q.length()) < n)
    throw ValidationError("prefixes shorter than the shared depth");
  for (int i = 0; i <= n; ++i)
    if (!equals(P.nodes[i], Q.nodes[i])) throw ValidationError("prefixes differ at node " + std::to_string(i));
  Continuity c;
  c.agree = n;
  c.p = canonical_height(E, P, m, s);
  c.q = canonical_height(E, Q, m, s);
  PrecisionGuard guard(std::max(E.precision(), 128L));
  c.bound = Interval(2L) * inv_alpha_pow(c.p.alpha, n) * kappa_prime(c.p.alpha, c.p.kappa);
  const Interval& x = c.p.estimate.value;
  const Interval& y = c.q.estimate.value;
  c.worst = max(x.hi() - y.lo(), y.hi() - x.lo());
  c.holds = c.worst <= c.bound.lo();
  return c;
}

FamilyCorrespondence FamilyCorrespondence::parse(std::string_view text) {
  FamilyCorrespondence f;
  f.F = parse_polynomial(text);
  f.text = std::string(text);
  return f;
}

Correspondence FamilyCorrespondence::at(const Rational& t) const { return validate(specialize(F, t)); }

SpecializationReport specialization_experiment(const FamilyCorrespondence& fam, const ProjPoint& start,
                                               const ByIndex& branch, const std::vector<Rational>& ts, int depth) {
  SpecializationReport rep;
  bool have_alpha = false;
  const double start_h = start.height().mid().to_double();
  for (const Rational& t : ts) {
    SpecializationRow row;
    row.t = t;
    try {
      Correspondence C = fam.at(t);
      if (!have_alpha) {
        rep.alpha = C.alpha;
        have_alpha = true;
      }
      if (C.alpha != rep.alpha) throw ValidationError("alpha changes to " + C.alpha.get_str());
      PathEngine E(std::move(C));
      const auto res = canonical_height(E, start, branch, depth);
      row.hhat = res.estimate;
      row.h_t = ProjPoint::rational(t).height().mid().to_double();
      const double hh = row.hhat.mid().to_double();
      row.ratio = row.h_t > 0 ? hh / row.h_t : std::numeric_limits<double>::quiet_NaN();
      row.start_gap = std::abs(hh - start_h);
    } catch (const ValidationError& e) {
      row.skipped = true;
      row.note = std::string("degenerate specialization skipped: ") + e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  double c = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rep.rows)
    if (!r.skipped && r.h_t > 0) c = r.ratio;
  // least squares line for the gap, lifted so it bounds every row
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (auto& r : rep.rows) {
    if (r.skipped) continue;
    r.sqrt_residual = r.h_t > 0 ? (r.hhat.mid().to_double() - c * r.h_t) / std::sqrt(r.h_t)
                                : std::numeric_limits<double>::quiet_NaN();
    sx += r.h_t;
    sy += r.start_gap;
    sxx += r.h_t * r.h_t;
    sxy += r.h_t * r.start_gap;
    ++cnt;
  }
  if (cnt >= 2 && cnt * sxx - sx * sx > 0) rep.c1 = std::max(0.0, (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
  for (const auto& r : rep.rows)
    if (!r.skipped) rep.c2 = std::max(rep.c2, r.start_gap - rep.c1 * r.h_t);
  return rep;
}

}  // namespace corrh
