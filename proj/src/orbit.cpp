#include "corrheight/orbit.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "corrheight/modp.hpp"

namespace corrh {

using namespace arith;

long default_precision() {
  if (const char* s = std::getenv("CORRHEIGHT_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 16) return v;
  }
  return 128;
}

namespace {

// Resultants up to this degree are factored outright when the irreducibility certificate fails.
constexpr int kExactFactorDegree = 96;
constexpr int kCertificatePrimes = 60;

CInterval eval_at(const IntPoly& c, const CInterval& z) {
  CInterval acc(0L);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + CInterval(c[i]);
  return acc;
}

CInterval point_of(const ComplexBox& b) {
  // a real box certifies a real root: drop the imaginary slack
  return b.real ? CInterval(b.re, Interval(0L)) : b.box();
}

bool divides(const IntPoly& m, const IntPoly& c) {
  if (c.is_zero()) return true;
  if (c.degree() < m.degree()) return false;
  return pseudo_remainder(c, m).is_zero();
}

bool pairwise_disjoint(const std::vector<ComplexBox>& boxes) {
  std::vector<std::size_t> idx(boxes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return boxes[a].re.lo() < boxes[b].re.lo(); });
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (boxes[idx[j]].re.lo() > boxes[idx[i]].re.hi()) break;
      if (boxes[idx[i]].box().overlaps(boxes[idx[j]].box())) return false;
    }
  return true;
}

ComplexBox rational_box(const Rational& r, long prec) {
  ComplexBox b;
  b.re = Interval(r);
  b.im = Interval(0L);
  b.real = true;
  b.precision = prec;
  return b;
}

// F(theta, y) irreducible over Q(theta), certified through a degree-one prime of Q(theta) of
// good reduction at which the reduced fibre polynomial stays irreducible of full degree.
bool fibre_irreducible(const IntPoly& m, const ZYPoly& in_y, int k) {
  auto primes = primes_from(1009, kCertificatePrimes);
  for (std::uint64_t p : primes) {
    modp::Field F{p};
    if (mpz_divisible_ui_p(m.lead().get_mpz_t(), p)) continue;
    modp::Poly mb = modp::reduce(m, p);
    if (!modp::is_squarefree(F, mb)) continue;  // p divides disc(m)
    auto rts = modp::roots(F, mb, p);
    if (rts.size() > 4) rts.resize(4);
    for (std::uint64_t r : rts) {
      modp::Poly fy(k + 1);
      for (int j = 0; j <= k; ++j) fy[j] = modp::eval(F, modp::reduce(in_y[j], p), r);
      if (fy[k] == 0) continue;
      modp::trim(fy);
      if (modp::is_irreducible(F, modp::monic(F, fy))) return true;
    }
  }
  return false;
}

bool squarefree_mod_some_prime(const IntPoly& R) {
  for (std::uint64_t p : primes_from(2147483000ULL, 4)) {
    if (mpz_divisible_ui_p(R.lead().get_mpz_t(), p)) continue;
    modp::Field F{p};
    if (modp::is_squarefree(F, modp::reduce(R, p))) return true;
  }
  return false;
}

// Upper bound on the multiplicity of a root in B of f: the first derivative order whose
// enclosure excludes zero (0 when f itself does).
unsigned multiplicity_bound(CIPoly f, const CInterval& B) {
  for (unsigned j = 0; !f.empty(); ++j) {
    if (!horner(f, B).contains_zero()) return j;
    f = derivative(f);
  }
  return static_cast<unsigned>(-1);
}

}  // namespace

OrbitGraph::OrbitGraph(const Correspondence& C, long precision, std::shared_ptr<ExactCache> cache)
    : C_(C), precision_(precision), cache_(cache ? std::move(cache) : std::make_shared<ExactCache>()) {
  Orbit inf;
  inf.conj = std::make_shared<ConjugateSet>();
  ComplexBox b;
  b.precision = precision_;
  inf.conj->boxes.push_back(b);
  inf.edges.resize(1);
  orbits_.push_back(std::move(inf));
  for (const auto& row : C_.in_x.coeffs())
    for (const auto& c : row.coeffs()) add_hints(c);
}

void OrbitGraph::add_hints(const Integer& z) {
  if (abs(z) <= 1 || bit_length(z) > 64) return;
  for (auto& [p, e] : factor_integer(z))
    if (std::find(hints_.begin(), hints_.end(), p) == hints_.end()) hints_.push_back(p);
}

int OrbitGraph::degree(std::uint32_t orbit) const { return orbit == 0 ? 1 : orbits_[orbit].minpoly.degree(); }
const IntPoly& OrbitGraph::minpoly(std::uint32_t orbit) const { return orbits_[orbit].minpoly; }
const ComplexBox& OrbitGraph::box(NodeRef r) const { return orbits_[r.orbit].conj->boxes[r.conj]; }

std::uint32_t OrbitGraph::adopt(const IntPoly& m, std::vector<ComplexBox> boxes) {
  if (m.degree() > degree_budget_)
    throw BudgetExceeded("node of degree " + std::to_string(m.degree()) + " exceeds the degree budget " +
                         std::to_string(degree_budget_));
  Orbit o;
  o.minpoly = m;
  o.conj = std::make_shared<ConjugateSet>();
  o.conj->boxes = std::move(boxes);
  o.edges.resize(o.conj->boxes.size());
  const auto id = static_cast<std::uint32_t>(orbits_.size());
  orbits_.push_back(std::move(o));
  index_.emplace(m, id);
  return id;
}

std::uint32_t OrbitGraph::orbit_for(const IntPoly& m0) {
  IntPoly m = primitive_part(m0);
  if (auto it = index_.find(m); it != index_.end()) return it->second;
  if (m.degree() > degree_budget_)
    throw BudgetExceeded("node of degree " + std::to_string(m.degree()) + " exceeds the degree budget");
  std::vector<ComplexBox> boxes;
  if (m.degree() == 1) {
    Rational r(-m[0], m[1]);
    r.canonicalize();
    add_hints(r.get_num());
    add_hints(r.get_den());
    boxes.push_back(rational_box(r, precision_));
  } else {
    for (auto& [b, mult] : isolate_roots(to_uni(m), precision_)) boxes.push_back(b);
    if (static_cast<int>(boxes.size()) != m.degree()) throw ValidationError("node polynomial is not squarefree");
  }
  return adopt(m, std::move(boxes));
}

std::uint32_t OrbitGraph::locate(std::uint32_t orbit, const ComplexBox& b) const {
  const auto& boxes = orbits_[orbit].conj->boxes;
  if (boxes.size() == 1) return 0;
  std::uint32_t hit = UINT32_MAX;
  int hits = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (boxes[i].box().overlaps(b.box())) {
      hit = static_cast<std::uint32_t>(i);
      ++hits;
    }
  if (hits == 1) return hit;
  // several overlaps: accept the unique box lying inside b
  hits = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (b.box().contains(boxes[i].box())) {
      hit = static_cast<std::uint32_t>(i);
      ++hits;
    }
  return hits == 1 ? hit : UINT32_MAX;
}

NodeRef OrbitGraph::insert(const ProjPoint& p) {
  PrecisionGuard guard(precision_);
  if (p.is_infinity()) return infinity();
  const AlgebraicNumber& a = p.finite();
  const std::uint32_t id = orbit_for(a.minpoly());
  std::uint32_t j = locate(id, a.box());
  if (j == UINT32_MAX) {
    const long sep = static_cast<long>(log2_root_separation(a.minpoly())) - 2;
    j = locate(id, a.refined(BigFloat::pow2(sep)).box());
  }
  if (j == UINT32_MAX) throw PrecisionExhausted("could not match the point to a conjugate box");
  return {id, j};
}

std::vector<Edge> OrbitGraph::successors(NodeRef r) {
  PrecisionGuard guard(precision_);
  if (!orbits_[r.orbit].expanded) expand(r.orbit);
  return orbits_[r.orbit].edges[r.conj];
}

ProjPoint OrbitGraph::point(NodeRef r) {
  if (is_infinity(r)) return ProjPoint::infinity();
  const Orbit& o = orbits_[r.orbit];
  return AlgebraicNumber(o.minpoly, o.conj, r.conj);
}

Interval OrbitGraph::height(std::uint32_t orbit) {
  PrecisionGuard guard(precision_);
  Orbit& o = orbits_[orbit];
  if (o.height) return *o.height;
  Interval h;
  if (orbit == 0) {
    h = Interval(0L);
  } else if (o.minpoly.degree() == 1) {
    Integer p = abs(o.minpoly[0]), q = abs(o.minpoly[1]);
    h = log(Interval(p > q ? p : q));
  } else {
    Interval s = log(Interval(o.minpoly.lead()));
    for (const auto& b : o.conj->boxes) s += log_plus(b.box().abs());
    h = s / Interval(static_cast<long>(o.minpoly.degree()));
  }
  o.height = h;
  return h;
}

void OrbitGraph::sort_edges(std::vector<Edge>& edges) const {
  const BigFloat tie = BigFloat::pow2(-40);
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    if (is_infinity(a.to) || is_infinity(b.to)) return !is_infinity(a.to) && is_infinity(b.to);
    const ComplexBox& A = box(a.to);
    const ComplexBox& B = box(b.to);
    BigFloat ra = A.re.mid(), rb = B.re.mid();
    if (abs(ra - rb) > tie) return ra > rb;
    BigFloat ia = A.real ? BigFloat(0L) : A.im.mid();
    BigFloat ib = B.real ? BigFloat(0L) : B.im.mid();
    return ia > ib;
  });
}

void OrbitGraph::expand(std::uint32_t id) {
  if (id == 0) {
    // chart x = 1/u: the fibre over u = 0 is the coefficient of x^dx
    expand_exact_fiber(id, C_.F.coeff_in_x(C_.dx));
  } else if (orbits_[id].minpoly.degree() == 1) {
    const IntPoly& m = orbits_[id].minpoly;
    Rational a(-m[0], m[1]);
    a.canonicalize();
    expand_exact_fiber(id, C_.F.eval_x(a));
  } else {
    expand_algebraic(id);
  }
  orbits_[id].expanded = true;
}

void OrbitGraph::expand_exact_fiber(std::uint32_t id, const UniPoly& fiber) {
  std::vector<Edge> edges;
  const int k = fiber.degree();
  if (k > 0) {
    for (auto& [f, e] : factor_over_rationals(fiber)) {
      const std::uint32_t child = orbit_for(primitive_integer(f));
      for (std::uint32_t j = 0; j < orbits_[child].conj->boxes.size(); ++j) edges.push_back({{child, j}, e});
    }
  }
  if (C_.dy - std::max(k, 0) > 0) edges.push_back({infinity(), static_cast<unsigned>(C_.dy - std::max(k, 0))});
  sort_edges(edges);
  orbits_[id].edges[0] = std::move(edges);
}

const ExactFiber& OrbitGraph::exact_fiber(std::uint32_t id) {
  const IntPoly m = orbits_[id].minpoly;
  if (auto it = cache_->fibers.find(m); it != cache_->fibers.end()) return it->second;
  ExactFiber ef;
  int k = C_.dy;
  while (k > 0 && divides(m, C_.in_y[k])) --k;
  ef.fiber_degree = k;
  if (k > 0) {
    IntPoly R = primitive_part(resultant_in_x(m, C_.in_x));
    if (fibre_irreducible(m, C_.in_y, k)) {
      ef.single = true;
      if (squarefree_mod_some_prime(R)) {
        ef.factors.emplace_back(R, 1);
      } else {
        IntPoly s = squarefree_part_int(R);
        ef.factors.emplace_back(s, static_cast<unsigned>(R.degree() / s.degree()));
      }
    } else {
      if (R.degree() > kExactFactorDegree)
        throw BudgetExceeded("fibre resultant of degree " + std::to_string(R.degree()) +
                             " is not certified irreducible and is too large to factor");
      for (auto& [f, e] : factor_over_rationals(to_uni(R))) ef.factors.emplace_back(primitive_integer(f), e);
    }
  }
  return cache_->fibers.emplace(m, std::move(ef)).first->second;
}

void OrbitGraph::expand_algebraic(std::uint32_t id) {
  const ExactFiber ef = exact_fiber(id);
  const int k = ef.fiber_degree;
  const auto conj = orbits_[id].conj;
  const std::size_t d = conj->boxes.size();
  const unsigned inf = static_cast<unsigned>(C_.dy - k);
  std::vector<std::vector<Edge>> E(d);

  auto fibre_poly = [&](std::size_t i) {
    const CInterval theta = point_of(conj->boxes[i]);
    CIPoly f(k + 1);
    for (int j = 0; j <= k; ++j) f[j] = eval_at(C_.in_y[j], theta);
    return f;
  };

  if (k > 0 && ef.single) {
    const IntPoly& child_poly = ef.factors[0].first;
    const unsigned e = ef.factors[0].second;
    if (child_poly.degree() > degree_budget_)
      throw BudgetExceeded("node of degree " + std::to_string(child_poly.degree()) + " exceeds the degree budget " +
                           std::to_string(degree_budget_));
    std::vector<ComplexBox> flat;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < d; ++i) {
      for (auto& b : certified_roots(fibre_poly(i), conj->boxes[i].real)) {
        flat.push_back(std::move(b));
        owner.push_back(i);
      }
    }
    std::vector<ComplexBox> reps;
    std::vector<std::size_t> group(flat.size());
    if (e == 1) {
      if (!pairwise_disjoint(flat)) throw PrecisionExhausted("fibre boxes overlap");
      reps = flat;
      std::iota(group.begin(), group.end(), 0);
    } else {
      // each child root sits in e fibres: cluster overlapping boxes
      std::vector<bool> done(flat.size(), false);
      for (std::size_t a = 0; a < flat.size(); ++a) {
        if (done[a]) continue;
        ComplexBox rep = flat[a];
        std::size_t members = 0;
        for (std::size_t b = a; b < flat.size(); ++b)
          if (!done[b] && flat[b].box().overlaps(flat[a].box())) {
            done[b] = true;
            group[b] = reps.size();
            CInterval c = intersect(rep.box(), flat[b].box());
            rep.re = c.re();
            rep.im = c.im();
            rep.real = rep.real && flat[b].real;
            ++members;
          }
        if (members != e) throw PrecisionExhausted("fibre clusters do not match the resultant exponent");
        reps.push_back(rep);
      }
      if (!pairwise_disjoint(reps)) throw PrecisionExhausted("fibre clusters overlap");
    }
    if (static_cast<int>(reps.size()) != child_poly.degree())
      throw PrecisionExhausted("fibre root count does not match the child degree");

    std::uint32_t child;
    std::vector<std::uint32_t> where(reps.size());
    if (auto it = index_.find(child_poly); it != index_.end()) {
      child = it->second;
      for (std::size_t g = 0; g < reps.size(); ++g) {
        where[g] = locate(child, reps[g]);
        if (where[g] == UINT32_MAX) throw PrecisionExhausted("fibre box matches no unique conjugate");
      }
    } else {
      child = adopt(child_poly, reps);
      std::iota(where.begin(), where.end(), 0);
    }
    for (std::size_t t = 0; t < flat.size(); ++t) E[owner[t]].push_back({{child, where[group[t]]}, 1});
  } else if (k > 0) {
    // exact factors; multiplicities from derivative tests, certified by their fibre sums
    std::vector<std::uint32_t> children;
    for (const auto& [f, e] : ef.factors) children.push_back(orbit_for(f));
    for (std::size_t i = 0; i < d; ++i) {
      const CIPoly f = fibre_poly(i);
      unsigned total = 0;
      for (std::uint32_t c : children) {
        const auto& boxes = orbits_[c].conj->boxes;
        for (std::uint32_t j = 0; j < boxes.size(); ++j) {
          const unsigned mu = multiplicity_bound(f, point_of(boxes[j]));
          if (mu == 0) continue;
          E[i].push_back({{c, j}, mu});
          total += mu;
        }
      }
      if (total != static_cast<unsigned>(k)) throw PrecisionExhausted("fibre multiplicities not resolved");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (inf > 0) E[i].push_back({infinity(), inf});
    sort_edges(E[i]);
  }
  orbits_[id].edges = std::move(E);
}

std::vector<Successor> successors(const Correspondence& C, const ProjPoint& a) {
  return with_precision_retry(C, [&](OrbitGraph& g) {
    const NodeRef r = g.insert(a);
    std::vector<Successor> out;
    for (const auto& e : g.successors(r)) out.push_back({g.point(e.to), e.mult});
    return out;
  });
}

std::vector<Successor> predecessors(const Correspondence& C, const ProjPoint& b) {
  const Correspondence R = C.reversed();
  return successors(R, b);
}

}  // namespace corrh
