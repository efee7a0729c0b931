#include "corrheight/places.hpp"

#include <set>

namespace corrh {

using namespace arith;

std::string Place::to_string() const {
  if (archimedean) return "arch#" + std::to_string(root_index);
  return "p=" + prime.get_str() + "#seg" + std::to_string(segment);
}

std::vector<NewtonSegment> newton_polygon(const IntPoly& p, const Integer& q) {
  if (p.degree() < 1) throw ValidationError("Newton polygon of a constant");
  const int d = p.degree();
  std::size_t first = 0;
  while (sgn(p[first]) == 0) ++first;  // roots at 0 have infinite valuation
  if (mpz_divisible_p(p.lead().get_mpz_t(), q.get_mpz_t()) == 0 &&
      mpz_divisible_p(p[first].get_mpz_t(), q.get_mpz_t()) == 0)
    return {{Rational(0), d - static_cast<long>(first)}};

  std::vector<std::pair<long, long>> pts;  // (i, v_q(c_i))
  for (std::size_t i = first; i < p.size(); ++i)
    if (sgn(p[i]) != 0) pts.emplace_back(static_cast<long>(i), valuation(p[i], q));

  // lower hull, monotone chain
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b when it lies on or above segment a -> pt
      const long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<NewtonSegment> out;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    NewtonSegment s;
    s.length = hull[k].first - hull[k - 1].first;
    s.slope = Rational(hull[k].second - hull[k - 1].second, s.length);
    s.slope.canonicalize();
    out.push_back(s);
  }
  return out;
}

namespace {

std::vector<PlaceValue> archimedean_values(const AlgebraicNumber& a) {
  std::vector<PlaceValue> out;
  const auto boxes = a.conjugate_boxes();
  const long d = a.degree();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    if (!b.real && !b.im.positive()) continue;  // lower half-plane: folded into its partner
    PlaceValue v;
    v.place.root_index = i;
    v.place.pair = !b.real;
    v.weight = Rational(b.real ? 1 : 2, d);
    v.weight.canonicalize();
    v.logabs = log(b.box().abs());
    out.push_back(std::move(v));
  }
  return out;
}

void finite_values(const AlgebraicNumber& a, const Integer& q, std::vector<PlaceValue>& out) {
  const Interval lq = log(Interval(q));
  std::size_t k = 0;
  for (const auto& s : newton_polygon(a.minpoly(), q)) {
    PlaceValue v;
    v.place.archimedean = false;
    v.place.prime = q;
    v.place.segment = k++;
    v.weight = Rational(s.length, a.degree());
    v.weight.canonicalize();
    v.logabs = Interval(s.slope) * lq;
    out.push_back(std::move(v));
  }
}

std::set<Integer> prime_divisors(const Integer& z, const std::vector<Integer>& hints) {
  std::set<Integer> out;
  if (abs(z) <= 1) return out;
  for (auto& [p, e] : factor_integer(z, hints)) out.insert(p);
  return out;
}

}  // namespace

std::vector<PlaceValue> enumerate_place_values(const AlgebraicNumber& a, const std::vector<Integer>& hints) {
  if (a.is_rational() && a.rational_value() == 0) throw ValidationError("log|0|_v is undefined");
  std::vector<PlaceValue> out = archimedean_values(a);
  std::set<Integer> primes = prime_divisors(a.minpoly().lead(), hints);
  for (const auto& p : prime_divisors(a.minpoly()[0], hints)) primes.insert(p);
  for (const auto& q : primes) finite_values(a, q, out);
  return out;
}

std::vector<PlaceValue> enumerate_large_place_values(const AlgebraicNumber& a, const std::vector<Integer>& hints) {
  std::vector<PlaceValue> out = archimedean_values(a);
  for (const auto& q : prime_divisors(a.minpoly().lead(), hints)) finite_values(a, q, out);
  return out;
}

Interval product_formula_check(const AlgebraicNumber& a, const std::vector<Integer>& hints) {
  Interval s(0L);
  for (const auto& v : enumerate_place_values(a, hints)) s += Interval(v.weight) * v.logabs;
  return s;
}

HeightEstimate height_from_places(const ProjPoint& a, const std::vector<Integer>& hints) {
  if (a.is_infinity()) return {Interval(0L), true};
  if (a.finite().is_rational() && a.finite().rational_value() == 0) return {Interval(0L), true};
  Interval s(0L);
  for (const auto& v : enumerate_large_place_values(a.finite(), hints))
    s += Interval(v.weight) * max(v.logabs, Interval(0L));
  return {s, true};
}

}  // namespace corrh
