#include <map>
#include <random>

#include "corrheight/factor.hpp"
#include "corrheight/places.hpp"
#include "doctest.h"

using namespace corrh;
using namespace corrh::arith;

namespace {

UniPoly Q(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

const PlaceValue* find(const std::vector<PlaceValue>& v, bool arch, long prime = 0) {
  for (const auto& p : v)
    if (p.place.archimedean == arch && (arch || p.place.prime == prime)) return &p;
  return nullptr;
}

Interval log_of(long n) { return log(Interval(n)); }

}  // namespace

TEST_CASE("Newton polygons") {
  auto a = newton_polygon(IntPoly{-2, 0, 1}, 2);
  REQUIRE(a.size() == 1);
  CHECK(a[0].slope == Rational(-1, 2));
  CHECK(a[0].length == 2);
  auto b = newton_polygon(IntPoly{-12, 0, 1}, 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0].slope == -1);
  CHECK(b[0].length == 2);
  // root 3/2 has v_3 = 1, so the slope is -1 under the sign convention pinned by a = 2
  auto c = newton_polygon(IntPoly{-3, 2}, 3);
  REQUIRE(c.size() == 1);
  CHECK(c[0].slope == -1);
  CHECK(newton_polygon(IntPoly{-2, 1}, 2)[0].slope == -1);
  // two slopes: (x - 2)(x - 1/2) scaled: 2x^2 - 5x + 2
  auto d = newton_polygon(IntPoly{2, -5, 2}, 2);
  REQUIRE(d.size() == 2);
  CHECK(d[0].slope == -1);
  CHECK(d[1].slope == 1);
  // fast path
  auto e = newton_polygon(IntPoly{1, 1, 1}, 7);
  REQUIRE(e.size() == 1);
  CHECK(e[0].slope == 0);
}

TEST_CASE("place values of 2, sqrt 2 and 3/2") {
  PrecisionGuard g(128);
  auto two = enumerate_place_values(AlgebraicNumber::from_rational(2));
  REQUIRE(two.size() == 2);
  CHECK(two[0].place.to_string() == "arch#0");
  CHECK(two[0].weight == 1);
  CHECK(two[0].logabs.overlaps(log_of(2)));
  CHECK(two[1].place.to_string() == "p=2#seg0");
  CHECK(two[1].logabs.overlaps(-log_of(2)));

  auto s2 = enumerate_place_values(AlgebraicNumber::roots_of(Q({-2, 0, 1}))[1]);
  REQUIRE(s2.size() == 3);
  CHECK(s2[0].weight == Rational(1, 2));
  CHECK(s2[1].weight == Rational(1, 2));
  CHECK(s2[0].logabs.overlaps(log_of(2) / Interval(2L)));
  CHECK(s2[2].weight == 1);
  CHECK(s2[2].logabs.overlaps(-log_of(2) / Interval(2L)));

  auto th = enumerate_place_values(AlgebraicNumber::from_rational(Rational(3, 2)));
  REQUIRE(th.size() == 3);
  CHECK(find(th, true)->logabs.overlaps(log_of(3) - log_of(2)));
  CHECK(find(th, false, 3)->logabs.overlaps(-log_of(3)));
  CHECK(find(th, false, 2)->logabs.overlaps(log_of(2)));
  CHECK_THROWS_AS(enumerate_place_values(AlgebraicNumber::from_rational(0)), ValidationError);
}

TEST_CASE("height from places") {
  CHECK(height_from_places(ProjPoint::rational(2)).value.overlaps(log_of(2)));
  CHECK(height_from_places(ProjPoint::rational(Rational(1, 3))).value.overlaps(log_of(3)));
  CHECK(height_from_places(AlgebraicNumber::roots_of(Q({-2, 0, 1}))[0]).value.overlaps(log_of(2) / Interval(2L)));
  CHECK(height_from_places(ProjPoint::infinity()).value.contains(BigFloat(0L)));
  // golden ratio: archimedean places only
  auto phi = AlgebraicNumber::roots_of(Q({-1, -1, 1}))[1];
  CHECK(product_formula_check(phi).contains(BigFloat(0L)));
  CHECK(enumerate_place_values(phi).size() == 2);
}

TEST_CASE("coherence, weights, product formula and height agreement on random numbers") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-30, 30);
  std::uniform_int_distribution<int> deg(1, 6);
  int tested = 0;
  while (tested < 100) {
    const int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& v : c) v = coef(rng);
    if (c.back() == 0 || c[0] == 0) continue;
    auto fs = factor_over_rationals(UniPoly(c));
    IntPoly m = primitive_integer(fs.back().first);
    auto roots = AlgebraicNumber::roots_of(to_uni(m));
    const AlgebraicNumber& a = roots[tested % roots.size()];
    ++tested;

    auto vals = enumerate_place_values(a);
    Rational arch = 0;
    std::map<Integer, Rational> fin;
    for (const auto& v : vals) (v.place.archimedean ? arch : fin[v.place.prime]) += v.weight;
    CHECK(arch == 1);
    for (auto& [p, w] : fin) {
      CHECK(w == 1);
      long len = 0;
      for (auto& s : newton_polygon(a.minpoly(), p)) len += s.length;
      CHECK(len == a.degree());
    }
    Interval pf = product_formula_check(a);
    CHECK(pf.contains(BigFloat(0L)));
    CHECK(pf.rad() <= BigFloat(1e-9));
    CHECK(height_from_places(a).value.overlaps(a.height().value));
  }
}
