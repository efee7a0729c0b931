#include <chrono>
#include <cmath>

#include "corrheight/pathspace.hpp"
#include "doctest.h"

using namespace corrh;
using namespace corrh::arith;

namespace {

ProjPoint R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return ProjPoint::rational(r);
}

bool is_rat(const ProjPoint& p, const Rational& r) {
  return !p.is_infinity() && p.finite().is_rational() && p.finite().rational_value() == r;
}

PathPrefix by_index(PathEngine& E, long start, std::vector<unsigned> idx) {
  const int n = static_cast<int>(idx.size());
  return walk(E, R(start), ByIndex{std::move(idx)}, n);
}

}  // namespace

TEST_CASE("shift and extend on y^2 = x^3 + 1") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto P = by_index(E, 0, {0, 0});
  REQUIRE(P.nodes.size() == 3);
  CHECK(is_rat(P.nodes[1], 1));
  CHECK(P.nodes[2].finite().minpoly() == IntPoly{-2, 0, 1});
  CHECK(P.nodes[2].finite().box().re.lo() > 0);
  auto S = shift(P);
  CHECK(S.nodes.size() == 2);
  CHECK(is_rat(S.nodes[0], 1));
  CHECK(shift(shift(P)).nodes.size() == 1);
  CHECK_THROWS_AS(shift(shift(shift(P))), ValidationError);

  auto lvl = extend(E, single_node(E, R(0)), All{}, 1);
  REQUIRE(lvl.size() == 2);
  CHECK(is_rat(lvl[0].nodes[1], 1));
  CHECK(is_rat(lvl[1].nodes[1], -1));
  auto m1 = extend(E, single_node(E, R(-1)), All{}, 1);
  REQUIRE(m1.size() == 1);
  CHECK(is_rat(m1[0].nodes[1], 0));
  CHECK(m1[0].weight() == 2);

  auto deep = walk(E, R(0), ByIndex{{0, 0, 0, 0, 0, 0, 0, 0}}, 8);
  CHECK(deep.nodes.size() == 9);
  // prefix extension agrees with direct walking
  auto again = extend(E, by_index(E, 0, {0, 0, 0}), ByIndex{{0, 0, 0, 0, 0, 0, 0, 0}}, 5).front();
  REQUIRE(again.nodes.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(equals(again.nodes[i], deep.nodes[i]));
  CHECK_THROWS_AS(walk(E, R(0), ByIndex{{2}}, 1), ValidationError);
}

TEST_CASE("commutation of shift with extension") {
  PathEngine E(validate("y^2 - x^3 + x - 1"));
  for (long a : {0L, 2L, -3L}) {
    for (unsigned i = 0; i < 2; ++i) {
      auto P = walk(E, R(a), ByIndex{{i}}, 1);
      auto succ = successors(E.correspondence(), R(a));
      unsigned acc = 0;
      std::size_t e = 0;
      while (i >= acc + succ[e].multiplicity) acc += succ[e++].multiplicity;
      CHECK(equals(shift(P).nodes[0], succ[e].point));
    }
  }
}

TEST_CASE("tree size with multiplicity") {
  for (const char* text : {"y^2 - x^3 - 1", "y^2 - x^3 + x - 1", "x*y^2 + y - x^3 - 1"}) {
    PathEngine E(validate(text));
    for (long a : {-1L, 0L, 2L}) {
      auto lvl = extend(E, single_node(E, R(a)), All{}, 4);
      std::uint64_t total = 0;
      for (const auto& P : lvl) total += P.weight();
      CHECK(total == static_cast<std::uint64_t>(std::pow(E.correspondence().dy, 4)));
    }
    auto inf = extend(E, single_node(E, ProjPoint::infinity()), All{}, 3);
    std::uint64_t total = 0;
    for (const auto& P : inf) total += P.weight();
    CHECK(total == static_cast<std::uint64_t>(std::pow(E.correspondence().dy, 3)));
  }
}

TEST_CASE("repetitive and periodic prefixes") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto q = by_index(E, 0, {1, 0});
  REQUIRE(is_repetitive(q));
  CHECK(*is_repetitive(q) == std::make_pair(0, 2));
  CHECK_FALSE(is_repetitive(by_index(E, 0, {0, 0})));
  auto cyc = by_index(E, 0, {1, 0, 1, 0});
  REQUIRE(is_periodic(cyc));
  CHECK(*is_periodic(cyc) == std::make_pair(0, 2));
  CHECK_FALSE(is_periodic(by_index(E, 0, {1, 0, 0})));
  CHECK_FALSE(is_periodic(single_node(E, R(5))));
  // least witness stays put when the prefix grows
  auto longer = extend(E, q, ByIndex{{0, 0, 0, 0}}, 2).front();
  CHECK(*is_repetitive(longer) == std::make_pair(0, 2));

  PathEngine D(validate("y^2 - x^3 + x - 1"));
  auto one = by_index(D, 1, {0});
  REQUIRE(is_rat(one.nodes[1], 1));
  CHECK(*is_repetitive(one) == std::make_pair(0, 1));
}

TEST_CASE("sampling") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(is_rat(sample_path(E, R(-1), 1, s).nodes[1], 0));
  int ones = 0;
  const int N = 10000;
  for (int s = 0; s < N; ++s) ones += is_rat(sample_path(E, R(0), 1, 12345, s).nodes[1], 1);
  CHECK(std::abs(ones - N / 2) <= 3 * std::sqrt(N * 0.25));
  // same seed, same path
  auto a = sample_path(E, R(0), 6, 77, 3), b = sample_path(E, R(0), 6, 77, 3);
  CHECK(a.branches == b.branches);

  PathEngine D(validate("y^2 - x^3 + x - 1"));
  auto inf = sample_path(D, ProjPoint::infinity(), 3, 5);
  REQUIRE(inf.nodes.size() == 4);
  for (const auto& p : inf.nodes) CHECK(p.is_infinity());
}

TEST_CASE("branch frequencies follow multiplicities") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  const int N = 10000;
  std::vector<int> hits(2, 0);
  for (int s = 0; s < N; ++s) hits[sample_path(E, R(2), 1, 9, s).branches[0]]++;
  for (int h : hits) CHECK(std::abs(h - N / 2) <= 3 * std::sqrt(N * 0.25));
  int twos = 0;
  for (int s = 0; s < N; ++s) twos += sample_path(E, R(-1), 2, 4, s).nodes[1].is_infinity() ? 0 : 1;
  CHECK(twos == N);
}

TEST_CASE("rational path search") {
  auto C = validate("y^2 - x^3 + x - 1");
  auto t0 = std::chrono::steady_clock::now();
  auto res = rational_path_search(C, std::log(100.0), 5);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60);
  std::vector<Rational> starts;
  for (const auto& r : res) starts.push_back(r.start);
  CHECK(starts == std::vector<Rational>{0, 1, -1});
  for (const auto& r : res) {
    CHECK_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) CHECK(w.length() == 5);
  }

  auto one = rational_path_search(C, std::log(100.0), 1);
  std::vector<Rational> s1;
  for (const auto& r : one) s1.push_back(r.start);
  for (long v : {3L, 5L, 56L, -1L, 0L, 1L})
    CHECK(std::find(s1.begin(), s1.end(), Rational(v)) != s1.end());

  auto id = rational_path_search(validate("y - x"), std::log(10.0), 10);
  CHECK(id.size() == rationals_up_to(10).size());
}

TEST_CASE("rational grid") {
  auto r = rationals_up_to(2);
  // 0, 1, -1, 1/2, -1/2, 2, -2
  REQUIRE(r.size() == 7);
  CHECK(r[0] == 0);
  CHECK(r[3] == Rational(1, 2));
  CHECK(r[5] == 2);
  CHECK(height_grid_bound(std::log(100.0)) == 100);
  CHECK(height_grid_bound(4.6) == 99);
}

TEST_CASE("repetitive start search") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto res = repetitive_start_search(E, std::log(10.0), 4, 4);
  auto has = [&](long v) {
    for (const auto& c : res.points)
      if (is_rat(c.point, v)) return true;
    return false;
  };
  CHECK(has(0));
  CHECK(has(-1));
  for (const auto& c : res.points) CHECK(is_repetitive(c.witness));

  PathEngine D(validate("y^2 - x^3 + x - 1"));
  auto r2 = repetitive_start_search(D, std::log(10.0), 4, 4);
  bool found = false;
  for (const auto& c : r2.points) found = found || is_rat(c.point, 1);
  CHECK(found);

  PathEngine S(validate("y - x + 1"));
  CHECK(repetitive_start_search(S, std::log(10.0), 6, 4).points.empty());
}
