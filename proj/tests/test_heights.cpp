#include <cmath>

#include "corrheight/heights.hpp"
#include "doctest.h"

using namespace corrh;
using namespace corrh::arith;

namespace {

ProjPoint R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return ProjPoint::rational(r);
}

Interval log2i() { return interval_log2(); }

ProjPoint primitive_cube_root() { return parse_point("root(x^2 + x + 1, -0.5+0.866i)"); }

}  // namespace

TEST_CASE("canonical height on monomial and periodic paths") {
  PathEngine M(validate("y^2 - x^3"));
  CHECK(M.kappa().value == 0);
  for (int n : {0, 1, 3, 6, 8}) {
    auto r = canonical_height(M, R(2), ByIndex{{0}}, n);
    CHECK(r.estimate.value.overlaps(log2i()));
    CHECK(r.estimate.radius() < BigFloat(1e-20));
    CHECK(r.estimate.certified);
  }
  // positive branch: 2 -> 2^(3/2) -> 2^(9/4)
  auto p = canonical_height(M, R(2), ByIndex{{0}}, 2).path;
  CHECK(p.nodes[1].finite().minpoly() == IntPoly{-8, 0, 1});
  CHECK(p.nodes[2].finite().box().re.lo() > 0);

  auto u = canonical_height(M, primitive_cube_root(), RandomWeighted{3}, 6);
  CHECK(u.estimate.value.contains(BigFloat(0L)));
  CHECK(u.estimate.radius() < BigFloat(1e-4));
  CHECK(canonical_height(M, R(-1), ByIndex{{1, 0}, true}, 6).estimate.value.contains(BigFloat(0L)));

  PathEngine E(validate("y^2 - x^3 - 1"));
  auto cyc = canonical_height(E, R(0), ByIndex{{1, 0}, true}, 8);
  CHECK(cyc.estimate.value.contains(BigFloat(0L)));
  CHECK(cyc.estimate.certified);
  CHECK(is_periodic(cyc.path));

  PathEngine I(validate("y - x"));
  CHECK_THROWS_AS(canonical_height(I, R(3), ByIndex{}, 2), ValidationError);
}

TEST_CASE("shift scaling") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  // Q = 0 -> -1 -> 0 -> 1 -> sqrt 2 -> ..., P = sigma^2 Q
  auto P = canonical_height(E, R(0), ByIndex{{0}}, 8);
  auto Q = canonical_height(E, R(0), ByIndex{{1, 0, 0}}, 10);
  CHECK((Interval(Rational(4, 9)) * P.estimate.value).overlaps(Q.estimate.value));
  CHECK(P.estimate.value.lo().sign() > 0);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = shift_scaling_check(E, single_node(E, R(seed % 3)), 6, RandomWeighted{seed});
    CHECK(s.overlap);
  }
  PathEngine M(validate("y^2 - x^3"));
  auto s = shift_scaling_check(M, single_node(M, R(2)), 4);
  CHECK(s.overlap);
  CHECK(s.shifted.estimate.value.overlaps(Interval(Rational(3, 2)) * log2i()));
  PathEngine I(validate("y - x"));
  CHECK_THROWS_AS(shift_scaling_check(I, single_node(I, R(2)), 2), ValidationError);
}

TEST_CASE("telescoping soundness and nonnegativity") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  const Interval a2 = Interval(1L) / pow(Interval(Rational(3, 2)), 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    auto P = single_node(E, R(static_cast<long>(seed % 5) - 2));
    auto a = canonical_height(E, P, n, RandomWeighted{seed});
    auto b = canonical_height(E, P, n + 2, RandomWeighted{seed});
    CHECK(a.estimate.value.overlaps(b.estimate.value));
    CHECK(b.tail_radius.hi() <= (a2 * a.tail_radius).hi() + BigFloat::pow2(-100));
    CHECK(b.estimate.radius() <= (a2 * Interval(a.estimate.radius())).hi() + BigFloat::pow2(-60));
    CHECK_FALSE(a.estimate.value.negative());
    CHECK_FALSE(b.estimate.value.negative());
  }
}

TEST_CASE("hmin and hmax") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto r = hmin_hmax(E, R(0), 0.1);
  CHECK(r.complete);
  CHECK(r.hmin.value.contains(BigFloat(0L)));
  CHECK(r.hmin.value.hi() <= BigFloat(0.1));
  CHECK(r.hmin.value.lo() <= r.hmax.value.hi());
  // the path through 1, sqrt 2, ... is one candidate for the maximum
  auto P = canonical_height(E, R(0), ByIndex{{0}}, 8);
  CHECK(r.hmax.value.hi() >= P.estimate.value.lo());

  PathEngine S(validate("y - x^2"));
  auto s = hmin_hmax(S, R(2), 1e-6);
  CHECK(s.complete);
  CHECK(s.hmin.value.overlaps(log2i()));
  CHECK(s.hmax.value.overlaps(log2i()));

  PathEngine M(validate("y^2 - x^3"));
  auto m = hmin_hmax(M, R(1), 1e-6);
  CHECK(m.complete);
  CHECK(m.hmin.value.contains(BigFloat(0L)));
  CHECK(m.hmax.value.hi() < BigFloat(1e-6));

  PathEngine I(validate("y - x"));
  CHECK_THROWS_AS(hmin_hmax(I, R(2), 0.1), ValidationError);
}

TEST_CASE("expected heights") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  const int n = 6;
  // exhaustive weighted tree average
  auto tree = extend(E, single_node(E, R(-1)), All{}, n);
  double exact = 0;
  const double scale = std::pow(1.5, -n);
  for (const auto& P : tree) exact += static_cast<double>(P.weight()) / std::pow(2, n) * scale * P.heights[n].mid().to_double();
  auto mc = expected_height(E, R(-1), 4000, n, 17);
  CHECK(mc.std_error > 0);
  CHECK(std::abs(mc.mean - exact) <= 3 * mc.std_error);
  // deterministic per seed
  CHECK(expected_height(E, R(-1), 500, n, 5).mean == expected_height(E, R(-1), 500, n, 5).mean);

  PathEngine M(validate("y^2 - x^3"));
  auto u = expected_height(M, primitive_cube_root(), 200, 5, 1);
  CHECK(std::abs(u.mean) < 1e-20);
  CHECK(u.std_error < 1e-20);

  PathEngine S(validate("y - x^2"));
  auto s = expected_height(S, R(2), 50, 6, 1);
  CHECK(s.mean == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(s.std_error < 1e-12);
}

TEST_CASE("expected height relation") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto r = expected_height_relation_check(E, R(0), 3000, 6, 2);
  CHECK(r.pass);
  CHECK(r.successors.size() == 2);

  PathEngine M(validate("y^2 - x^3"));
  auto m = expected_height_relation_check(M, R(2), 100, 4, 3);
  CHECK(m.lhs == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-9));
  CHECK(m.rhs == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-9));
  CHECK(m.pass);

  auto z = expected_height_relation_check(M, R(1), 100, 4, 3);
  CHECK(std::abs(z.lhs) < 1e-20);
  CHECK(std::abs(z.rhs) < 1e-20);
}

TEST_CASE("local heights and the local-global sum") {
  PathEngine M(validate("y^2 - x^3"));
  auto P = single_node(M, R(2));
  for (int n : {1, 4, 7}) {
    auto arch = local_canonical_height(M, P, RationalPlace{}, n);
    CHECK(arch.value.overlaps(log2i()));
    CHECK(arch.stabilized);
    auto five = local_canonical_height(M, P, RationalPlace{false, 5}, n);
    CHECK(five.value.contains(BigFloat(0L)));
    CHECK(five.value.hi() < BigFloat(1e-30));
  }
  auto lg = local_global_check(M, P, 6, 1e-6);
  CHECK(lg.pass);
  CHECK(lg.sum.overlaps(log2i()));

  // 1/2 has its height at the prime 2
  auto half = local_global_check(M, single_node(M, R(1, 2)), 3, 1e-9);
  CHECK(half.pass);
  REQUIRE(half.locals.size() == 2);
  CHECK(half.locals[1].place.to_string() == "p=2");
  CHECK(half.locals[1].value.overlaps(log2i()));

  PathEngine E(validate("y^2 - x^3 - 1"));
  auto cyc = walk(E, R(0), ByIndex{{1, 0}, true}, 6);
  for (const RationalPlace& v : {RationalPlace{}, RationalPlace{false, 2}, RationalPlace{false, 3}})
    CHECK(local_canonical_height(E, cyc, v, 6).value.contains(BigFloat(0L)));
  CHECK(local_global_check(E, cyc, 6, 1e-9).pass);

  auto deep = local_global_check(E, single_node(E, R(0)), 8, 1e-3);
  CHECK(deep.pass);
  CHECK(deep.difference.mag() < BigFloat(1e-3));
}

TEST_CASE("tree continuity") {
  PathEngine E(validate("y^2 - x^3 - 1"));
  auto P = walk(E, R(0), ByIndex{{0}}, 1);
  auto Q = walk(E, R(0), ByIndex{{1}}, 1);
  auto c = tree_continuity_check(E, P, Q, 0, 5);
  CHECK(c.holds);
  auto same = tree_continuity_check(E, P, P, 1, 5);
  CHECK(same.holds);
  auto base = walk(E, R(2), RandomWeighted{4}, 6);
  auto A = extend(E, base, ByIndex{{0, 0, 0, 0, 0, 0, 0}}, 1).front();
  auto B = extend(E, base, ByIndex{{0, 0, 0, 0, 0, 0, 1}}, 1).front();
  auto d = tree_continuity_check(E, A, B, 6, 10);
  CHECK(d.holds);
  CHECK_THROWS_AS(tree_continuity_check(E, P, Q, 1, 5), ValidationError);
}

TEST_CASE("specialization") {
  auto fam = FamilyCorrespondence::parse("y^2 - x^3 - t");
  std::vector<Rational> ts;
  for (int k = 1; k <= 6; ++k) ts.push_back(Rational(1L << k));
  auto rep = specialization_experiment(fam, R(0), ByIndex{{0}}, ts, 6);
  CHECK(rep.alpha == Rational(3, 2));
  REQUIRE(rep.rows.size() == 6);
  for (const auto& r : rep.rows) {
    CHECK_FALSE(r.skipped);
    CHECK(r.ratio > 0);
    CHECK(r.start_gap <= rep.c1 * r.h_t + rep.c2 + 1e-12);
  }

  // t = 0 is the monomial curve; a cube root of unity stays at height 0
  auto zero = specialization_experiment(fam, primitive_cube_root(), ByIndex{{0}}, {Rational(0)}, 5);
  CHECK_FALSE(zero.rows[0].skipped);
  CHECK(zero.rows[0].hhat.value.contains(BigFloat(0L)));
  CHECK(std::isnan(zero.rows[0].ratio));

  // t absent: ratio falls like 1 / h(t)
  auto flat = FamilyCorrespondence::parse("y^2 - x^3 - 1");
  auto fr = specialization_experiment(flat, R(0), ByIndex{{0}}, {Rational(10), Rational(1000), Rational(100000)}, 6);
  CHECK(fr.rows[0].ratio > fr.rows[1].ratio);
  CHECK(fr.rows[1].ratio > fr.rows[2].ratio);

  // t = 0 drops d_y
  auto deg = FamilyCorrespondence::parse("t*y^2 + y - x^3 - 1");
  auto dr = specialization_experiment(deg, R(0), ByIndex{{0}}, {Rational(1), Rational(0), Rational(2)}, 3);
  CHECK_FALSE(dr.rows[0].skipped);
  CHECK(dr.rows[1].skipped);
  CHECK_FALSE(dr.rows[2].skipped);
}
