#pragma once

#include <string>
#include <vector>

#include "corrheight/parse.hpp"
#include "corrheight/pathspace.hpp"
#include "corrheight/places.hpp"

namespace corrh {

struct CanonicalHeightResult {
  HeightEstimate estimate;
  int depth = 0;
  KappaBound kappa;
  Rational alpha;
  PathPrefix path;  // at least depth + 1 nodes
  Interval tail_radius;     // alpha^-n (alpha / (alpha - 1)) kappa
  Interval numeric_radius;  // alpha^-n rad h(node_n)
};

/// alpha / (alpha - 1) * kappa: how far alpha^-n h(node_n) can sit from the limit, times alpha^n.
Interval kappa_prime(const Rational& alpha, const KappaBound& k);

/// alpha^-n h(node_n) with radius alpha^-n (kappa' + rad h(node_n)). P is extended by the
/// strategy when it is shorter than n. Certified exactly when kappa is.
CanonicalHeightResult canonical_height(PathEngine& E, const PathPrefix& P, int n,
                                       const ExtensionStrategy& s = ByIndex{});
CanonicalHeightResult canonical_height(PathEngine& E, const ProjPoint& a, const ExtensionStrategy& s, int n);

struct ShiftScaling {
  CanonicalHeightResult base;     // hhat(P) at depth n
  CanonicalHeightResult shifted;  // hhat(sigma P) at depth n
  bool overlap = false;           // alpha * base meets shifted
};
ShiftScaling shift_scaling_check(PathEngine& E, const PathPrefix& P, int n, const ExtensionStrategy& s = ByIndex{});

struct HminHmax {
  HeightEstimate hmin, hmax;
  bool complete = false;  // both within tolerance; otherwise best bounds so far
  std::size_t expanded = 0;
  std::string note;
};

/// Best-first branch and bound over the successor tree of a. A node v at depth n confines
/// every path through it to alpha^-n (h(v) +- kappa'), clamped at 0.
HminHmax hmin_hmax(PathEngine& E, const ProjPoint& a, double tolerance, std::size_t max_expansions = 50000);

struct ExpectedHeight {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
  int depth = 0;
};

/// Monte Carlo mean of alpha^-n h(node_n) over paths drawn with RandomWeighted{seed, s},
/// s = 0..N-1. Sequential, so the result depends on the seed alone.
ExpectedHeight expected_height(PathEngine& E, const ProjPoint& a, std::size_t N, int n, std::uint64_t seed);

struct ExpectedRelation {
  ExpectedHeight at_a;
  std::vector<std::pair<ProjPoint, ExpectedHeight>> successors;
  std::vector<unsigned> multiplicities;
  double lhs = 0, lhs_se = 0;  // sum of mult / d_y * E hhat(b)
  double rhs = 0, rhs_se = 0;  // alpha * E hhat(a)
  double z = 0;                // |lhs - rhs| in combined standard errors
  bool pass = false;
};

/// Successor side sampled at depth n - 1 so both sides end on generation-n nodes of the tree
/// from a; each successor uses its own seed stream.
ExpectedRelation expected_height_relation_check(PathEngine& E, const ProjPoint& a, std::size_t N, int n,
                                                std::uint64_t seed);

/// A place of Q: archimedean, or a prime.
struct RationalPlace {
  bool archimedean = true;
  Integer prime;
  std::string to_string() const;
};

struct LocalHeightValue {
  RationalPlace place;
  Interval value;
  int depth = 0;
  bool stabilized = false;  // depths n - 1 and n within tolerance
};

/// alpha^-n times the sum over places w above v of weight_w log+ |node_n|_w. Infinity
/// counts as 0, matching h(infinity) = 0.
LocalHeightValue local_canonical_height(PathEngine& E, const PathPrefix& P, const RationalPlace& v, int n,
                                        double tolerance = 1e-3, const ExtensionStrategy& s = ByIndex{});

struct LocalGlobal {
  std::vector<LocalHeightValue> locals;  // every place where node_n can be large
  Interval sum;
  CanonicalHeightResult global;
  Interval difference;
  bool pass = false;
};
LocalGlobal local_global_check(PathEngine& E, const PathPrefix& P, int n, double tolerance,
                               const ExtensionStrategy& s = ByIndex{});

struct Continuity {
  CanonicalHeightResult p, q;
  int agree = 0;  // shared nodes 0..agree
  Interval bound;  // 2 alpha^-n kappa'
  BigFloat worst;  // sup |x - y| over the two enclosures
  bool holds = false;
};

/// P and Q must share their first n + 1 nodes; heights are taken at depth m > n.
Continuity tree_continuity_check(PathEngine& E, const PathPrefix& P, const PathPrefix& Q, int n, int m,
                                 const ExtensionStrategy& s = ByIndex{});

struct FamilyCorrespondence {
  arith::MPoly F;
  std::string text;
  static FamilyCorrespondence parse(std::string_view text);
  Correspondence at(const Rational& t) const;
};

struct SpecializationRow {
  Rational t;
  bool skipped = false;
  std::string note;
  double h_t = 0;
  HeightEstimate hhat;
  double ratio = 0;          // hhat / h(t); NaN when h(t) = 0
  double sqrt_residual = 0;  // (hhat - c h(t)) / sqrt h(t), c = last ratio
  double start_gap = 0;      // |hhat - h(start)|
};

struct SpecializationReport {
  std::vector<SpecializationRow> rows;
  Rational alpha;
  double c1 = 0, c2 = 0;  // start_gap <= c1 h(t) + c2 on every row
};

SpecializationReport specialization_experiment(const FamilyCorrespondence& fam, const ProjPoint& start,
                                               const ByIndex& branch, const std::vector<Rational>& ts, int depth);

}  // namespace corrh
