#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "corrheight/orbit.hpp"

namespace corrh {

/// Owns a correspondence and a successor graph that persists across calls. When a
/// computation runs out of precision the graph is rebuilt at twice the precision and the
/// computation is rerun from scratch; exact fibre data survives the rebuild.
class PathEngine {
 public:
  explicit PathEngine(Correspondence C, long precision = 0, int degree_budget = 4096);
  PathEngine(const PathEngine&) = delete;
  PathEngine& operator=(const PathEngine&) = delete;

  const Correspondence& correspondence() const { return *C_; }
  std::shared_ptr<const Correspondence> shared() const { return C_; }
  long precision() const { return graph_->precision(); }
  int degree_budget() const { return budget_; }
  void set_degree_budget(int d);

  /// Cached: kappa_bound of the correspondence.
  const KappaBound& kappa();

  template <class Fn>
  auto run(Fn&& fn) {
    for (;;) {
      arith::PrecisionGuard guard(graph_->precision());
      try {
        return fn(*graph_);
      } catch (const PrecisionExhausted&) {
        if (graph_->precision() * 2 > arith::kMaxIsolationPrecision) throw;
        rebuild(graph_->precision() * 2);
      }
    }
  }

 private:
  void rebuild(long precision);

  std::shared_ptr<const Correspondence> C_;
  std::shared_ptr<ExactCache> cache_;
  std::unique_ptr<OrbitGraph> graph_;
  int budget_;
  std::optional<KappaBound> kappa_;
};

/// A finite path a_0 -> a_1 -> ... -> a_n with certified edges.
struct PathPrefix {
  std::shared_ptr<const Correspondence> corr;
  std::vector<ProjPoint> nodes;
  std::vector<unsigned> multiplicities;  // of edge i, from nodes[i] to nodes[i + 1]
  std::vector<unsigned> branches;        // slot taken at edge i, in [0, d_y)
  std::vector<Interval> heights;         // h(nodes[i])

  std::size_t length() const { return nodes.size() - 1; }
  /// Product of the edge multiplicities: the number of slot sequences giving this prefix.
  std::uint64_t weight() const;
  std::string to_string() const;
};

/// Branch choices by slot. Slots index the successor list expanded by multiplicity, so slot
/// i in [0, d_y) picks the successor whose multiplicity run covers i. Past the end of the
/// list the indices are cycled or padded with 0.
struct ByIndex {
  std::vector<unsigned> indices;
  bool cycle = false;
  unsigned at(std::size_t step) const;
};

/// Slot drawn uniformly from [0, d_y), so a successor is taken with probability mult / d_y.
/// The draw at each step depends only on (seed, sample, slots taken so far).
struct RandomWeighted {
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
};

/// Every distinct successor; the prefix weight carries the multiplicity.
struct All {
  std::size_t max_prefixes = 1u << 20;
};

using ExtensionStrategy = std::variant<ByIndex, RandomWeighted, All>;

/// Edge whose multiplicity run covers `slot`.
std::size_t edge_for_slot(const std::vector<Edge>& edges, unsigned slot);
/// First slot of edge `idx`.
unsigned first_slot(const std::vector<Edge>& edges, std::size_t idx);

/// Draw for RandomWeighted: the slot at the next step after `history`.
unsigned random_slot(std::uint64_t seed, std::uint64_t sample, const std::vector<unsigned>& history, int dy);

PathPrefix single_node(PathEngine& E, const ProjPoint& a);
PathPrefix shift(const PathPrefix& P);
std::vector<PathPrefix> extend(PathEngine& E, const PathPrefix& P, const ExtensionStrategy& s, int steps);
PathPrefix walk(PathEngine& E, const ProjPoint& a, const ExtensionStrategy& s, int steps);
PathPrefix sample_path(PathEngine& E, const ProjPoint& a, int n, std::uint64_t seed, std::uint64_t sample = 0);

/// Least (n, m), first by m then by n, with nodes n and m equal.
std::optional<std::pair<int, int>> is_repetitive(const PathPrefix& P);
/// Least (n, m), first by n then by m - n, such that nodes i and i + (m - n) agree for all
/// i >= n up to the end, with at least one whole repeated edge after m.
std::optional<std::pair<int, int>> is_periodic(const PathPrefix& P);

struct RationalStart {
  Rational start;
  std::vector<PathPrefix> witnesses;  // all-rational continuations of full depth
  bool truncated = false;             // witness list capped
};

/// Rationals of height at most H (max(|p|, q) <= e^H) admitting an all-rational path of
/// length k. Continuations may pass through infinity; infinity itself is not a start.
std::vector<RationalStart> rational_path_search(const Correspondence& C, double H, int k,
                                                std::size_t max_witnesses = 64);

/// Rational points among the successors of a (infinity included), with multiplicities.
std::vector<std::pair<ProjPoint, unsigned>> rational_successors(const Correspondence& C, const ProjPoint& a);

struct ConstrainedPoint {
  ProjPoint point;
  PathPrefix witness;  // starts at point, ends at the first revisit
};

struct RepetitiveSearch {
  std::vector<ConstrainedPoint> points;
  bool truncated = false;  // a budget was hit; points found so far are kept
  std::vector<std::string> notes;
};

/// Rational starts of height <= H in grid order, then depth-first over the successor tree
/// to depth k. A start, or a tree node of degree <= D and height <= H, is reported when some
/// path from it revisits a node within depth k.
RepetitiveSearch repetitive_start_search(PathEngine& E, double H, int k, int D, std::size_t node_budget = 200000);

/// Rationals with max(|p|, q) <= N, ordered by that maximum, then numerator, then sign.
std::vector<Rational> rationals_up_to(long N);
long height_grid_bound(double H);

}  // namespace corrh
