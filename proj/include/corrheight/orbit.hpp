#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "corrheight/correspondence.hpp"
#include "corrheight/factor.hpp"

namespace corrh {

/// A vertex of the successor graph: one conjugate of one Galois orbit.
struct NodeRef {
  std::uint32_t orbit = 0;
  std::uint32_t conj = 0;
  friend bool operator==(const NodeRef& a, const NodeRef& b) { return a.orbit == b.orbit && a.conj == b.conj; }
  friend bool operator!=(const NodeRef& a, const NodeRef& b) { return !(a == b); }
  friend bool operator<(const NodeRef& a, const NodeRef& b) {
    return a.orbit != b.orbit ? a.orbit < b.orbit : a.conj < b.conj;
  }
};

struct Edge {
  NodeRef to;
  unsigned mult = 1;
};

/// Precision-independent facts about the fibre over an orbit, shared across precisions.
struct ExactFiber {
  int fiber_degree = 0;  // deg_y F(theta, y)
  // Irreducible factors of Res_x(minpoly, F) with exponents. With `single`, the resultant is
  // c * m^e for the one listed m and F(theta, y) is irreducible over Q(theta).
  std::vector<std::pair<IntPoly, unsigned>> factors;
  bool single = false;
};

struct ExactCache {
  std::map<IntPoly, ExactFiber, bool (*)(const IntPoly&, const IntPoly&)> fibers{arith::poly_less};
};

/// Successor graph of a correspondence at a fixed working precision. Orbits are created on
/// demand; each orbit stores certified boxes for all conjugates, so its height is a Mahler
/// measure and its children inherit boxes without isolating large polynomials.
/// Certification failures raise PrecisionExhausted; callers retry with a fresh graph at a
/// higher precision (see with_precision_retry).
class OrbitGraph {
 public:
  OrbitGraph(const Correspondence& C, long precision, std::shared_ptr<ExactCache> cache = nullptr);

  const Correspondence& correspondence() const { return C_; }
  long precision() const { return precision_; }

  NodeRef insert(const ProjPoint& p);
  static NodeRef infinity() { return {0, 0}; }
  static bool is_infinity(NodeRef r) { return r.orbit == 0; }

  /// Canonical order: real part descending, then imaginary part descending, infinity last.
  std::vector<Edge> successors(NodeRef r);
  ProjPoint point(NodeRef r);
  Interval height(std::uint32_t orbit);
  int degree(std::uint32_t orbit) const;
  const IntPoly& minpoly(std::uint32_t orbit) const;
  const ComplexBox& box(NodeRef r) const;
  const std::vector<ComplexBox>& boxes(std::uint32_t orbit) const { return orbits_[orbit].conj->boxes; }
  std::size_t orbit_count() const { return orbits_.size(); }

  /// Orbits above this degree raise BudgetExceeded.
  void set_degree_budget(int d) { degree_budget_ = d; }
  int degree_budget() const { return degree_budget_; }
  /// Primes from the coefficients of F and of inserted rational points; these are the usual
  /// suspects in leading coefficients of node minimal polynomials.
  const std::vector<Integer>& prime_hints() const { return hints_; }

 private:
  struct Orbit {
    IntPoly minpoly;  // empty for infinity
    std::shared_ptr<ConjugateSet> conj;
    bool expanded = false;
    std::vector<std::vector<Edge>> edges;
    std::optional<Interval> height;
  };

  std::uint32_t orbit_for(const IntPoly& m);
  std::uint32_t adopt(const IntPoly& m, std::vector<ComplexBox> boxes);
  std::uint32_t locate(std::uint32_t orbit, const ComplexBox& b) const;
  void expand(std::uint32_t id);
  void expand_exact_fiber(std::uint32_t id, const UniPoly& fiber);
  void expand_algebraic(std::uint32_t id);
  const ExactFiber& exact_fiber(std::uint32_t id);
  void sort_edges(std::vector<Edge>& edges) const;
  void add_hints(const Integer& z);

  const Correspondence& C_;
  long precision_;
  std::shared_ptr<ExactCache> cache_;
  std::vector<Orbit> orbits_;
  std::map<IntPoly, std::uint32_t, bool (*)(const IntPoly&, const IntPoly&)> index_{arith::poly_less};
  int degree_budget_ = 4096;
  std::vector<Integer> hints_;
};

/// Default starting precision: CORRHEIGHT_PRECISION when set, else 128 bits.
long default_precision();

/// Run fn(graph) on fresh graphs of doubling precision until it completes without
/// PrecisionExhausted. Exact fibre data is reused across attempts.
template <class Fn>
auto with_precision_retry(const Correspondence& C, Fn&& fn, long start = 0, int degree_budget = 4096) {
  auto cache = std::make_shared<ExactCache>();
  for (long p = start > 0 ? start : default_precision();; p *= 2) {
    OrbitGraph g(C, p, cache);
    g.set_degree_budget(degree_budget);
    try {
      return fn(g);
    } catch (const PrecisionExhausted&) {
      if (p * 2 > arith::kMaxIsolationPrecision) throw;
    }
  }
}

}  // namespace corrh
