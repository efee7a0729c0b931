#include "corrheight/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace corrh {

using namespace arith;

PathEngine::PathEngine(Correspondence C, long precision, int degree_budget)
    : C_(std::make_shared<const Correspondence>(std::move(C))),
      cache_(std::make_shared<ExactCache>()),
      budget_(degree_budget) {
  rebuild(precision > 0 ? precision : default_precision());
}

void PathEngine::rebuild(long precision) {
  graph_ = std::make_unique<OrbitGraph>(*C_, precision, cache_);
  graph_->set_degree_budget(budget_);
}

void PathEngine::set_degree_budget(int d) {
  budget_ = d;
  graph_->set_degree_budget(d);
}

const KappaBound& PathEngine::kappa() {
  if (!kappa_) kappa_ = kappa_bound(*C_);
  return *kappa_;
}

std::uint64_t PathPrefix::weight() const {
  std::uint64_t w = 1;
  for (unsigned m : multiplicities) w *= m;
  return w;
}

std::string PathPrefix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += " -> ";
    s += nodes[i].to_string();
  }
  return s;
}

unsigned ByIndex::at(std::size_t step) const {
  if (indices.empty()) return 0;
  if (step < indices.size()) return indices[step];
  return cycle ? indices[step % indices.size()] : 0;
}

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void push(OrbitGraph& g, PathPrefix& P, NodeRef to, unsigned mult, unsigned slot) {
  P.nodes.push_back(g.point(to));
  P.heights.push_back(g.height(to.orbit));
  P.multiplicities.push_back(mult);
  P.branches.push_back(slot);
}

unsigned choose(const ExtensionStrategy& s, const PathPrefix& P, int dy) {
  if (auto* b = std::get_if<ByIndex>(&s)) return b->at(P.length());
  const auto& r = std::get<RandomWeighted>(s);
  return random_slot(r.seed, r.sample, P.branches, dy);
}

}  // namespace

std::size_t edge_for_slot(const std::vector<Edge>& edges, unsigned slot) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    acc += edges[i].mult;
    if (slot < acc) return i;
  }
  throw ValidationError("branch index " + std::to_string(slot) + " out of range (d_y = " + std::to_string(acc) + ")");
}

unsigned first_slot(const std::vector<Edge>& edges, std::size_t idx) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < idx; ++i) acc += edges[i].mult;
  return acc;
}

unsigned random_slot(std::uint64_t seed, std::uint64_t sample, const std::vector<unsigned>& history, int dy) {
  std::uint64_t k = splitmix(splitmix(seed) ^ splitmix(sample + 0x632be59bd9b4e019ULL));
  for (unsigned h : history) k = splitmix(k ^ (static_cast<std::uint64_t>(h) + 1));
  k = splitmix(k);
  return static_cast<unsigned>((static_cast<unsigned __int128>(k) * static_cast<unsigned>(dy)) >> 64);
}

PathPrefix single_node(PathEngine& E, const ProjPoint& a) {
  return E.run([&](OrbitGraph& g) {
    PathPrefix P;
    P.corr = E.shared();
    const NodeRef r = g.insert(a);
    P.nodes.push_back(g.point(r));
    P.heights.push_back(g.height(r.orbit));
    return P;
  });
}

PathPrefix shift(const PathPrefix& P) {
  if (P.nodes.size() < 2) throw ValidationError("cannot shift a path with a single node");
  PathPrefix S;
  S.corr = P.corr;
  S.nodes.assign(P.nodes.begin() + 1, P.nodes.end());
  S.heights.assign(P.heights.begin() + 1, P.heights.end());
  S.multiplicities.assign(P.multiplicities.begin() + 1, P.multiplicities.end());
  S.branches.assign(P.branches.begin() + 1, P.branches.end());
  return S;
}

std::vector<PathPrefix> extend(PathEngine& E, const PathPrefix& P, const ExtensionStrategy& s, int steps) {
  if (P.nodes.empty()) throw ValidationError("empty path");
  if (steps < 0) throw ValidationError("negative step count");
  const int dy = E.correspondence().dy;
  return E.run([&](OrbitGraph& g) {
    const NodeRef r0 = g.insert(P.nodes.back());
    if (const All* all = std::get_if<All>(&s)) {
      std::vector<std::pair<PathPrefix, NodeRef>> level{{P, r0}};
      for (int step = 0; step < steps; ++step) {
        std::vector<std::pair<PathPrefix, NodeRef>> next;
        for (auto& [Q, r] : level) {
          const auto edges = g.successors(r);
          for (std::size_t i = 0; i < edges.size(); ++i) {
            if (next.size() >= all->max_prefixes)
              throw BudgetExceeded("tree level exceeds " + std::to_string(all->max_prefixes) + " prefixes");
            PathPrefix R = Q;
            push(g, R, edges[i].to, edges[i].mult, first_slot(edges, i));
            next.emplace_back(std::move(R), edges[i].to);
          }
        }
        level = std::move(next);
      }
      std::vector<PathPrefix> out;
      for (auto& [Q, r] : level) out.push_back(std::move(Q));
      return out;
    }
    PathPrefix Q = P;
    NodeRef r = r0;
    for (int step = 0; step < steps; ++step) {
      const auto edges = g.successors(r);
      const unsigned slot = choose(s, Q, dy);
      const std::size_t i = edge_for_slot(edges, slot);
      push(g, Q, edges[i].to, edges[i].mult, slot);
      r = edges[i].to;
    }
    return std::vector<PathPrefix>{std::move(Q)};
  });
}

PathPrefix walk(PathEngine& E, const ProjPoint& a, const ExtensionStrategy& s, int steps) {
  if (std::holds_alternative<All>(s)) throw ValidationError("walk needs a single-path strategy");
  return extend(E, single_node(E, a), s, steps).front();
}

PathPrefix sample_path(PathEngine& E, const ProjPoint& a, int n, std::uint64_t seed, std::uint64_t sample) {
  return walk(E, a, RandomWeighted{seed, sample}, n);
}

std::optional<std::pair<int, int>> is_repetitive(const PathPrefix& P) {
  for (std::size_t m = 1; m < P.nodes.size(); ++m)
    for (std::size_t n = 0; n < m; ++n)
      if (equals(P.nodes[n], P.nodes[m])) return std::make_pair(static_cast<int>(n), static_cast<int>(m));
  return std::nullopt;
}

std::optional<std::pair<int, int>> is_periodic(const PathPrefix& P) {
  const std::size_t last = P.length();
  for (std::size_t n = 0; n < last; ++n)
    for (std::size_t p = 1; n + p < last; ++p) {
      bool ok = true;
      for (std::size_t i = n; i + p <= last && ok; ++i) ok = equals(P.nodes[i], P.nodes[i + p]);
      if (ok) return std::make_pair(static_cast<int>(n), static_cast<int>(n + p));
    }
  return std::nullopt;
}

long height_grid_bound(double H) {
  if (!(H >= 0)) return 0;
  return static_cast<long>(std::floor(std::exp(H) * (1 + 1e-12)));
}

std::vector<Rational> rationals_up_to(long N) {
  std::vector<Rational> out;
  if (N < 1) return out;
  out.emplace_back(0);
  for (long M = 1; M <= N; ++M) {
    // max(|p|, q) = M: either |p| = M with q <= M, or q = M with |p| < M
    std::vector<std::pair<long, long>> pq;
    for (long q = 1; q <= M; ++q)
      if (std::gcd(M, q) == 1) pq.emplace_back(M, q);
    for (long p = 1; p < M; ++p)
      if (std::gcd(p, M) == 1) pq.emplace_back(p, M);
    std::sort(pq.begin(), pq.end());
    for (auto [p, q] : pq) {
      out.emplace_back(p, q);
      out.emplace_back(-p, q);
    }
  }
  for (auto& r : out) r.canonicalize();
  return out;
}

std::vector<std::pair<ProjPoint, unsigned>> rational_successors(const Correspondence& C, const ProjPoint& a) {
  const UniPoly fiber = a.is_infinity() ? C.F.coeff_in_x(C.dx) : C.F.eval_x(a.finite().rational_value());
  std::vector<std::pair<ProjPoint, unsigned>> out;
  const int k = fiber.is_zero() ? 0 : fiber.degree();
  if (k > 0)
    for (auto& [f, e] : factor_over_rationals(fiber))
      if (f.degree() == 1) out.emplace_back(ProjPoint::rational(-f[0] / f[1]), e);
  if (C.dy > k) out.emplace_back(ProjPoint::infinity(), C.dy - k);
  return out;
}

std::vector<RationalStart> rational_path_search(const Correspondence& C, double H, int k, std::size_t max_witnesses) {
  auto shared = std::make_shared<const Correspondence>(C);
  // successors keyed by value; infinity under the key "inf"
  std::map<std::string, std::vector<std::pair<ProjPoint, unsigned>>> memo;
  auto succ = [&](const ProjPoint& p) -> const std::vector<std::pair<ProjPoint, unsigned>>& {
    const std::string key = p.to_string();
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, rational_successors(C, p)).first;
    return it->second;
  };
  // whether a rational path of the given length leaves p
  std::map<std::pair<std::string, int>, bool> alive;
  std::function<bool(const ProjPoint&, int)> extends = [&](const ProjPoint& p, int depth) -> bool {
    if (depth == 0) return true;
    const auto key = std::make_pair(p.to_string(), depth);
    if (auto it = alive.find(key); it != alive.end()) return it->second;
    bool ok = false;
    for (const auto& [q, m] : succ(p))
      if (extends(q, depth - 1)) {
        ok = true;
        break;
      }
    alive[key] = ok;
    return ok;
  };

  std::vector<RationalStart> out;
  for (const Rational& a : rationals_up_to(height_grid_bound(H))) {
    const ProjPoint pa = ProjPoint::rational(a);
    if (!extends(pa, k)) continue;
    RationalStart rs{a, {}, false};
    PathPrefix P;
    P.corr = shared;
    P.nodes.push_back(pa);
    P.heights.push_back(pa.height().value);
    std::function<void(PathPrefix&, int)> collect = [&](PathPrefix& Q, int depth) {
      if (depth == 0) {
        if (rs.witnesses.size() >= max_witnesses) {
          rs.truncated = true;
          return;
        }
        rs.witnesses.push_back(Q);
        return;
      }
      unsigned slot = 0;
      for (const auto& [q, m] : succ(Q.nodes.back())) {
        if (extends(q, depth - 1)) {
          Q.nodes.push_back(q);
          Q.heights.push_back(q.height().value);
          Q.multiplicities.push_back(m);
          Q.branches.push_back(slot);
          collect(Q, depth - 1);
          Q.nodes.pop_back();
          Q.heights.pop_back();
          Q.multiplicities.pop_back();
          Q.branches.pop_back();
        }
        slot += m;
      }
    };
    collect(P, k);
    out.push_back(std::move(rs));
  }
  return out;
}

RepetitiveSearch repetitive_start_search(PathEngine& E, double H, int k, int D, std::size_t node_budget) {
  RepetitiveSearch res;
  std::size_t visited = 0;
  auto known = [&](const ProjPoint& p) {
    for (const auto& c : res.points)
      if (equals(c.point, p)) return true;
    return false;
  };
  for (const Rational& a : rationals_up_to(height_grid_bound(H))) {
    if (visited >= node_budget) {
      res.truncated = true;
      res.notes.push_back("node budget of " + std::to_string(node_budget) + " reached");
      break;
    }
    try {
      auto found = E.run([&](OrbitGraph& g) {
        std::vector<ConstrainedPoint> local;
        std::vector<NodeRef> stack{g.insert(ProjPoint::rational(a))};
        std::vector<std::pair<unsigned, unsigned>> taken;  // (mult, slot)
        std::size_t count = 0;
        auto record = [&](std::size_t from, std::size_t to_pos) {
          for (std::size_t p = from + 1; p-- > 0;) {
            const NodeRef r = stack[p];
            const bool is_start = p == 0;
            if (!is_start) {
              if (g.is_infinity(r) || g.degree(r.orbit) > D) continue;
              if (g.height(r.orbit).mid() > BigFloat(H)) continue;
            }
            const ProjPoint pt = g.point(r);
            bool dup = known(pt);
            for (const auto& c : local) dup = dup || equals(c.point, pt);
            if (dup) continue;
            PathPrefix W;
            W.corr = E.shared();
            for (std::size_t i = p; i <= to_pos; ++i) {
              W.nodes.push_back(g.point(stack[i]));
              W.heights.push_back(g.height(stack[i].orbit));
              if (i > p) {
                W.multiplicities.push_back(taken[i - 1].first);
                W.branches.push_back(taken[i - 1].second);
              }
            }
            local.push_back({pt, std::move(W)});
          }
        };
        std::function<void(int)> dfs = [&](int depth) {
          if (depth == k || visited + count >= node_budget) return;
          const auto edges = g.successors(stack.back());
          for (std::size_t i = 0; i < edges.size(); ++i) {
            ++count;
            const NodeRef to = edges[i].to;
            stack.push_back(to);
            taken.emplace_back(edges[i].mult, first_slot(edges, i));
            auto hit = std::find(stack.begin(), stack.end() - 1, to);
            if (hit != stack.end() - 1)
              record(static_cast<std::size_t>(hit - stack.begin()), stack.size() - 1);
            else
              dfs(depth + 1);
            stack.pop_back();
            taken.pop_back();
          }
        };
        dfs(0);
        visited += count;
        return local;
      });
      for (auto& c : found) res.points.push_back(std::move(c));
    } catch (const BudgetExceeded& e) {
      res.truncated = true;
      res.notes.push_back("start " + a.get_str() + ": " + e.what());
    }
  }
  return res;
}

}  // namespace corrh
