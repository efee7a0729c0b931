// corrheight: command-line front end. One record per result, JSON lines by default.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "corrheight/heights.hpp"
#include "json.hpp"

using namespace corrh;
using namespace corrh::arith;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "corrheight/1";

struct Config {
  std::string command;
  std::string corr;
  std::string start = "0";
  std::string branch = "0";
  bool cycle = false;
  bool reverse = false;
  bool relation = false;
  int depth = 8;
  double height_bound = std::log(10.0);
  double tolerance = 1e-3;
  long precision = 0;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  int degree_bound = 4;
  int degree_budget = 4096;
  std::string places = "inf";
  std::string family;
  std::string tvalues = "2,4,8,16,32,64,128,256,512,1024";
  std::string format = "json";
};

class Emitter {
 public:
  explicit Emitter(const Config& c) : c_(c) {}

  void emit(ordered_json body) {
    ordered_json rec;
    rec["schema"] = kSchema;
    rec["command"] = c_.command;
    rec["inputs"] = inputs();
    for (auto& [k, v] : body.items()) rec[k] = v;
    if (c_.format == "text") {
      std::cout << "[" << c_.command << "]\n";
      for (auto& [k, v] : rec.items()) {
        if (k == "schema" || k == "command" || k == "inputs") continue;
        std::cout << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    } else {
      std::cout << rec.dump() << "\n";
    }
  }

 private:
  ordered_json inputs() const {
    ordered_json in;
    if (!c_.corr.empty()) in["corr"] = c_.corr;
    const std::string& cmd = c_.command;
    if (cmd != "validate" && cmd != "search-rational" && cmd != "search-repetitive") in["start"] = c_.start;
    if (cmd == "path" || cmd == "canonical-height" || cmd == "local-heights" || cmd == "local-global" ||
        cmd == "specialize") {
      in["branch"] = c_.branch;
      in["cycle"] = c_.cycle;
    }
    if (cmd != "validate" && cmd != "successors") in["depth"] = c_.depth;
    if (cmd == "search-rational" || cmd == "search-repetitive") in["height_bound"] = c_.height_bound;
    if (cmd == "search-repetitive") in["degree_bound"] = c_.degree_bound;
    if (cmd == "hminmax" || cmd == "local-heights" || cmd == "local-global") in["tolerance"] = c_.tolerance;
    if (cmd == "expected-height") {
      in["samples"] = c_.samples;
      in["seed"] = c_.seed;
      in["relation"] = c_.relation;
    }
    if (cmd == "successors") in["predecessors"] = c_.reverse;
    if (cmd == "local-heights") in["places"] = c_.places;
    if (cmd == "specialize") {
      in["family"] = c_.family;
      in["t"] = c_.tvalues;
    }
    in["precision"] = c_.precision > 0 ? c_.precision : default_precision();
    return in;
  }

  const Config& c_;
};

// Real numbers leave as midpoint and an upward-rounded radius.
ordered_json real(const Interval& v) {
  double r = v.rad().to_double();
  if (r > 0 || v.rad().sign() > 0) r = std::nextafter(r, INFINITY);
  return {{"mid", v.mid().to_string(20)}, {"rad", r}};
}

ordered_json real(double mid, double rad) { return {{"mid", mid}, {"rad", rad}}; }

ordered_json point(const ProjPoint& p) {
  ordered_json j;
  j["text"] = p.to_string();
  if (p.is_infinity()) {
    j["minpoly"] = nullptr;
  } else {
    j["minpoly"] = to_string(p.finite().minpoly(), 'x');
    j["degree"] = p.finite().degree();
  }
  return j;
}

ordered_json kappa(const KappaBound& k) {
  return {{"value", k.value.get_str()},
          {"approx", k.value.get_d()},
          {"certified", k.certified},
          {"provenance", k.certified ? "certified" : "heuristic"},
          {"derivation", k.provenance}};
}

ordered_json path_json(const PathPrefix& P) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : P.nodes) nodes.push_back(n.to_string());
  ordered_json j;
  j["nodes"] = nodes;
  j["multiplicities"] = P.multiplicities;
  j["branches"] = P.branches;
  return j;
}

ordered_json estimate(const CanonicalHeightResult& r) {
  ordered_json j;
  j["value"] = real(r.estimate.value);
  j["certified"] = r.estimate.certified;
  j["provenance"] = r.estimate.certified ? "certified" : "heuristic";
  j["depth"] = r.depth;
  j["alpha"] = r.alpha.get_str();
  j["tail_radius"] = r.tail_radius.hi().to_double();
  j["numeric_radius"] = r.numeric_radius.hi().to_double();
  j["kappa"] = kappa(r.kappa);
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ExtensionStrategy strategy(const Config& c) {
  if (c.branch == "all") return All{};
  if (c.branch.rfind("seed:", 0) == 0) return RandomWeighted{std::stoull(c.branch.substr(5)), 0};
  ByIndex b;
  b.cycle = c.cycle;
  for (const auto& s : split_list(c.branch)) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ParseError("bad branch index '" + s + "'", 0);
    b.indices.push_back(static_cast<unsigned>(v));
  }
  return b;
}

ExtensionStrategy single_path(const Config& c) {
  auto s = strategy(c);
  if (std::holds_alternative<All>(s)) throw ValidationError("this command follows one path; use indices or seed:N");
  return s;
}

int run(const Config& c) {
  Emitter out(c);
  if (c.command == "specialize") {
    const auto fam = FamilyCorrespondence::parse(c.family);
    std::vector<Rational> ts;
    for (const auto& s : split_list(c.tvalues)) ts.push_back(parse_rational(s));
    const auto b = single_path(c);
    if (!std::holds_alternative<ByIndex>(b)) throw ValidationError("specialize takes a branch index list");
    const auto rep = specialization_experiment(fam, parse_point(c.start), std::get<ByIndex>(b), ts, c.depth);
    for (const auto& r : rep.rows) {
      ordered_json j;
      j["t"] = r.t.get_str();
      if (r.skipped) {
        j["skipped"] = true;
        j["note"] = r.note;
      } else {
        j["h_t"] = r.h_t;
        j["hhat"] = real(r.hhat.value);
        j["certified"] = r.hhat.certified;
        j["provenance"] = r.hhat.certified ? "certified" : "heuristic";
        j["ratio"] = std::isnan(r.ratio) ? ordered_json(nullptr) : ordered_json(r.ratio);
        j["sqrt_residual"] = std::isnan(r.sqrt_residual) ? ordered_json(nullptr) : ordered_json(r.sqrt_residual);
        j["start_gap"] = r.start_gap;
      }
      out.emit(j);
    }
    out.emit({{"summary", true}, {"alpha", rep.alpha.get_str()}, {"c1", rep.c1}, {"c2", rep.c2},
              {"provenance", "heuristic"}});
    return 0;
  }

  Correspondence C;
  try {
    C = validate(c.corr);
  } catch (const ValidationError& e) {
    out.emit({{"rejected", true}, {"reason", e.what()}});
    return 2;
  }

  if (c.command == "validate") {
    ordered_json j;
    j["rejected"] = false;
    j["dx"] = C.dx;
    j["dy"] = C.dy;
    j["alpha"] = C.alpha.get_str();
    if (C.split)
      j["split"] = {{"f", to_string(C.split->f, 'x')}, {"g", to_string(C.split->g, 'y')}};
    else
      j["split"] = nullptr;
    j["warnings"] = C.warnings;
    j["kappa"] = kappa(kappa_bound(C));
    out.emit(j);
    return 0;
  }
  if (c.command == "successors") {
    const ProjPoint a = parse_point(c.start);
    const auto list = c.reverse ? predecessors(C, a) : successors(C, a);
    for (const auto& s : list) {
      ordered_json j;
      j["point"] = point(s.point);
      j["multiplicity"] = s.multiplicity;
      j["height"] = real(s.point.height().value);
      out.emit(j);
    }
    return 0;
  }
  if (c.command == "search-rational") {
    for (const auto& r : rational_path_search(C, c.height_bound, c.depth)) {
      ordered_json j;
      j["start"] = r.start.get_str();
      j["witnesses"] = r.witnesses.size();
      j["truncated"] = r.truncated;
      j["witness"] = path_json(r.witnesses.front());
      out.emit(j);
    }
    return 0;
  }

  PathEngine E(C, c.precision, c.degree_budget);
  const ProjPoint a = parse_point(c.start);

  if (c.command == "path") {
    for (const auto& P : extend(E, single_node(E, a), strategy(c), c.depth)) {
      ordered_json j = path_json(P);
      j["weight"] = P.weight();
      ordered_json hs = ordered_json::array();
      for (const auto& h : P.heights) hs.push_back(real(h));
      j["heights"] = hs;
      const auto rep = is_repetitive(P);
      const auto per = is_periodic(P);
      j["repetitive"] = rep ? ordered_json(std::vector<int>{rep->first, rep->second}) : ordered_json(nullptr);
      j["periodic"] = per ? ordered_json(std::vector<int>{per->first, per->second}) : ordered_json(nullptr);
      out.emit(j);
    }
    return 0;
  }
  if (c.command == "canonical-height") {
    const auto r = canonical_height(E, a, single_path(c), c.depth);
    ordered_json j = estimate(r);
    j["path"] = path_json(r.path);
    out.emit(j);
    return 0;
  }
  if (c.command == "hminmax") {
    const auto r = hmin_hmax(E, a, c.tolerance);
    const char* prov = r.hmin.certified ? "certified" : "heuristic";
    out.emit({{"hmin", real(r.hmin.value)},
              {"hmax", real(r.hmax.value)},
              {"complete", r.complete},
              {"expanded", r.expanded},
              {"provenance", prov},
              {"note", r.note}});
    return r.complete ? 0 : 3;
  }
  if (c.command == "expected-height") {
    if (c.relation) {
      const auto r = expected_height_relation_check(E, a, c.samples, c.depth, c.seed);
      ordered_json succ = ordered_json::array();
      for (std::size_t i = 0; i < r.successors.size(); ++i)
        succ.push_back({{"point", r.successors[i].first.to_string()},
                        {"multiplicity", r.multiplicities[i]},
                        {"mean", real(r.successors[i].second.mean, r.successors[i].second.std_error)}});
      out.emit({{"lhs", real(r.lhs, r.lhs_se)},
                {"rhs", real(r.rhs, r.rhs_se)},
                {"z", r.z},
                {"pass", r.pass},
                {"successors", succ},
                {"provenance", "heuristic"}});
    } else {
      const auto r = expected_height(E, a, c.samples, c.depth, c.seed);
      out.emit({{"mean", real(r.mean, r.std_error)}, {"samples", r.samples}, {"provenance", "heuristic"}});
    }
    return 0;
  }
  if (c.command == "local-heights") {
    const PathPrefix P = walk(E, a, single_path(c), c.depth);
    for (const auto& name : split_list(c.places)) {
      RationalPlace v;
      if (name != "inf") {
        v.archimedean = false;
        v.prime = Integer(parse_rational(name).get_num());
        if (v.prime < 2 || !is_probable_prime(v.prime)) throw ValidationError("not a prime: " + name);
      }
      const auto r = local_canonical_height(E, P, v, c.depth, c.tolerance);
      out.emit({{"place", v.to_string()},
                {"value", real(r.value)},
                {"stabilized", r.stabilized},
                {"provenance", "heuristic"}});
    }
    return 0;
  }
  if (c.command == "local-global") {
    const auto r = local_global_check(E, single_node(E, a), c.depth, c.tolerance, single_path(c));
    ordered_json locals = ordered_json::array();
    for (const auto& l : r.locals)
      locals.push_back({{"place", l.place.to_string()}, {"value", real(l.value)}, {"stabilized", l.stabilized}});
    out.emit({{"locals", locals},
              {"sum", real(r.sum)},
              {"hhat", estimate(r.global)},
              {"difference", real(r.difference)},
              {"pass", r.pass},
              {"provenance", "heuristic"}});
    return 0;
  }
  if (c.command == "search-repetitive") {
    const auto r = repetitive_start_search(E, c.height_bound, c.depth, c.degree_bound);
    for (const auto& p : r.points) out.emit({{"point", point(p.point)}, {"witness", path_json(p.witness)}});
    out.emit({{"summary", true}, {"found", r.points.size()}, {"truncated", r.truncated}, {"notes", r.notes}});
    return r.truncated ? 3 : 0;
  }
  throw ValidationError("unknown command " + c.command);
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Heights on correspondences of the projective line"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s, bool needs_corr = true) {
    auto* o = s->add_option("--corr", c.corr, "polynomial F(x, y)");
    if (needs_corr) o->required();
    s->add_option("--precision", c.precision, "starting precision in bits (default: CORRHEIGHT_PRECISION or 128)");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto pathy = [&](CLI::App* s) {
    s->add_option("--start", c.start, "start point: rational, inf, or root(poly, approx)");
    s->add_option("--branch", c.branch, "slot list like 0,1,0; seed:N; or all");
    s->add_flag("--cycle", c.cycle, "cycle the slot list instead of padding with 0");
    s->add_option("--depth", c.depth, "path depth")->check(CLI::NonNegativeNumber);
    s->add_option("--degree-budget", c.degree_budget, "largest node degree allowed");
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check F and report degrees, alpha, split form, kappa"},
      {"successors", "successors (or predecessors) of a point"},
      {"path", "path prefixes from a start"},
      {"canonical-height", "canonical height of one path"},
      {"hminmax", "smallest and largest canonical height over paths from a point"},
      {"expected-height", "Monte Carlo mean canonical height"},
      {"local-heights", "truncated local canonical heights"},
      {"local-global", "sum of local heights against the canonical height"},
      {"search-rational", "rational starts with all-rational paths"},
      {"search-repetitive", "starts admitting a repetitive path"},
      {"specialize", "canonical heights along a one-parameter family"}};
  for (const auto& [name, help] : commands) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&c, name = name] { c.command = name; });
    common(s, name != "specialize");
    if (name == "validate") continue;
    if (name == "successors") {
      s->add_option("--start", c.start, "point");
      s->add_flag("--predecessors", c.reverse, "fibre of the second projection instead");
      continue;
    }
    if (name == "search-rational" || name == "search-repetitive") {
      s->add_option("--height-bound", c.height_bound, "H: max(|p|, q) <= e^H")->check(CLI::NonNegativeNumber);
      s->add_option("--depth", c.depth, "path depth")->check(CLI::NonNegativeNumber);
      if (name == "search-repetitive") {
        s->add_option("--degree-bound", c.degree_bound, "largest degree of reported tree nodes");
        s->add_option("--degree-budget", c.degree_budget, "largest node degree allowed");
      }
      continue;
    }
    pathy(s);
    if (name == "hminmax" || name == "local-heights" || name == "local-global")
      s->add_option("--tolerance", c.tolerance, "tolerance")->check(CLI::PositiveNumber);
    if (name == "expected-height") {
      s->add_option("--samples", c.samples, "number of sampled paths")->check(CLI::PositiveNumber);
      s->add_option("--seed", c.seed, "seed");
      s->add_flag("--relation", c.relation, "compare the successor mean with alpha times the mean at the start");
    }
    if (name == "local-heights") s->add_option("--places", c.places, "comma list of inf and primes");
    if (name == "specialize") {
      s->add_option("--family", c.family, "F(x, y, t)")->required();
      s->add_option("--t", c.tvalues, "comma list of parameter values");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (c.precision > 0 && c.precision < 16) {
    std::cerr << "error: precision must be at least 16 bits\n";
    return 1;
  }
  if (c.precision > 0) setenv("CORRHEIGHT_PRECISION", std::to_string(c.precision).c_str(), 1);

  try {
    return run(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  }
}
