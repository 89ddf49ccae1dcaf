#include "cspath/larac.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace cspath {

const char* to_string(LaracStatus status) {
  switch (status) {
    case LaracStatus::optimal_at_zero: return "optimal-at-zero";
    case LaracStatus::feasible_approx: return "feasible-approx";
    case LaracStatus::infeasible: return "infeasible";
  }
  return "?";
}

const char* to_string(SearchRule rule) { return rule == SearchRule::dichotomy ? "dichotomy" : "juttner"; }

SearchRule parse_search_rule(const std::string& name) {
  if (name == "dichotomy") return SearchRule::dichotomy;
  if (name == "juttner") return SearchRule::juttner;
  throw std::invalid_argument("unknown search rule '" + name + "'");
}

Rational MinorantLines::intersection() const {
  Rational alpha(Int128{feasible_cost} - infeasible_cost, Int128{infeasible_length} - feasible_length);
  return alpha < Rational(0) ? Rational(0) : alpha;
}

Rational alpha_upper_bound(const Graph& g) {
  Int128 top = checked_mul(g.max_cost(), static_cast<Int128>(g.num_vertices()));
  return Rational(top < 1 ? 1 : top);
}

std::uint32_t dichotomy_iteration_bound(Cost max_cost, Length max_length, VertexId n) {
  Int128 a = std::max<Cost>(max_cost, 1);
  Int128 b = std::max<Length>(max_length, 1);
  Int128 nn = std::max<VertexId>(n, 1);
  Int128 x = checked_mul(checked_mul(checked_mul(a, nn), checked_mul(b, b)), checked_mul(nn, nn));
  // ceil(log2 x) is the bit length of x - 1.
  std::uint32_t bits = 0;
  for (Int128 v = x - 1; v > 0; v >>= 1) ++bits;
  return bits + 1;
}

namespace {

constexpr std::uint32_t kMaxUpdates = 1u << 20;

bool fits(const std::optional<EngineResult>& r, Length beta) { return r && r->walk.length <= beta; }

struct Prober {
  PathEngine& engine;
  std::vector<Probe>& log;

  std::optional<EngineResult> operator()(const Rational& alpha) {
    auto r = engine.shortest(WeightView::at(alpha));
    log.push_back(r ? Probe{alpha, true, r->walk.cost, r->walk.length} : Probe{alpha, false, 0, 0});
    return r;
  }
};

MinorantLines lines_of(const EngineResult& too_long, const EngineResult& feasible) {
  return {too_long.walk.cost, too_long.walk.length, feasible.walk.cost, feasible.walk.length};
}

// Shared opening: probe the top of the bracket, which yields the minimum
// length path. Returns false when even that path is too long.
bool open_bracket(Prober& probe, const Graph& g, Length beta, SearchOutcome& out) {
  out.shortest_length_path = probe(alpha_upper_bound(g));
  out.feasible = fits(out.shortest_length_path, beta);
  return out.feasible;
}

void check_zero(const EngineResult& at_zero, Length beta) {
  if (at_zero.walk.length <= beta) throw std::invalid_argument("P(0) is feasible; no alpha search needed");
}

}  // namespace

SearchOutcome dichotomy_search(PathEngine& engine, const Graph& g, Length beta, const EngineResult& at_zero) {
  check_zero(at_zero, beta);
  SearchOutcome out;
  Prober probe{engine, out.probes};
  if (!open_bracket(probe, g, beta, out)) return out;

  EngineResult low_line = at_zero;
  EngineResult high_line = *out.shortest_length_path;
  Rational lo(0);
  Rational hi = alpha_upper_bound(g);
  const Int128 b = std::max<Length>(g.max_length(), 1);
  const Int128 n = g.num_vertices();
  const Rational gap(1, checked_mul(checked_mul(b, b), checked_mul(n, n)));
  while (hi - lo >= gap) {
    Rational mid = (lo + hi) * Rational(1, 2);
    auto r = probe(mid);
    ++out.iterations;
    if (fits(r, beta)) {
      hi = mid;
      high_line = std::move(*r);
    } else {
      // No path at all counts as infeasible at this alpha.
      lo = mid;
      if (r) low_line = std::move(*r);
    }
  }
  out.lines = lines_of(low_line, high_line);
  out.alpha_star = out.lines.intersection();
  out.feasible_path = std::move(high_line);
  return out;
}

SearchOutcome juttner_update_search(PathEngine& engine, const Graph& g, Length beta, const EngineResult& at_zero) {
  check_zero(at_zero, beta);
  SearchOutcome out;
  Prober probe{engine, out.probes};
  if (!open_bracket(probe, g, beta, out)) return out;

  EngineResult too_long = at_zero;
  EngineResult feasible = *out.shortest_length_path;
  for (;;) {
    MinorantLines lines = lines_of(too_long, feasible);
    Rational alpha = lines.intersection();
    auto r = probe(alpha);
    ++out.iterations;
    if (out.iterations > kMaxUpdates) throw std::logic_error("alpha update did not converge");
    if (!r) break;
    const WeightView w = WeightView::at(alpha);
    // Nothing strictly below the intersection point: alpha is a breakpoint.
    if (r->weight >= w.weight(too_long.walk.cost, too_long.walk.length)) break;
    if (r->walk.length <= beta) {
      feasible = std::move(*r);
    } else {
      too_long = std::move(*r);
    }
  }
  out.lines = lines_of(too_long, feasible);
  out.alpha_star = out.lines.intersection();
  out.feasible_path = std::move(feasible);
  return out;
}

namespace {

template <typename Search>
SearchOutcome run_search(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec, Search search) {
  auto engine = make_engine(g, s, t, spec);
  auto at_zero = engine->shortest(WeightView::at(Rational(0)));
  if (!at_zero) throw std::invalid_argument("no path at alpha = 0");
  return search(*engine, g, beta, *at_zero);
}

}  // namespace

SearchOutcome dichotomy_search(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec) {
  return run_search(g, s, t, beta, spec, [](PathEngine& e, const Graph& gr, Length b, const EngineResult& z) {
    return dichotomy_search(e, gr, b, z);
  });
}

SearchOutcome juttner_update_search(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec) {
  return run_search(g, s, t, beta, spec, [](PathEngine& e, const Graph& gr, Length b, const EngineResult& z) {
    return juttner_update_search(e, gr, b, z);
  });
}

Rational lower_bound(const MinorantLines& lines, Length beta, const Rational& alpha_star) {
  return Rational(lines.feasible_cost) - Rational(Int128{beta} - lines.feasible_length) * alpha_star;
}

Rational apriori_ratio(const Rational& e, Cost feasible_cost) {
  if (!(e > Rational(0))) throw std::domain_error("ratio bound needs a positive lower bound");
  return Rational(feasible_cost) / e;
}

LaracResult solve(PathEngine& engine, const Graph& g, VertexId s, VertexId t, Length beta, SearchRule rule) {
  validate_instance(g, {s, t, beta});
  LaracResult result;
  result.engine = engine.name();
  result.bound_certified = engine.exact();
  result.ratio_ceiling = beta;

  const Rational zero(0);
  auto at_zero = engine.shortest(WeightView::at(zero));
  result.probes.push_back(at_zero ? Probe{zero, true, at_zero->walk.cost, at_zero->walk.length}
                                  : Probe{zero, false, 0, 0});
  if (!at_zero) return result;

  if (at_zero->walk.length <= beta) {
    result.status = LaracStatus::optimal_at_zero;
    result.path = remove_cycles(g, at_zero->walk);
    result.alpha_star = zero;
    result.lower_bound = Rational(at_zero->walk.cost);
    result.ratio_bound = Rational(1);
    return result;
  }

  SearchOutcome outcome = rule == SearchRule::dichotomy ? dichotomy_search(engine, g, beta, *at_zero)
                                                        : juttner_update_search(engine, g, beta, *at_zero);
  result.iterations = outcome.iterations;
  result.probes.insert(result.probes.end(), outcome.probes.begin(), outcome.probes.end());
  if (!outcome.feasible) {
    if (outcome.shortest_length_path) result.witness = remove_cycles(g, outcome.shortest_length_path->walk);
    return result;
  }
  result.status = LaracStatus::feasible_approx;
  result.lines = outcome.lines;
  result.alpha_star = outcome.alpha_star;
  result.lower_bound = lower_bound(outcome.lines, beta, outcome.alpha_star);
  if (result.lower_bound > zero) result.ratio_bound = apriori_ratio(result.lower_bound, outcome.lines.feasible_cost);
  result.path = remove_cycles(g, outcome.feasible_path->walk);
  return result;
}

LaracResult solve(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec, SearchRule rule) {
  validate_instance(g, {s, t, beta});
  auto engine = make_engine(g, s, t, spec);
  return solve(*engine, g, s, t, beta, rule);
}

void write_probe_log(std::ostream& out, const LaracResult& result) {
  for (const Probe& p : result.probes) {
    out << to_string(p.alpha.num()) << ' ' << to_string(p.alpha.den()) << ' ';
    if (p.found) {
      out << p.cost << ' ' << p.length;
    } else {
      out << "- -";
    }
    out << ' ' << result.engine << '\n';
  }
}

}  // namespace cspath
