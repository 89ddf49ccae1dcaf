#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cspath/engine.hpp"
#include "cspath/graph.hpp"
#include "cspath/rational.hpp"

namespace cspath {

enum class SearchRule {
  dichotomy,  // bisection of [0, A*n] down to the breakpoint gap 1/(B^2 n^2)
  juttner,    // jump to the intersection of the two current lines
};

enum class LaracStatus { optimal_at_zero, feasible_approx, infeasible };

const char* to_string(LaracStatus status);
const char* to_string(SearchRule rule);
SearchRule parse_search_rule(const std::string& name);

/// The two paths bracketing alpha*, as lines y = b*alpha + a: the last one
/// found too long (b1 > beta) and the first one found feasible (b2 <= beta).
struct MinorantLines {
  Cost infeasible_cost = 0;    // a1
  Length infeasible_length = 0;  // b1
  Cost feasible_cost = 0;      // a2
  Length feasible_length = 0;  // b2

  /// (a2 - a1) / (b1 - b2), clamped at 0.
  Rational intersection() const;
};

struct Probe {
  Rational alpha;
  bool found = false;
  Cost cost = 0;
  Length length = 0;
};

struct SearchOutcome {
  bool feasible = false;  // false: even the largest alpha gives a path longer than beta
  MinorantLines lines;
  Rational alpha_star;
  std::optional<EngineResult> feasible_path;
  std::optional<EngineResult> shortest_length_path;  // probe at the top of the bracket
  std::uint32_t iterations = 0;
  std::vector<Probe> probes;
};

/// Upper end of the alpha bracket, A*n (at least 1).
Rational alpha_upper_bound(const Graph& g);

/// ceil(log2(A * n * B^2 * n^2)) + 1 with A and B taken as at least 1.
std::uint32_t dichotomy_iteration_bound(Cost max_cost, Length max_length, VertexId n);

/// Both searches expect `at_zero` = P(0) to be too long.
SearchOutcome dichotomy_search(PathEngine& engine, const Graph& g, Length beta, const EngineResult& at_zero);
SearchOutcome juttner_update_search(PathEngine& engine, const Graph& g, Length beta, const EngineResult& at_zero);

/// Convenience forms that build the engine and evaluate P(0) first. Throw
/// std::invalid_argument if P(0) is already feasible or missing.
SearchOutcome dichotomy_search(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec);
SearchOutcome juttner_update_search(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec);

/// e = a2 - (beta - b2) * alpha*.
Rational lower_bound(const MinorantLines& lines, Length beta, const Rational& alpha_star);

/// a2 / e; throws std::domain_error unless e > 0.
Rational apriori_ratio(const Rational& e, Cost feasible_cost);

struct LaracResult {
  LaracStatus status = LaracStatus::infeasible;
  std::optional<Path> path;     // feasible and simple unless infeasible
  std::optional<Path> witness;  // shortest-length path found when infeasible
  Rational alpha_star;
  Rational lower_bound;
  std::optional<Rational> ratio_bound;  // a2 / e
  Length ratio_ceiling = 0;             // analytic ceiling: beta
  // False for HS engines: e then only bounds paths the structure can represent.
  bool bound_certified = false;
  std::optional<MinorantLines> lines;
  std::uint32_t iterations = 0;
  std::string engine;
  std::vector<Probe> probes;
};

/// Runs the engine at alpha = 0 and returns that path if it fits the
/// budget; otherwise searches for the smallest alpha whose min-weight path
/// is feasible.
LaracResult solve(PathEngine& engine, const Graph& g, VertexId s, VertexId t, Length beta, SearchRule rule);
LaracResult solve(const Graph& g, VertexId s, VertexId t, Length beta, const EngineSpec& spec,
                  SearchRule rule = SearchRule::juttner);

/// One line per probe: `<alpha num> <alpha den> <cost> <length> <engine>`,
/// with `-` for cost and length when no path was found.
void write_probe_log(std::ostream& out, const LaracResult& result);

}  // namespace cspath
