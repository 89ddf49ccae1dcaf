#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cspath/diameter.hpp"
#include "cspath/engine.hpp"
#include "cspath/graph.hpp"
#include "cspath/larac.hpp"

namespace cspath {

inline constexpr int kBenchSchemaVersion = 1;

/// "Dij" / "<k>-HS<p>" solve the unconstrained problem at alpha = 0; the
/// "A_" prefix runs the Lagrangian search on top of the same engine.
struct Algorithm {
  bool lagrangian = false;
  EngineSpec engine;

  std::string id() const { return (lagrangian ? "A_" : "") + engine.name(); }
  static Algorithm parse(const std::string& id);
};

enum class ReferencePolicy {
  automatic,  // exact oracle within budget, else A_Dij
  exact,
  dijkstra,
};

ReferencePolicy parse_reference_policy(const std::string& name);

struct BenchConfig {
  std::string graph_id = "graph";
  double beta_theta = 0.5;
  SearchRule rule = SearchRule::juttner;
  ReferencePolicy reference = ReferencePolicy::automatic;
  DistanceMetric metric = DistanceMetric::hops;
  PerspectiveMode perspective = PerspectiveMode::per_alpha;
  std::size_t exact_budget = 1'000'000;
  unsigned workers = 1;
  int diameter_sweeps = 4;
  std::size_t attempts_per_instance = 200;
};

/// Budget from the two extreme paths: beta = b_min + floor(theta * (b(P(0)) - b_min)),
/// at least 1. b_min is the shortest length, b(P(0)) the length of the
/// cheapest path.
struct BetaChoice {
  Length beta = 0;
  Length b_min = 0;
  Length b_zero = 0;
};
BetaChoice theta_beta(const Graph& g, VertexId s, VertexId t, double theta);

/// Random (s, t) pairs whose distance lies within +-10% of `percent` of the
/// estimated diameter, each with a theta-rule budget. Deterministic in
/// seed; throws std::runtime_error naming the class when too many draws fail.
std::vector<InstanceSpec> sample_instances(const Graph& g, int percent, std::size_t count, std::uint64_t seed,
                                           const BenchConfig& config = {});

struct BenchRecord {
  std::string graph_id;
  int instance_class = 0;
  std::string algorithm;
  std::uint32_t trial = 0;
  VertexId source = kNoVertex;
  VertexId target = kNoVertex;
  Cost cost = 0;
  Length length = 0;
  Length beta = 0;
  double theta = 0.0;
  Length b_min = 0;
  Length b_zero = 0;
  double ratio = 0.0;
  std::string reference;
  double time_s = 0.0;
  std::uint32_t iterations = 0;
  std::string status;

  // A path was produced and the ratio is meaningful.
  bool completed() const;
};

/// One record per (class, algorithm, trial), merged in that order. Solve
/// time covers engine construction (the level skeleton for HS engines) but
/// not graph loading or reference computation.
std::vector<BenchRecord> run_matrix(const Graph& g, const std::vector<int>& classes,
                                    const std::vector<Algorithm>& algorithms, std::uint32_t trials,
                                    std::uint64_t seed, const BenchConfig& config = {});

struct SummaryRow {
  int instance_class = 0;
  std::string algorithm;
  std::size_t trials = 0;
  double ratio_mean = 0.0;
  double ratio_std = 0.0;
  double time_mean = 0.0;
  double time_std = 0.0;
};

struct BenchSummary {
  std::vector<SummaryRow> rows;
};

/// Mean and population standard deviation over completed records, per
/// (class, algorithm) in order of first appearance, rounded to 6
/// significant digits. Throws std::invalid_argument on empty input.
BenchSummary summarize(const std::vector<BenchRecord>& records);

double round_significant(double value, int digits);

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_summary_json(std::ostream& out, const BenchSummary& summary, const BenchConfig& config,
                        std::uint64_t seed);

}  // namespace cspath
