#include "cspath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cspath/dijkstra.hpp"
#include "cspath/exact.hpp"
#include "cspath/random.hpp"

namespace cspath {

Algorithm Algorithm::parse(const std::string& id) {
  Algorithm alg;
  std::string rest = id;
  if (rest.rfind("A_", 0) == 0) {
    alg.lagrangian = true;
    rest = rest.substr(2);
  }
  alg.engine = EngineSpec::parse(rest);
  return alg;
}

ReferencePolicy parse_reference_policy(const std::string& name) {
  if (name == "auto") return ReferencePolicy::automatic;
  if (name == "exact") return ReferencePolicy::exact;
  if (name == "dij") return ReferencePolicy::dijkstra;
  throw std::invalid_argument("unknown reference policy '" + name + "'");
}

BetaChoice theta_beta(const Graph& g, VertexId s, VertexId t, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  auto shortest = extract_path(g, dijkstra(g, s, WeightView::length_only(), t), s, t);
  auto cheapest = extract_path(g, dijkstra(g, s, WeightView::at(Rational(0)), t), s, t);
  if (!shortest || !cheapest) throw std::invalid_argument("target unreachable from source");
  BetaChoice choice;
  choice.b_min = shortest->length;
  choice.b_zero = cheapest->length;
  auto slack = static_cast<Length>(std::floor(theta * static_cast<double>(choice.b_zero - choice.b_min)));
  choice.beta = std::max<Length>(choice.b_min + slack, 1);
  return choice;
}

std::vector<InstanceSpec> sample_instances(const Graph& g, int percent, std::size_t count, std::uint64_t seed,
                                           const BenchConfig& config) {
  if (g.num_vertices() < 2) throw std::invalid_argument("graph too small for instances");
  if (percent <= 0 || percent > 100) throw std::invalid_argument("instance class must be a percentage");
  const std::int64_t diameter = estimate_diameter(g, seed, config.diameter_sweeps, config.metric);
  const double target = diameter * (percent / 100.0);
  auto lo = static_cast<std::int64_t>(std::ceil(0.9 * target - 1e-9));
  auto hi = static_cast<std::int64_t>(std::floor(1.1 * target + 1e-9));
  if (lo > hi) lo = hi = std::llround(target);
  lo = std::max<std::int64_t>(lo, 1);

  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(percent)));
  std::vector<InstanceSpec> specs;
  std::vector<VertexId> candidates;
  const std::size_t budget = std::max<std::size_t>(count, 1) * config.attempts_per_instance;
  for (std::size_t attempt = 0; specs.size() < count; ++attempt) {
    if (attempt >= budget) {
      throw std::runtime_error("could not sample " + std::to_string(count) + " instances for class " +
                               std::to_string(percent) + "%");
    }
    auto s = static_cast<VertexId>(rng.below(g.num_vertices()));
    auto dist = distances_from(g, s, config.metric);
    candidates.clear();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (dist[v] != kNoDistance && dist[v] >= lo && dist[v] <= hi) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    VertexId t = candidates[rng.below(candidates.size())];
    specs.push_back({s, t, theta_beta(g, s, t, config.beta_theta).beta});
  }
  return specs;
}

bool BenchRecord::completed() const {
  return status == "ok" || status == to_string(LaracStatus::optimal_at_zero) ||
         status == to_string(LaracStatus::feasible_approx);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double ratio_of(Cost cost, Cost reference) {
  if (reference == 0) return cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(cost) / static_cast<double>(reference);
}

struct Reference {
  std::optional<Cost> cost;
  std::string kind;
};

Reference sp_reference(const Graph& g, const InstanceSpec& spec) {
  auto path = extract_path(g, dijkstra(g, spec.source, WeightView::at(Rational(0)), spec.target), spec.source,
                           spec.target);
  return {path ? std::optional<Cost>(path->cost) : std::nullopt, "Dij"};
}

Reference csp_reference(const Graph& g, const InstanceSpec& spec, const BenchConfig& config) {
  if (config.reference != ReferencePolicy::dijkstra) {
    try {
      auto best = exact_csp(g, spec.source, spec.target, spec.beta, {config.exact_budget});
      return {best ? std::optional<Cost>(best->cost) : std::nullopt, "exact"};
    } catch (const OracleOverflow&) {
      if (config.reference == ReferencePolicy::exact) return {std::nullopt, "exact-overflow"};
    }
  }
  LaracResult dij = solve(g, spec.source, spec.target, spec.beta, EngineSpec::dijkstra(), config.rule);
  if (!dij.path) return {std::nullopt, "A_Dij"};
  return {dij.path->cost, "A_Dij"};
}

BenchRecord run_one(const Graph& g, const InstanceSpec& spec, const Algorithm& alg, const BenchConfig& config) {
  BenchRecord rec;
  rec.algorithm = alg.id();
  rec.source = spec.source;
  rec.target = spec.target;
  rec.beta = spec.beta;
  try {
    EngineSpec engine_spec = alg.engine;
    engine_spec.perspective = config.perspective;
    const auto start = Clock::now();
    if (alg.lagrangian) {
      LaracResult r = solve(g, spec.source, spec.target, spec.beta, engine_spec, config.rule);
      rec.time_s = seconds_since(start);
      rec.status = to_string(r.status);
      rec.iterations = r.iterations;
      const auto& shown = r.path ? r.path : r.witness;
      if (shown) {
        rec.cost = shown->cost;
        rec.length = shown->length;
      }
    } else {
      auto engine = make_engine(g, spec.source, spec.target, engine_spec);
      auto found = engine->shortest(WeightView::at(Rational(0)));
      rec.time_s = seconds_since(start);
      if (found) {
        Path p = remove_cycles(g, found->walk);
        rec.cost = p.cost;
        rec.length = p.length;
        rec.status = "ok";
      } else {
        rec.status = "no-path";
      }
    }
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_matrix(const Graph& g, const std::vector<int>& classes,
                                    const std::vector<Algorithm>& algorithms, std::uint32_t trials,
                                    std::uint64_t seed, const BenchConfig& config) {
  struct Job {
    int instance_class;
    std::uint32_t trial;
    InstanceSpec spec;
    BetaChoice beta;
  };
  std::vector<Job> jobs;
  for (int cls : classes) {
    auto specs = sample_instances(g, cls, trials, derive_seed(seed, static_cast<std::uint64_t>(cls)), config);
    for (std::uint32_t i = 0; i < trials; ++i) {
      jobs.push_back({cls, i, specs[i], theta_beta(g, specs[i].source, specs[i].target, config.beta_theta)});
    }
  }
  const bool any_sp = std::any_of(algorithms.begin(), algorithms.end(), [](const Algorithm& a) { return !a.lagrangian; });
  const bool any_csp = std::any_of(algorithms.begin(), algorithms.end(), [](const Algorithm& a) { return a.lagrangian; });

  // results[job][algorithm], filled by the workers and merged in key order.
  std::vector<std::vector<BenchRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      Reference sp_ref;
      Reference csp_ref;
      if (any_sp) sp_ref = sp_reference(g, job.spec);
      if (any_csp) csp_ref = csp_reference(g, job.spec, config);
      for (const Algorithm& alg : algorithms) {
        BenchRecord rec = run_one(g, job.spec, alg, config);
        rec.graph_id = config.graph_id;
        rec.instance_class = job.instance_class;
        rec.trial = job.trial;
        rec.theta = config.beta_theta;
        rec.b_min = job.beta.b_min;
        rec.b_zero = job.beta.b_zero;
        const Reference& ref = alg.lagrangian ? csp_ref : sp_ref;
        rec.reference = ref.kind;
        rec.ratio = rec.completed() && ref.cost ? ratio_of(rec.cost, *ref.cost) : std::nan("");
        results[j].push_back(std::move(rec));
      }
    }
  };
  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<BenchRecord> records;
  for (int cls : classes) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].instance_class == cls) records.push_back(results[j][a]);
      }
    }
  }
  return records;
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

BenchSummary summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  struct Acc {
    std::vector<double> ratios;
    std::vector<double> times;
  };
  std::vector<std::pair<std::pair<int, std::string>, Acc>> groups;
  for (const BenchRecord& r : records) {
    auto key = std::make_pair(r.instance_class, r.algorithm);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = groups.end() - 1;
    }
    if (r.completed() && std::isfinite(r.ratio)) {
      it->second.ratios.push_back(r.ratio);
      it->second.times.push_back(r.time_s);
    }
  }
  auto mean_std = [](const std::vector<double>& xs) {
    if (xs.empty()) return std::pair{std::nan(""), std::nan("")};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::pair{mean, std::sqrt(var)};
  };
  BenchSummary summary;
  for (const auto& [key, acc] : groups) {
    auto [rm, rs] = mean_std(acc.ratios);
    auto [tm, ts] = mean_std(acc.times);
    summary.rows.push_back({key.first, key.second, acc.ratios.size(), round_significant(rm, 6),
                            round_significant(rs, 6), round_significant(tm, 6), round_significant(ts, 6)});
  }
  return summary;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "schema_version,graph,class,algorithm,trial,source,target,cost,length,beta,theta,b_min,b_zero,"
         "ratio,reference,time_s,iterations,status,rng\r\n";
  for (const BenchRecord& r : records) {
    out << kBenchSchemaVersion << ',' << csv_field(r.graph_id) << ',' << r.instance_class << ','
        << csv_field(r.algorithm) << ',' << r.trial << ',' << r.source << ',' << r.target << ',' << r.cost << ','
        << r.length << ',' << r.beta << ',' << number(r.theta) << ',' << r.b_min << ',' << r.b_zero << ','
        << number(r.ratio) << ',' << csv_field(r.reference) << ',' << number(r.time_s) << ',' << r.iterations
        << ',' << csv_field(r.status) << ',' << kRngAlgorithm << "\r\n";
  }
}

void write_summary_json(std::ostream& out, const BenchSummary& summary, const BenchConfig& config,
                        std::uint64_t seed) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json doc;
  doc["schema_version"] = kBenchSchemaVersion;
  doc["graph"] = config.graph_id;
  doc["seed"] = seed;
  doc["rng"] = std::string(kRngAlgorithm);
  doc["beta_theta"] = config.beta_theta;
  doc["search_rule"] = to_string(config.rule);
  doc["stddev"] = "population";
  doc["significant_digits"] = 6;
  doc["groups"] = nlohmann::json::array();
  for (const SummaryRow& row : summary.rows) {
    doc["groups"].push_back({{"class", row.instance_class},
                             {"algorithm", row.algorithm},
                             {"trials", row.trials},
                             {"ratio_mean", finite_or_null(row.ratio_mean)},
                             {"ratio_std", finite_or_null(row.ratio_std)},
                             {"time_mean_s", finite_or_null(row.time_mean)},
                             {"time_std_s", finite_or_null(row.time_std)}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cspath
