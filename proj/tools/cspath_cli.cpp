#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cspath/bench.hpp"
#include "cspath/contraction.hpp"
#include "cspath/dimacs.hpp"
#include "cspath/exact.hpp"
#include "cspath/larac.hpp"
#include "cspath/udg.hpp"

using namespace cspath;
using nlohmann::json;

namespace {

// Where a command gets its graph from: a UDG file, a freshly generated UDG,
// or a DIMACS distance/time pair.
struct GraphSource {
  std::string udg_file;
  VertexId gen_n = 0;
  double gen_r = 0.1;
  std::uint64_t gen_seed = 1;
  std::string distance_gr;
  std::string time_gr;
  std::string coords;
  bool swap = false;
  bool contract = false;

  void add_to(CLI::App* cmd) {
    auto* udg = cmd->add_option("--udg", udg_file, "UDG text file (see gen-udg)")->check(CLI::ExistingFile);
    auto* gen = cmd->add_option("--gen-n", gen_n, "generate a UDG with this many points");
    cmd->add_option("--gen-r", gen_r, "radius for --gen-n")->capture_default_str();
    cmd->add_option("--gen-seed", gen_seed, "seed for --gen-n")->capture_default_str();
    auto* dist = cmd->add_option("--distance", distance_gr, "DIMACS .gr with distances")->check(CLI::ExistingFile);
    auto* time = cmd->add_option("--time", time_gr, "DIMACS .gr with travel times")->check(CLI::ExistingFile);
    cmd->add_option("--coords", coords, "DIMACS .co coordinates for --distance/--time")->check(CLI::ExistingFile);
    cmd->add_flag("--swap", swap, "DIMACS: budget the time and minimize distance instead");
    cmd->add_flag("--contract", contract, "collapse degree-2 chains first");
    dist->needs(time);
    time->needs(dist);
    udg->excludes(gen)->excludes(dist);
    gen->excludes(dist);
  }

  std::string id() const {
    std::string base;
    if (!udg_file.empty()) {
      base = udg_file;
    } else if (gen_n > 0) {
      std::ostringstream s;
      s << "udg-n" << gen_n << "-r" << gen_r << "-s" << gen_seed;
      base = s.str();
    } else {
      base = distance_gr;
    }
    return contract ? base + "+contracted" : base;
  }

  Graph load() const {
    Graph g;
    if (!udg_file.empty()) {
      std::ifstream in(udg_file);
      g = read_udg(in).graph;
    } else if (gen_n > 0) {
      g = generate_udg(gen_n, gen_r, gen_seed);
    } else if (!distance_gr.empty()) {
      // Default roles: time is the cost, distance the budgeted length.
      g = swap ? load_dimacs(distance_gr, time_gr) : load_dimacs(time_gr, distance_gr);
      if (!coords.empty()) {
        std::ifstream in(coords);
        g = g.with_coords(parse_dimacs_coords(in, g.num_vertices()));
      }
    } else {
      throw CLI::ValidationError("graph", "one of --udg, --gen-n or --distance/--time is required");
    }
    if (contract) g = contract_degree2(g).graph;
    return g;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json path_json(const Path& p) {
  return {{"source", p.source}, {"target", p.target}, {"cost", p.cost}, {"length", p.length},
          {"arcs", p.arcs.size()}};
}

json graph_json(const Graph& g) {
  return {{"n", g.num_vertices()}, {"m", g.num_arcs()},           {"max_cost", g.max_cost()},
          {"max_length", g.max_length()}, {"coords", g.has_coords()}};
}

void write_outputs(const std::string& prefix, const std::vector<BenchRecord>& records, const BenchConfig& cfg,
                   std::uint64_t seed) {
  BenchSummary summary = summarize(records);
  if (prefix.empty()) {
    write_records_csv(std::cout, records);
    write_summary_json(std::cerr, summary, cfg, seed);
    return;
  }
  std::ofstream csv(prefix + ".csv", std::ios::binary);
  write_records_csv(csv, records);
  std::ofstream js(prefix + ".json");
  write_summary_json(js, summary, cfg, seed);
  std::fprintf(stderr, "wrote %s.csv (%zu records) and %s.json\n", prefix.c_str(), records.size(), prefix.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained shortest paths: Lagrangian search over Dijkstra or hierarchical structures"};
  app.require_subcommand(1);

  // gen-udg
  auto* gen = app.add_subcommand("gen-udg", "generate a unit-disk graph and write it as text");
  VertexId udg_n = 1000;
  double udg_r = 0.1;
  std::uint64_t udg_seed = 1;
  std::string udg_out;
  gen->add_option("--n", udg_n, "number of points")->capture_default_str();
  gen->add_option("--r", udg_r, "connection radius")->capture_default_str();
  gen->add_option("--seed", udg_seed, "random seed")->capture_default_str();
  gen->add_option("--out", udg_out, "output file")->required();

  // load-dimacs
  auto* load = app.add_subcommand("load-dimacs", "load a DIMACS distance/time pair and report its size");
  GraphSource load_src;
  load_src.add_to(load);
  std::string load_out;
  load->add_option("--out", load_out, "write <out>.cost.gr and <out>.length.gr (weights x100)");

  // bench-sp / bench-csp share most options.
  struct BenchOptions {
    GraphSource src;
    std::string engines;
    std::string ks = "1,2,3";
    std::string pmaxes = "1,2,3";
    std::string classes = "25,50,75";
    std::uint32_t trials = 10;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double theta = 0.5;
    std::string search = "juttner";
    std::string reference = "auto";
    std::string metric = "hops";
    std::string perspective = "per-alpha";
    std::size_t exact_budget = 1'000'000;
    std::string out;
  };
  BenchOptions sp_opt, csp_opt;
  auto add_bench = [](CLI::App* cmd, BenchOptions& o, bool csp) {
    o.src.add_to(cmd);
    cmd->add_option("--engine", o.engines, "comma list of Dij / <k>-HS<p>; overrides --k/--pmax");
    cmd->add_option("--k", o.ks, "comma list of k values")->capture_default_str();
    cmd->add_option("--pmax", o.pmaxes, "comma list of p_max values")->capture_default_str();
    cmd->add_option("--classes", o.classes, "comma list of percent-of-diameter classes")->capture_default_str();
    cmd->add_option("--trials", o.trials, "instances per class")->capture_default_str();
    cmd->add_option("--seed", o.seed, "instance seed")->capture_default_str();
    cmd->add_option("--workers", o.workers, "worker threads (1 for clean timing)")->capture_default_str();
    cmd->add_option("--metric", o.metric, "distance for classes: hops or cost")
        ->check(CLI::IsMember({"hops", "cost"}))
        ->capture_default_str();
    cmd->add_option("--perspective", o.perspective, "perspective arcs: per-alpha or fixed")
        ->check(CLI::IsMember({"per-alpha", "fixed"}))
        ->capture_default_str();
    cmd->add_option("--beta-theta", o.theta, "beta = b_min + theta*(b(P(0)) - b_min)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "write <out>.csv and <out>.json instead of stdout/stderr");
    if (csp) {
      cmd->add_option("--search", o.search, "alpha search rule")
          ->check(CLI::IsMember({"juttner", "dichotomy"}))
          ->capture_default_str();
      cmd->add_option("--reference", o.reference, "ratio reference: auto, exact or dij")
          ->check(CLI::IsMember({"auto", "exact", "dij"}))
          ->capture_default_str();
      cmd->add_option("--exact-budget", o.exact_budget, "label budget of the exact reference")->capture_default_str();
    }
  };
  auto* bench_sp = app.add_subcommand("bench-sp", "unconstrained shortest paths: HS engines against Dijkstra");
  add_bench(bench_sp, sp_opt, false);
  auto* bench_csp = app.add_subcommand("bench-csp", "constrained paths: Lagrangian search over each engine");
  add_bench(bench_csp, csp_opt, true);

  // exact
  auto* exact = app.add_subcommand("exact", "solve one instance exactly and with the Lagrangian search");
  GraphSource exact_src;
  exact_src.add_to(exact);
  VertexId ex_s = 0, ex_t = 0;
  Length ex_beta = 0;
  std::string ex_engines = "Dij";
  std::string ex_search = "juttner";
  std::string ex_probes;
  std::size_t ex_budget = ExactOptions{}.label_budget;
  exact->add_option("--s", ex_s, "source vertex (0-based)")->required();
  exact->add_option("--t", ex_t, "target vertex (0-based)")->required();
  exact->add_option("--beta", ex_beta, "length budget")->required();
  exact->add_option("--engine", ex_engines, "comma list of engines to compare")->capture_default_str();
  exact->add_option("--search", ex_search, "alpha search rule")
      ->check(CLI::IsMember({"juttner", "dichotomy"}))
      ->capture_default_str();
  exact->add_option("--probe-log", ex_probes, "write every alpha probe to this file");
  exact->add_option("--exact-budget", ex_budget, "label budget of the exact oracle")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Graph g = generate_udg(udg_n, udg_r, udg_seed);
      std::ofstream out(udg_out);
      write_udg(out, g, udg_r, udg_seed);
      if (!out) throw std::runtime_error("cannot write " + udg_out);
      std::cout << graph_json(g).dump() << '\n';
    } else if (*load) {
      Graph g = load_src.load();
      if (!load_out.empty()) {
        std::ofstream c(load_out + ".cost.gr"), l(load_out + ".length.gr");
        write_dimacs(c, g, ArcWeight::cost);
        write_dimacs(l, g, ArcWeight::length);
      }
      std::cout << graph_json(g).dump() << '\n';
    } else if (*bench_sp || *bench_csp) {
      const bool csp = bench_csp->parsed();
      BenchOptions& o = csp ? csp_opt : sp_opt;
      Graph g = o.src.load();
      std::vector<Algorithm> algorithms;
      if (!o.engines.empty()) {
        for (const auto& name : split_list(o.engines)) algorithms.push_back({csp, EngineSpec::parse(name)});
      } else {
        algorithms.push_back({csp, EngineSpec::dijkstra()});
        for (const auto& k : split_list(o.ks)) {
          for (const auto& p : split_list(o.pmaxes)) {
            algorithms.push_back({csp, EngineSpec::hs(std::stoul(k), std::stoul(p))});
          }
        }
      }
      std::vector<int> classes;
      for (const auto& c : split_list(o.classes)) classes.push_back(std::stoi(c));
      BenchConfig cfg;
      cfg.graph_id = o.src.id();
      cfg.beta_theta = o.theta;
      cfg.rule = parse_search_rule(o.search);
      cfg.reference = parse_reference_policy(o.reference);
      cfg.metric = o.metric == "cost" ? DistanceMetric::cost : DistanceMetric::hops;
      cfg.perspective = o.perspective == "fixed" ? PerspectiveMode::fixed : PerspectiveMode::per_alpha;
      cfg.exact_budget = o.exact_budget;
      cfg.workers = o.workers;
      auto records = run_matrix(g, classes, algorithms, o.trials, o.seed, cfg);
      write_outputs(o.out, records, cfg, o.seed);
    } else if (*exact) {
      Graph g = exact_src.load();
      validate_instance(g, {ex_s, ex_t, ex_beta});
      json doc;
      doc["graph"] = graph_json(g);
      doc["instance"] = {{"s", ex_s}, {"t", ex_t}, {"beta", ex_beta}};
      try {
        ExactStats stats;
        auto best = exact_csp(g, ex_s, ex_t, ex_beta, {ex_budget}, &stats);
        doc["exact"] = best ? path_json(*best) : json(nullptr);
        doc["exact_labels"] = stats.labels_created;
      } catch (const OracleOverflow& e) {
        doc["exact"] = "overflow";
      }
      std::ofstream probes;
      if (!ex_probes.empty()) probes.open(ex_probes);
      for (const auto& name : split_list(ex_engines)) {
        LaracResult r = solve(g, ex_s, ex_t, ex_beta, EngineSpec::parse(name), parse_search_rule(ex_search));
        json entry{{"status", to_string(r.status)},
                   {"alpha_star", r.alpha_star.str()},
                   {"lower_bound", r.lower_bound.str()},
                   {"ratio_bound", r.ratio_bound ? json(r.ratio_bound->str()) : json(nullptr)},
                   {"ratio_ceiling", r.ratio_ceiling},
                   {"bound_certified", r.bound_certified},
                   {"iterations", r.iterations}};
        entry["path"] = r.path ? path_json(*r.path) : json(nullptr);
        if (r.witness) entry["witness"] = path_json(*r.witness);
        doc["larac"][name] = entry;
        if (probes.is_open()) write_probe_log(probes, r);
      }
      std::cout << doc.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
