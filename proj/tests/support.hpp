#pragma once

// Generators and brute-force oracles shared by the unit tests and the
// acceptance runner. Everything here is deliberately naive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "cspath/graph.hpp"
#include "cspath/random.hpp"
#include "cspath/rational.hpp"

namespace testsupport {

using namespace cspath;

struct RandomGraphSpec {
  VertexId n = 10;
  std::uint32_t arcs = 30;
  Cost max_cost = 8;
  Length min_length = 0;
  Length max_length = 8;
  bool acyclic = false;  // only arcs from lower to higher id
};

inline Graph random_graph(const RandomGraphSpec& spec, Rng& rng) {
  std::vector<ArcSpec> arcs;
  for (std::uint32_t i = 0; i < spec.arcs; ++i) {
    auto u = static_cast<VertexId>(rng.below(spec.n));
    auto v = static_cast<VertexId>(rng.below(spec.n));
    if (u == v) continue;
    if (spec.acyclic && u > v) std::swap(u, v);
    Cost a = static_cast<Cost>(rng.below(static_cast<std::uint64_t>(spec.max_cost) + 1));
    Length b = spec.min_length +
               static_cast<Length>(rng.below(static_cast<std::uint64_t>(spec.max_length - spec.min_length) + 1));
    arcs.push_back({u, v, a, b});
  }
  return Graph(spec.n, std::move(arcs));
}

// Guarantees an s -> t route by threading a random Hamiltonian-ish chain.
inline Graph random_connected_graph(const RandomGraphSpec& spec, Rng& rng, VertexId s, VertexId t) {
  Graph base = random_graph(spec, rng);
  auto arcs = base.arc_list();
  std::vector<VertexId> order;
  for (VertexId v = 0; v < spec.n; ++v) {
    if (v != s && v != t && rng.below(2) == 0) order.push_back(v);
  }
  VertexId prev = s;
  for (VertexId v : order) {
    if (spec.acyclic && v < prev) continue;
    arcs.push_back({prev, v, static_cast<Cost>(rng.below(spec.max_cost + 1)),
                    spec.min_length + static_cast<Length>(rng.below(spec.max_length - spec.min_length + 1))});
    prev = v;
  }
  arcs.push_back({prev, t, static_cast<Cost>(rng.below(spec.max_cost + 1)),
                  spec.min_length + static_cast<Length>(rng.below(spec.max_length - spec.min_length + 1))});
  return Graph(spec.n, std::move(arcs));
}

struct PathSummary {
  Cost cost;
  Length length;
  std::vector<ArcId> arcs;
};

/// Every simple s-t path (s != t) by depth-first enumeration.
inline std::vector<PathSummary> all_simple_paths(const Graph& g, VertexId s, VertexId t,
                                                 std::size_t limit = 5'000'000) {
  std::vector<PathSummary> out;
  std::vector<char> on_path(g.num_vertices(), 0);
  std::vector<ArcId> stack;
  std::function<void(VertexId, Cost, Length)> dfs = [&](VertexId v, Cost c, Length l) {
    if (out.size() >= limit) return;
    if (v == t) {
      out.push_back({c, l, stack});
      return;
    }
    on_path[v] = 1;
    for (ArcId a : g.out_arcs(v)) {
      VertexId h = g.head(a);
      if (on_path[h]) continue;
      stack.push_back(a);
      dfs(h, c + g.cost(a), l + g.length(a));
      stack.pop_back();
    }
    on_path[v] = 0;
  };
  dfs(s, 0, 0);
  return out;
}

/// Minimum of a + alpha*b over all simple s-t paths.
inline std::optional<Rational> brute_min_weight(const std::vector<PathSummary>& paths, const Rational& alpha) {
  std::optional<Rational> best;
  for (const auto& p : paths) {
    Rational w = Rational(p.cost) + alpha * Rational(p.length);
    if (!best || w < *best) best = w;
  }
  return best;
}

/// Optimum of the constrained problem by enumeration.
inline std::optional<Cost> brute_csp(const std::vector<PathSummary>& paths, Length beta) {
  std::optional<Cost> best;
  for (const auto& p : paths) {
    if (p.length <= beta && (!best || p.cost < *best)) best = p.cost;
  }
  return best;
}

/// Minorant breakpoint: the smallest alpha at which some path of length
/// <= beta attains the lower envelope of all path lines. Scans the candidate
/// breakpoints (pairwise line intersections) in increasing order.
inline std::optional<Rational> brute_alpha_star(const std::vector<PathSummary>& paths, Length beta) {
  std::vector<Rational> candidates{Rational(0)};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (paths[i].length > paths[j].length && paths[j].cost > paths[i].cost) {
        candidates.emplace_back(paths[j].cost - paths[i].cost, paths[i].length - paths[j].length);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const Rational& alpha : candidates) {
    auto env = brute_min_weight(paths, alpha);
    for (const auto& p : paths) {
      if (p.length <= beta && Rational(p.cost) + alpha * Rational(p.length) == *env) return alpha;
    }
  }
  return std::nullopt;
}

/// Plain BFS hop distances over out-arcs, -1 where unreachable.
inline std::vector<std::int64_t> bfs(const Graph& g, VertexId s) {
  std::vector<std::int64_t> d(g.num_vertices(), -1);
  std::queue<VertexId> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (ArcId a : g.out_arcs(v)) {
      if (d[g.head(a)] < 0) {
        d[g.head(a)] = d[v] + 1;
        q.push(g.head(a));
      }
    }
  }
  return d;
}

/// Bellman-Ford over exact rationals: independent of the heap code.
inline std::vector<std::optional<Rational>> bellman_ford(const Graph& g, VertexId s, const Rational& alpha) {
  std::vector<std::optional<Rational>> d(g.num_vertices());
  d[s] = Rational(0);
  for (VertexId round = 0; round < g.num_vertices(); ++round) {
    bool changed = false;
    for (ArcId a = 0; a < g.num_arcs(); ++a) {
      if (!d[g.tail(a)]) continue;
      Rational w = *d[g.tail(a)] + Rational(g.cost(a)) + alpha * Rational(g.length(a));
      if (!d[g.head(a)] || w < *d[g.head(a)]) {
        d[g.head(a)] = w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

}  // namespace testsupport
