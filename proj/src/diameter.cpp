#include "cspath/diameter.hpp"

#include <algorithm>
#include <stdexcept>

#include "cspath/dijkstra.hpp"
#include "cspath/random.hpp"

namespace cspath {

std::vector<std::int64_t> bfs_hops(const Graph& g, VertexId source) {
  std::vector<std::int64_t> hops(g.num_vertices(), kNoDistance);
  std::vector<VertexId> queue{source};
  hops[source] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId u = queue[i];
    for (ArcId a : g.out_arcs(u)) {
      VertexId v = g.head(a);
      if (hops[v] == kNoDistance) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

std::vector<std::int64_t> distances_from(const Graph& g, VertexId source, DistanceMetric metric) {
  if (metric == DistanceMetric::hops) return bfs_hops(g, source);
  ShortestPathTree tree = dijkstra(g, source, WeightView::at(Rational(0)));
  std::vector<std::int64_t> out(g.num_vertices(), kNoDistance);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (tree.reached(v)) out[v] = static_cast<std::int64_t>(tree.dist[v]);
  }
  return out;
}

std::int64_t estimate_diameter(const Graph& g, std::uint64_t seed, int sweeps, DistanceMetric metric) {
  if (g.num_vertices() == 0) throw std::invalid_argument("diameter of an empty graph");
  Rng rng(seed);
  // Farthest reached vertex (smallest id on ties) and its distance.
  auto farthest = [&](VertexId from) {
    auto d = distances_from(g, from, metric);
    VertexId best = from;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (d[v] != kNoDistance && d[v] > d[best]) best = v;
    }
    return std::pair{best, d[best]};
  };
  std::int64_t diameter = 0;
  for (int i = 0; i < std::max(1, sweeps); ++i) {
    VertexId start = static_cast<VertexId>(rng.below(g.num_vertices()));
    auto [far, d1] = farthest(start);
    auto [far2, d2] = farthest(far);
    diameter = std::max({diameter, d1, d2});
  }
  return diameter;
}

}  // namespace cspath
