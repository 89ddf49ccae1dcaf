#include "cspath/exact.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "cspath/dijkstra.hpp"

namespace cspath {

namespace {

struct Label {
  VertexId vertex;
  ArcId arc;            // arc that created the label, kNoArc at the source
  std::uint32_t parent;
  Cost cost;
  Length length;
};

struct QueueEntry {
  Int128 key;  // cost so far + cheapest completion
  Length length;
  std::uint32_t label;
  bool operator>(const QueueEntry& o) const { return std::tie(key, length, label) > std::tie(o.key, o.length, o.label); }
};

}  // namespace

std::optional<Path> exact_csp(const Graph& g, VertexId s, VertexId t, Length beta, const ExactOptions& options,
                              ExactStats* stats) {
  validate_instance(g, {s, t, beta});
  const VertexId n = g.num_vertices();
  // Remaining-length bound for infeasibility pruning, remaining-cost bound
  // as a consistent heuristic so the first settled label at t is optimal.
  const ShortestPathTree length_to_t = reverse_dijkstra(g, t, WeightView::length_only());
  const ShortestPathTree cost_to_t = reverse_dijkstra(g, t, WeightView::at(Rational(0)));
  if (!length_to_t.reached(s) || length_to_t.dist[s] > beta) return std::nullopt;

  std::vector<Length> settled_length(n, std::numeric_limits<Length>::max());
  std::vector<Label> labels{{s, kNoArc, 0, 0, 0}};
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue;
  queue.push({cost_to_t.dist[s], 0, 0});

  std::optional<std::uint32_t> found;
  while (!queue.empty()) {
    const std::uint32_t id = queue.top().label;
    queue.pop();
    const Label current = labels[id];
    // Settled labels here are no more expensive; a shorter one dominates.
    if (current.length >= settled_length[current.vertex]) continue;
    settled_length[current.vertex] = current.length;
    if (current.vertex == t) {
      found = id;
      break;
    }
    for (ArcId a : g.out_arcs(current.vertex)) {
      const VertexId w = g.head(a);
      const Length length = current.length + g.length(a);
      if (!length_to_t.reached(w) || length + length_to_t.dist[w] > beta) continue;
      if (length >= settled_length[w]) continue;
      if (labels.size() >= options.label_budget) {
        if (stats) stats->labels_created = labels.size();
        throw OracleOverflow("exact oracle exceeded its label budget");
      }
      const Cost cost = current.cost + g.cost(a);
      labels.push_back({w, a, id, cost, length});
      queue.push({Int128{cost} + cost_to_t.dist[w], length, static_cast<std::uint32_t>(labels.size() - 1)});
    }
  }
  if (stats) stats->labels_created = labels.size();
  if (!found) return std::nullopt;

  std::vector<ArcId> arcs;
  for (std::uint32_t id = *found; labels[id].arc != kNoArc; id = labels[id].parent) arcs.push_back(labels[id].arc);
  std::reverse(arcs.begin(), arcs.end());
  return make_path(g, s, std::move(arcs));
}

}  // namespace cspath
