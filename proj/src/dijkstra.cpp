#include "cspath/dijkstra.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace cspath {

WeightView WeightView::at(const Rational& alpha) {
  if (alpha < Rational(0)) throw std::invalid_argument("alpha must be non-negative");
  return WeightView(alpha.den(), alpha.num(), alpha);
}

WeightView WeightView::length_only() { return WeightView(0, 1, Rational(0)); }

const Rational& WeightView::alpha() const {
  if (is_length_only()) throw std::logic_error("pure-length view has no finite alpha");
  return alpha_;
}

void WeightView::check_range(const Graph& g) const {
  Int128 per_arc = checked_add(checked_mul(cost_coef_, g.max_cost()), checked_mul(length_coef_, g.max_length()));
  Int128 total = checked_mul(per_arc, static_cast<Int128>(g.num_vertices()) + 1);
  // Leave headroom for the walks of leveled structures (up to k*n arcs).
  checked_mul(total, Int128{64});
}

namespace {

struct HeapEntry {
  ScaledWeight dist;
  std::int64_t tie;
  VertexId vertex;
  bool operator>(const HeapEntry& o) const {
    return std::tie(dist, tie, vertex) > std::tie(o.dist, o.tie, o.vertex);
  }
};

template <bool Reverse>
ShortestPathTree run(const Graph& g, VertexId root, const WeightView& w, VertexId stop_at) {
  const VertexId n = g.num_vertices();
  if (root >= n) throw std::invalid_argument("root vertex out of range");
  w.check_range(g);

  ShortestPathTree tree;
  tree.root = root;
  tree.reverse = Reverse;
  tree.dist.assign(n, kUnreachable);
  tree.tie.assign(n, 0);
  tree.parent.assign(n, kNoArc);
  std::vector<bool> settled(n, false);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  tree.dist[root] = 0;
  heap.push({0, 0, root});
  while (!heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    const VertexId u = top.vertex;
    if (settled[u]) continue;
    settled[u] = true;
    if (u == stop_at) break;

    auto relax = [&](ArcId a, VertexId v) {
      if (settled[v]) return;
      ScaledWeight d = top.dist + w.weight(g.cost(a), g.length(a));
      std::int64_t t = top.tie + w.tie_key(g.cost(a), g.length(a));
      if (d < tree.dist[v] || (d == tree.dist[v] && t < tree.tie[v])) {
        tree.dist[v] = d;
        tree.tie[v] = t;
        tree.parent[v] = a;
        heap.push({d, t, v});
      }
    };
    if constexpr (Reverse) {
      for (ArcId a : g.in_arcs(u)) relax(a, g.tail(a));
    } else {
      for (ArcId a : g.out_arcs(u)) relax(a, g.head(a));
    }
  }
  return tree;
}

}  // namespace

ShortestPathTree dijkstra(const Graph& g, VertexId source, const WeightView& w, VertexId stop_at) {
  return run<false>(g, source, w, stop_at);
}

ShortestPathTree reverse_dijkstra(const Graph& g, VertexId target, const WeightView& w) {
  return run<true>(g, target, w, kNoVertex);
}

std::optional<Path> extract_path(const Graph& g, const ShortestPathTree& tree, VertexId s, VertexId t) {
  std::vector<ArcId> arcs;
  if (!tree.reverse) {
    if (tree.root != s) throw std::invalid_argument("forward tree is not rooted at the source");
    if (!tree.reached(t)) return std::nullopt;
    for (VertexId v = t; v != s; v = g.tail(tree.parent[v])) arcs.push_back(tree.parent[v]);
    std::reverse(arcs.begin(), arcs.end());
  } else {
    if (tree.root != t) throw std::invalid_argument("reverse tree is not rooted at the target");
    if (!tree.reached(s)) return std::nullopt;
    for (VertexId v = s; v != t; v = g.head(tree.parent[v])) arcs.push_back(tree.parent[v]);
  }
  return make_path(g, s, std::move(arcs));
}

}  // namespace cspath
