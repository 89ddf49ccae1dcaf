#include "cspath/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace cspath {

namespace {

enum class Role : unsigned char { endpoint, directed_interior, undirected_interior };

Role classify(const Graph& g, VertexId v) {
  if (g.in_degree(v) == 1 && g.out_degree(v) == 1) {
    VertexId from = g.tail(g.in_arcs(v)[0]);
    VertexId to = g.head(*g.out_arcs(v).begin());
    if (from != v && to != v && from != to) return Role::directed_interior;
    return Role::endpoint;
  }
  if (g.in_degree(v) == 2 && g.out_degree(v) == 2) {
    auto out = g.out_arcs(v);
    VertexId h0 = g.head(out[0]);
    VertexId h1 = g.head(out[1]);
    VertexId t0 = g.tail(g.in_arcs(v)[0]);
    VertexId t1 = g.tail(g.in_arcs(v)[1]);
    if (h0 == v || h1 == v || h0 == h1) return Role::endpoint;
    bool symmetric = (t0 == h0 && t1 == h1) || (t0 == h1 && t1 == h0);
    if (symmetric) return Role::undirected_interior;
  }
  return Role::endpoint;
}

ArcId continue_walk(const Graph& g, VertexId v, VertexId came_from, Role role) {
  auto out = g.out_arcs(v);
  if (role == Role::directed_interior) return out[0];
  return g.head(out[0]) != came_from ? out[0] : out[1];
}

// One contraction pass; `changed` reports whether any vertex was removed.
ContractedGraph contract_once(const Graph& g, const std::vector<bool>& pinned, bool& changed) {
  const VertexId n = g.num_vertices();
  std::vector<Role> role(n, Role::endpoint);
  for (VertexId v = 0; v < n; ++v) {
    if (!pinned[v]) role[v] = classify(g, v);
  }

  struct Walk {
    VertexId tail;
    VertexId head;
    Cost cost;
    Length length;
    std::vector<ArcId> arcs;
  };
  std::vector<Walk> walks;
  std::vector<bool> covered(g.num_arcs(), false);
  std::vector<bool> crossed(n, false);

  for (ArcId first = 0; first < g.num_arcs(); ++first) {
    VertexId start = g.tail(first);
    if (role[start] != Role::endpoint) continue;
    Walk w{start, g.head(first), g.cost(first), g.length(first), {first}};
    covered[first] = true;
    VertexId prev = start;
    while (role[w.head] != Role::endpoint) {
      if (w.arcs.size() > g.num_arcs()) throw std::logic_error("degree-2 walk does not terminate");
      crossed[w.head] = true;
      ArcId next = continue_walk(g, w.head, prev, role[w.head]);
      covered[next] = true;
      prev = w.head;
      w.head = g.head(next);
      w.cost += g.cost(next);
      w.length += g.length(next);
      w.arcs.push_back(next);
    }
    // A chain that closes on itself collapses to a self-loop, which no
    // simple path can use.
    if (w.arcs.size() > 1 && w.head == w.tail) continue;
    walks.push_back(std::move(w));
  }

  // Interior vertices of closed internal-only cycles are never crossed by a
  // walk; they and their arcs are kept untouched.
  std::vector<bool> keep_vertex(n, false);
  for (VertexId v = 0; v < n; ++v) keep_vertex[v] = role[v] == Role::endpoint || !crossed[v];
  for (ArcId a = 0; a < g.num_arcs(); ++a) {
    if (covered[a]) continue;
    if (crossed[g.tail(a)] || crossed[g.head(a)]) {
      throw std::logic_error("uncovered arc touches a contracted chain");
    }
    walks.push_back({g.tail(a), g.head(a), g.cost(a), g.length(a), {a}});
  }

  ContractedGraph out;
  out.new_vertex.assign(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (!keep_vertex[v]) continue;
    out.new_vertex[v] = static_cast<VertexId>(out.original_vertex.size());
    out.original_vertex.push_back(v);
  }
  changed = out.original_vertex.size() != n;

  std::stable_sort(walks.begin(), walks.end(), [](const Walk& l, const Walk& r) { return l.arcs[0] < r.arcs[0]; });
  std::vector<ArcSpec> arcs;
  arcs.reserve(walks.size());
  for (Walk& w : walks) {
    arcs.push_back({out.new_vertex[w.tail], out.new_vertex[w.head], w.cost, w.length});
    out.original_arcs.push_back(std::move(w.arcs));
  }
  std::vector<Point> coords;
  if (g.has_coords()) {
    for (VertexId v : out.original_vertex) coords.push_back(g.coord(v));
  }
  // Walks are ordered by first arc, hence by tail, so the stable grouping
  // inside Graph keeps new arc ids aligned with original_arcs.
  out.graph = Graph(static_cast<VertexId>(out.original_vertex.size()), std::move(arcs), std::move(coords));
  return out;
}

}  // namespace

ContractedGraph contract_degree2(const Graph& g, std::span<const VertexId> keep) {
  ContractedGraph result;
  result.graph = g;
  result.original_vertex.resize(g.num_vertices());
  result.new_vertex.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) result.original_vertex[v] = result.new_vertex[v] = v;
  result.original_arcs.resize(g.num_arcs());
  for (ArcId a = 0; a < g.num_arcs(); ++a) result.original_arcs[a] = {a};

  std::vector<bool> pinned(g.num_vertices(), false);
  for (VertexId v : keep) {
    if (v >= g.num_vertices()) throw std::invalid_argument("pinned vertex out of range");
    pinned[v] = true;
  }

  bool changed = true;
  while (changed) {
    ContractedGraph step = contract_once(result.graph, pinned, changed);
    if (!changed && step.graph.num_arcs() == result.graph.num_arcs()) break;

    std::vector<std::vector<ArcId>> composed(step.original_arcs.size());
    for (ArcId a = 0; a < step.original_arcs.size(); ++a) {
      for (ArcId mid : step.original_arcs[a]) {
        const auto& base = result.original_arcs[mid];
        composed[a].insert(composed[a].end(), base.begin(), base.end());
      }
    }
    std::vector<VertexId> original_vertex(step.original_vertex.size());
    for (VertexId v = 0; v < original_vertex.size(); ++v) {
      original_vertex[v] = result.original_vertex[step.original_vertex[v]];
    }
    std::vector<VertexId> new_vertex(g.num_vertices(), kNoVertex);
    for (VertexId v = 0; v < original_vertex.size(); ++v) new_vertex[original_vertex[v]] = v;
    std::vector<bool> next_pinned(original_vertex.size());
    for (VertexId v = 0; v < original_vertex.size(); ++v) next_pinned[v] = pinned[step.original_vertex[v]];

    result.graph = std::move(step.graph);
    result.original_arcs = std::move(composed);
    result.original_vertex = std::move(original_vertex);
    result.new_vertex = std::move(new_vertex);
    pinned = std::move(next_pinned);
  }
  return result;
}

Path expand_path(const ContractedGraph& contracted, const Graph& original, const Path& p) {
  std::vector<ArcId> arcs;
  for (ArcId a : p.arcs) {
    const auto& chain = contracted.original_arcs.at(a);
    arcs.insert(arcs.end(), chain.begin(), chain.end());
  }
  return make_path(original, contracted.original_vertex.at(p.source), std::move(arcs));
}

}  // namespace cspath
