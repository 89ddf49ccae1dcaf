#include "cspath/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace cspath {

Graph::Graph(VertexId num_vertices, std::vector<ArcSpec> arcs, std::vector<Point> coords)
    : num_vertices_(num_vertices), coords_(std::move(coords)) {
  if (!coords_.empty() && coords_.size() != num_vertices) {
    throw std::invalid_argument("coordinate count does not match vertex count");
  }
  if (arcs.size() >= kNoArc) throw std::length_error("too many arcs");

  std::vector<ArcId> degree(num_vertices + 1, 0);
  for (const ArcSpec& arc : arcs) {
    if (arc.tail >= num_vertices || arc.head >= num_vertices) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (arc.cost < 0 || arc.length < 0) throw std::invalid_argument("negative arc weight");
    ++degree[arc.tail + 1];
  }
  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const ArcSpec& l, const ArcSpec& r) { return l.tail < r.tail; });

  out_offsets_.assign(num_vertices + 1, 0);
  for (VertexId v = 0; v < num_vertices; ++v) out_offsets_[v + 1] = out_offsets_[v] + degree[v + 1];

  const std::size_t m = arcs.size();
  heads_.resize(m);
  tails_.resize(m);
  costs_.resize(m);
  lengths_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    heads_[i] = arcs[i].head;
    tails_[i] = arcs[i].tail;
    costs_[i] = arcs[i].cost;
    lengths_[i] = arcs[i].length;
    max_cost_ = std::max(max_cost_, arcs[i].cost);
    max_length_ = std::max(max_length_, arcs[i].length);
  }

  in_offsets_.assign(num_vertices + 1, 0);
  for (VertexId h : heads_) ++in_offsets_[h + 1];
  for (VertexId v = 0; v < num_vertices; ++v) in_offsets_[v + 1] += in_offsets_[v];
  in_arcs_.resize(m);
  std::vector<ArcId> fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (ArcId a = 0; a < m; ++a) in_arcs_[fill[heads_[a]]++] = a;
}

std::vector<ArcSpec> Graph::arc_list() const {
  std::vector<ArcSpec> out;
  out.reserve(num_arcs());
  for (ArcId a = 0; a < num_arcs(); ++a) out.push_back({tails_[a], heads_[a], costs_[a], lengths_[a]});
  return out;
}

Graph Graph::reversed() const {
  auto arcs = arc_list();
  for (ArcSpec& arc : arcs) std::swap(arc.tail, arc.head);
  return Graph(num_vertices_, std::move(arcs), coords_);
}

Graph Graph::with_coords(std::vector<Point> coords) const {
  return Graph(num_vertices_, arc_list(), std::move(coords));
}

bool operator==(const Graph& lhs, const Graph& rhs) {
  auto same_points = [](std::span<const Point> a, std::span<const Point> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; });
  };
  return lhs.num_vertices_ == rhs.num_vertices_ && lhs.out_offsets_ == rhs.out_offsets_ &&
         lhs.heads_ == rhs.heads_ && lhs.costs_ == rhs.costs_ && lhs.lengths_ == rhs.lengths_ &&
         same_points(lhs.coords_, rhs.coords_);
}

Path make_path(const Graph& g, VertexId source, std::vector<ArcId> arcs) {
  Path p;
  p.source = source;
  VertexId at = source;
  for (ArcId a : arcs) {
    if (a >= g.num_arcs()) throw std::invalid_argument("arc id out of range");
    if (g.tail(a) != at) {
      throw std::invalid_argument("arc " + std::to_string(a) + " does not continue the path");
    }
    at = g.head(a);
    p.cost += g.cost(a);
    p.length += g.length(a);
  }
  p.target = at;
  p.arcs = std::move(arcs);
  return p;
}

bool is_simple(const Graph& g, const Path& p) {
  std::vector<VertexId> seen;
  seen.reserve(p.arcs.size() + 1);
  seen.push_back(p.source);
  for (ArcId a : p.arcs) seen.push_back(g.head(a));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Path remove_cycles(const Graph& g, const Path& p) {
  // stack[i] is the vertex reached after kept[0..i); position maps it back.
  std::vector<ArcId> kept;
  std::vector<VertexId> stack{p.source};
  std::unordered_map<VertexId, std::size_t> position{{p.source, 0}};
  for (ArcId a : p.arcs) {
    VertexId h = g.head(a);
    if (auto it = position.find(h); it != position.end()) {
      std::size_t keep = it->second;
      for (std::size_t i = keep + 1; i < stack.size(); ++i) position.erase(stack[i]);
      stack.resize(keep + 1);
      kept.resize(keep);
    } else {
      kept.push_back(a);
      stack.push_back(h);
      position.emplace(h, kept.size());
    }
  }
  return make_path(g, p.source, std::move(kept));
}

void validate_instance(const Graph& g, const InstanceSpec& spec) {
  if (spec.source >= g.num_vertices() || spec.target >= g.num_vertices()) {
    throw std::invalid_argument("instance endpoint out of range");
  }
  if (spec.source == spec.target) throw std::invalid_argument("instance source equals target");
  if (spec.beta <= 0) throw std::invalid_argument("instance length budget must be positive");
}

}  // namespace cspath
