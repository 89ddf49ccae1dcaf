#pragma once

#include <cstdint>
#include <limits>
#include <ranges>
#include <span>
#include <vector>

namespace cspath {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;
using Cost = std::int64_t;
using Length = std::int64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ArcSpec {
  VertexId tail;
  VertexId head;
  Cost cost;
  Length length;
};

/// Immutable directed multigraph in compressed adjacency form. Every arc
/// carries a non-negative integer cost and length. Arc ids follow the input
/// order after a stable grouping by tail, so the out-arcs of a vertex are a
/// contiguous id range.
class Graph {
 public:
  Graph() = default;
  Graph(VertexId num_vertices, std::vector<ArcSpec> arcs, std::vector<Point> coords = {});

  VertexId num_vertices() const { return num_vertices_; }
  ArcId num_arcs() const { return static_cast<ArcId>(heads_.size()); }

  VertexId tail(ArcId a) const { return tails_[a]; }
  VertexId head(ArcId a) const { return heads_[a]; }
  Cost cost(ArcId a) const { return costs_[a]; }
  Length length(ArcId a) const { return lengths_[a]; }

  auto out_arcs(VertexId v) const { return std::views::iota(out_offsets_[v], out_offsets_[v + 1]); }
  std::span<const ArcId> in_arcs(VertexId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  std::uint32_t out_degree(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::uint32_t in_degree(VertexId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  // A and B: the largest arc cost and length (0 for an arcless graph).
  Cost max_cost() const { return max_cost_; }
  Length max_length() const { return max_length_; }

  bool has_coords() const { return !coords_.empty(); }
  const Point& coord(VertexId v) const { return coords_[v]; }
  std::span<const Point> coords() const { return coords_; }

  std::vector<ArcSpec> arc_list() const;
  Graph reversed() const;
  Graph with_coords(std::vector<Point> coords) const;

  friend bool operator==(const Graph& lhs, const Graph& rhs);

 private:
  VertexId num_vertices_ = 0;
  std::vector<ArcId> out_offsets_{0};
  std::vector<VertexId> heads_;
  std::vector<VertexId> tails_;
  std::vector<Cost> costs_;
  std::vector<Length> lengths_;
  std::vector<ArcId> in_offsets_{0};
  std::vector<ArcId> in_arcs_;
  std::vector<Point> coords_;
  Cost max_cost_ = 0;
  Length max_length_ = 0;
};

/// An s-t arc sequence with its cost a(P) and length b(P).
struct Path {
  VertexId source = kNoVertex;
  VertexId target = kNoVertex;
  std::vector<ArcId> arcs;
  Cost cost = 0;
  Length length = 0;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Builds a path from an arc sequence starting at `source`, summing weights.
/// Throws std::invalid_argument if consecutive arcs do not connect.
Path make_path(const Graph& g, VertexId source, std::vector<ArcId> arcs);

bool is_simple(const Graph& g, const Path& p);

/// Loop erasure: drops every closed sub-walk, keeping a simple path with
/// the same endpoints and no larger cost or length.
Path remove_cycles(const Graph& g, const Path& p);

inline bool is_feasible(const Path& p, Length beta) { return p.length <= beta; }

struct InstanceSpec {
  VertexId source = kNoVertex;
  VertexId target = kNoVertex;
  Length beta = 0;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

/// Throws std::invalid_argument unless s != t, both are vertices of g and beta > 0.
void validate_instance(const Graph& g, const InstanceSpec& spec);

}  // namespace cspath
