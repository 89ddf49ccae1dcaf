#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "cspath/graph.hpp"
#include "cspath/rational.hpp"

namespace cspath {

/// Aggregated weight c(alpha) = a + alpha*b multiplied by alpha's
/// denominator, so that every comparison at a fixed alpha is an exact
/// integer comparison.
using ScaledWeight = Int128;
inline constexpr ScaledWeight kUnreachable = std::numeric_limits<ScaledWeight>::max();

/// Arc weights c_ij(alpha) = a_ij + alpha*b_ij, evaluated on the fly from the
/// integer cost and length. The limit alpha -> infinity is available as a
/// pure-length view whose ties are broken by cost.
class WeightView {
 public:
  static WeightView at(const Rational& alpha);
  static WeightView length_only();

  ScaledWeight weight(Cost a, Length b) const { return cost_coef_ * a + length_coef_ * b; }
  // Secondary key among equal weights: length, or cost for the pure-length view.
  std::int64_t tie_key(Cost a, Length b) const { return cost_coef_ == 0 ? a : b; }

  bool is_length_only() const { return cost_coef_ == 0; }
  const Rational& alpha() const;
  Int128 scale() const { return cost_coef_; }
  // Unscaled value of a path weight.
  Rational aggregated(ScaledWeight w) const { return is_length_only() ? Rational(w) : Rational(w, cost_coef_); }

  /// Throws std::overflow_error if a simple-path weight in g could leave
  /// the 128-bit range.
  void check_range(const Graph& g) const;

 private:
  WeightView(Int128 cost_coef, Int128 length_coef, Rational alpha)
      : cost_coef_(cost_coef), length_coef_(length_coef), alpha_(alpha) {}

  Int128 cost_coef_;
  Int128 length_coef_;
  Rational alpha_;
};

/// Single-source labels ordered by (weight, tie key). For a reverse tree
/// `parent[v]` is the first arc of v's path towards the root.
struct ShortestPathTree {
  VertexId root = kNoVertex;
  bool reverse = false;
  std::vector<ScaledWeight> dist;
  std::vector<std::int64_t> tie;
  std::vector<ArcId> parent;

  bool reached(VertexId v) const { return dist[v] != kUnreachable; }
};

/// Binary-heap label setting with lazy deletion. With `stop_at` set the
/// search ends once that vertex is settled; only its label (and those of
/// already settled vertices) are final then.
ShortestPathTree dijkstra(const Graph& g, VertexId source, const WeightView& w, VertexId stop_at = kNoVertex);

/// Distances to `target` over reversed arcs.
ShortestPathTree reverse_dijkstra(const Graph& g, VertexId target, const WeightView& w);

/// Path from s to t read off a tree rooted at s (forward) or at t (reverse);
/// nullopt if unreachable.
std::optional<Path> extract_path(const Graph& g, const ShortestPathTree& tree, VertexId s, VertexId t);

}  // namespace cspath
