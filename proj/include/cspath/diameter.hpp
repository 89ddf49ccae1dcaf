#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cspath/graph.hpp"

namespace cspath {

inline constexpr std::int64_t kNoDistance = std::numeric_limits<std::int64_t>::max();

// Hop counts are the native metric of the leveled structures; cost distances
// are offered for weighted instance classes.
enum class DistanceMetric { hops, cost };

/// Distances from `source` along out-arcs, kNoDistance where unreachable.
std::vector<std::int64_t> distances_from(const Graph& g, VertexId source, DistanceMetric metric);

/// Breadth-first hop counts from `source`.
std::vector<std::int64_t> bfs_hops(const Graph& g, VertexId source);

/// Lower bound on the diameter by repeated double sweeps from seeded random
/// starts. Exact on trees and cliques. Throws std::invalid_argument on an
/// empty graph.
std::int64_t estimate_diameter(const Graph& g, std::uint64_t seed = 0, int sweeps = 4,
                               DistanceMetric metric = DistanceMetric::hops);

}  // namespace cspath
