#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "cspath/graph.hpp"
#include "cspath/random.hpp"

namespace cspath {

// Euclidean weights are multiplied by this factor and truncated to integers.
inline constexpr double kUdgWeightScale = 1e4;
inline constexpr double kUdgNoiseMin = 1.0;
inline constexpr double kUdgNoiseMax = 3.0;

/// Unit-disk graph over `points`: each pair closer than `radius` gets two
/// opposite arcs with cost = distance and length = distance x noise, noise
/// uniform in [1, 3] and drawn once per pair, in (u, v) order with u < v.
Graph build_udg(std::span<const Point> points, double radius, Rng& noise);

/// n points uniform in the unit square, then build_udg with the same stream.
Graph generate_udg(VertexId n, double radius, std::uint64_t seed);

struct UdgFile {
  Graph graph;
  double radius = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr int kUdgFormatVersion = 1;

/// Text format: `c udg-format <version>`, `udg <n> <m> <r> <seed>`,
/// then `v <id> <x> <y>` and `a <tail> <head> <cost> <length>` lines (0-based).
void write_udg(std::ostream& out, const Graph& g, double radius, std::uint64_t seed);
UdgFile read_udg(std::istream& in);

}  // namespace cspath
