#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "cspath/dijkstra.hpp"
#include "cspath/graph.hpp"
#include "cspath/hs.hpp"

namespace cspath {

enum class PerspectiveMode {
  per_alpha,  // perspective arcs recomputed from c(alpha) at every probe
  fixed,      // computed once from the costs (alpha = 0)
};

struct EngineSpec {
  enum class Kind { dijkstra, hs } kind = Kind::dijkstra;
  std::uint32_t k = 1;
  std::uint32_t p_max = 1;
  PerspectiveMode perspective = PerspectiveMode::per_alpha;

  static EngineSpec dijkstra() { return {}; }
  static EngineSpec hs(std::uint32_t k, std::uint32_t p_max,
                       PerspectiveMode mode = PerspectiveMode::per_alpha) {
    return {Kind::hs, k, p_max, mode};
  }

  /// "Dij" or "<k>-HS<p_max>".
  std::string name() const;
  /// Inverse of name(); throws std::invalid_argument.
  static EngineSpec parse(const std::string& name);
};

/// Min-weight s-t walk under c(alpha) with its cost and length.
struct EngineResult {
  Path walk;
  ScaledWeight weight = 0;
};

/// Shortest-path oracle for a fixed (s, t); queried once per alpha.
class PathEngine {
 public:
  virtual ~PathEngine() = default;
  virtual std::optional<EngineResult> shortest(const WeightView& w) = 0;
  // True when results are exact shortest paths of the whole graph.
  virtual bool exact() const = 0;
  virtual std::string name() const = 0;
};

/// Builds the engine for (g, s, t); for HS engines this includes building
/// the level skeleton. `g` must outlive the engine.
std::unique_ptr<PathEngine> make_engine(const Graph& g, VertexId s, VertexId t, const EngineSpec& spec);

}  // namespace cspath
