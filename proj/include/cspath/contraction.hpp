#pragma once

#include <span>
#include <vector>

#include "cspath/graph.hpp"

namespace cspath {

/// Result of collapsing degree-2 chains. Removed chain-interior vertices are
/// dropped and the survivors renumbered densely; every new arc remembers the
/// input arcs it replaces.
struct ContractedGraph {
  Graph graph;
  std::vector<VertexId> original_vertex;          // new id -> input id
  std::vector<VertexId> new_vertex;               // input id -> new id, kNoVertex if removed
  std::vector<std::vector<ArcId>> original_arcs;  // new arc -> input arcs, in walk order
};

/// Replaces every maximal chain whose interior vertices have degree 2 by a
/// single arc carrying the summed cost and length. A vertex is a chain
/// interior if it is not in `keep` and either has exactly one in-arc and one
/// out-arc to two distinct other vertices, or is joined to exactly two
/// distinct neighbours by one symmetric arc pair each. Repeats until no
/// such vertex is left.
ContractedGraph contract_degree2(const Graph& g, std::span<const VertexId> keep = {});

/// Maps a path of the contracted graph back onto the input graph.
Path expand_path(const ContractedGraph& contracted, const Graph& original, const Path& p);

}  // namespace cspath
