#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cspath/dijkstra.hpp"
#include "cspath/graph.hpp"

namespace cspath {

using CopyId = std::uint32_t;
inline constexpr CopyId kNoCopy = std::numeric_limits<CopyId>::max();

// level: between copies on neighbouring levels (k-HS).
// forward: DAG structure arc, head on any higher level.
// sink: into the single copy of t, from a copy on any level.
// shortcut: compressed chain of perspective arcs.
enum class HsArcKind : std::uint8_t { level, forward, sink, shortcut };

const char* to_string(HsArcKind kind);

struct HsCopy {
  VertexId vertex;
  std::uint32_t level;
};

struct HsArc {
  CopyId tail;
  CopyId head;
  Cost cost;
  Length length;
  HsArcKind kind;
  std::uint32_t ref;  // original arc id; chain index for shortcuts
};

/// Per-vertex perspective arc: the out-arc with the best projected progress
/// towards t per unit of weight, if that progress is positive.
class PerspectiveMap {
 public:
  PerspectiveMap() = default;
  explicit PerspectiveMap(std::vector<ArcId> arc_of) : arc_of_(std::move(arc_of)) {}

  ArcId arc(VertexId v) const { return v < arc_of_.size() ? arc_of_[v] : kNoArc; }
  bool has(VertexId v) const { return arc(v) != kNoArc; }
  std::size_t num_vertices() const { return arc_of_.size(); }

 private:
  std::vector<ArcId> arc_of_;
};

/// Leveled acyclic structure of vertex copies for one (s, t) pair. Copy ids
/// follow level order and the single copy of t is last, so one pass over
/// the ids visits every arc tail before its head. The level skeleton is
/// shared between copies of this object; shortcuts form a separate layer.
class HierStructure {
 public:
  VertexId source() const { return skeleton_->source; }
  VertexId target() const { return skeleton_->target; }
  std::uint32_t k() const { return skeleton_->k; }
  std::uint32_t p_max() const { return shortcuts_->p_max; }
  std::uint32_t last_level() const { return skeleton_->last_level; }

  std::size_t num_copies() const { return skeleton_->copies.size(); }
  const HsCopy& copy(CopyId c) const { return skeleton_->copies[c]; }
  CopyId source_copy() const { return 0; }
  CopyId target_copy() const { return static_cast<CopyId>(skeleton_->copies.size() - 1); }
  std::span<const CopyId> copies_of(VertexId v) const;

  std::span<const HsArc> arcs_from(CopyId c) const;
  std::span<const HsArc> shortcuts_from(CopyId c) const;
  std::size_t num_base_arcs() const { return skeleton_->arcs.size(); }
  std::size_t num_shortcuts() const { return shortcuts_->arcs.size(); }
  std::size_t num_arcs() const { return num_base_arcs() + num_shortcuts(); }

  std::span<const ArcId> shortcut_chain(const HsArc& shortcut) const;
  // Original arcs behind an hs-arc, appended in travel order.
  void append_expansion(const HsArc& arc, std::vector<ArcId>& out) const;

  /// Plain-text dump: `vertex level` per copy, then `tail head kind` per arc.
  void dump(std::ostream& out) const;

 private:
  struct Skeleton {
    VertexId source = kNoVertex;
    VertexId target = kNoVertex;
    std::uint32_t k = 1;
    std::uint32_t last_level = 0;
    std::vector<HsCopy> copies;
    std::vector<std::uint32_t> vertex_offsets;  // per original vertex into vertex_copies
    std::vector<CopyId> vertex_copies;
    std::vector<std::uint32_t> arc_offsets;     // per copy into arcs
    std::vector<HsArc> arcs;
  };
  struct ShortcutLayer {
    std::uint32_t p_max = 1;
    std::vector<std::uint32_t> offsets;  // per copy, empty when there are no shortcuts
    std::vector<HsArc> arcs;
    std::vector<std::uint32_t> chain_offsets{0};
    std::vector<ArcId> chain_arcs;
  };

  HierStructure(std::shared_ptr<const Skeleton> skeleton, std::shared_ptr<const ShortcutLayer> shortcuts)
      : skeleton_(std::move(skeleton)), shortcuts_(std::move(shortcuts)) {}

  static HierStructure from_parts(VertexId n, VertexId s, VertexId t, std::uint32_t k,
                                  std::vector<HsCopy> copies, std::vector<std::uint32_t> arc_offsets,
                                  std::vector<HsArc> arcs);

  friend HierStructure build_dag_hs(const Graph& g, VertexId s, VertexId t);
  friend HierStructure build_k_hs(const Graph& g, VertexId s, VertexId t, std::uint32_t k, bool prune_dead_ends);
  friend HierStructure add_perspective_shortcuts(const Graph& g, const HierStructure& hs, const PerspectiveMap& pm,
                                                 std::uint32_t p_max);

  std::shared_ptr<const Skeleton> skeleton_;
  std::shared_ptr<const ShortcutLayer> shortcuts_;
};

/// DAG structure: every vertex lying on some s-t path sits at the largest
/// arc count of any s-to-it path, and every arc between such vertices is
/// kept. Throws std::invalid_argument if g has a cycle or t is unreachable.
HierStructure build_dag_hs(const Graph& g, VertexId s, VertexId t);

/// k-HS: vertex v gets copies on levels hop(v) .. hop(v)+k-1 (s and t one
/// copy each), arcs join copies on neighbouring levels only, and every copy
/// of an in-neighbour of t is joined to t. With `prune_dead_ends`, copies
/// that cannot reach t are removed. Throws std::invalid_argument if t is
/// unreachable or k == 0.
HierStructure build_k_hs(const Graph& g, VertexId s, VertexId t, std::uint32_t k, bool prune_dead_ends = true);

/// Needs coordinates. Arcs with zero weight are never chosen; ties go to the
/// smallest arc id.
PerspectiveMap compute_perspective_arcs(const Graph& g, VertexId t, const WeightView& w);

/// Adds, for every vertex v with a copy and every p in 2..p_max, one arc
/// from v's earliest copy to the earliest copy, on a higher level, of the
/// vertex reached by following p perspective arcs from v (t's copy if the
/// chain ends in t). Chains stop at a repeated vertex. Replaces any
/// previous shortcut layer.
HierStructure add_perspective_shortcuts(const Graph& g, const HierStructure& hs, const PerspectiveMap& pm,
                                        std::uint32_t p_max);

struct HsScratch {
  std::vector<ScaledWeight> dist;
  std::vector<std::int64_t> tie;
  std::vector<std::uint32_t> pred;
};

struct HsSearchResult {
  Path walk;             // expanded into original arcs; may revisit a vertex
  ScaledWeight weight;   // scaled aggregated weight of the walk
};

/// One pass over the copies in level order, relaxing every hs-arc once.
std::optional<HsSearchResult> hs_shortest_path(const Graph& g, const HierStructure& hs, const WeightView& w,
                                               HsScratch& scratch);
std::optional<HsSearchResult> hs_shortest_path(const Graph& g, const HierStructure& hs, const WeightView& w);

}  // namespace cspath
