#include "cspath/hs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cspath/diameter.hpp"

namespace cspath {

namespace {

constexpr std::uint32_t kShortcutBit = 0x8000'0000u;
constexpr std::uint32_t kNoPred = std::numeric_limits<std::uint32_t>::max();

void check_endpoints(const Graph& g, VertexId s, VertexId t) {
  if (s >= g.num_vertices() || t >= g.num_vertices()) throw std::invalid_argument("endpoint out of range");
  if (s == t) throw std::invalid_argument("source equals target");
}

std::vector<bool> reachable(const Graph& g, VertexId from, bool backwards) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<VertexId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    auto visit = [&](VertexId v) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    };
    if (backwards) {
      for (ArcId a : g.in_arcs(u)) visit(g.tail(a));
    } else {
      for (ArcId a : g.out_arcs(u)) visit(g.head(a));
    }
  }
  return seen;
}

}  // namespace

const char* to_string(HsArcKind kind) {
  switch (kind) {
    case HsArcKind::level: return "level";
    case HsArcKind::forward: return "forward";
    case HsArcKind::sink: return "sink";
    case HsArcKind::shortcut: return "shortcut";
  }
  return "?";
}

std::span<const CopyId> HierStructure::copies_of(VertexId v) const {
  const auto& sk = *skeleton_;
  if (v + 1 >= sk.vertex_offsets.size()) return {};
  return {sk.vertex_copies.data() + sk.vertex_offsets[v], sk.vertex_copies.data() + sk.vertex_offsets[v + 1]};
}

std::span<const HsArc> HierStructure::arcs_from(CopyId c) const {
  const auto& sk = *skeleton_;
  return {sk.arcs.data() + sk.arc_offsets[c], sk.arcs.data() + sk.arc_offsets[c + 1]};
}

std::span<const HsArc> HierStructure::shortcuts_from(CopyId c) const {
  const auto& layer = *shortcuts_;
  if (layer.offsets.empty()) return {};
  return {layer.arcs.data() + layer.offsets[c], layer.arcs.data() + layer.offsets[c + 1]};
}

std::span<const ArcId> HierStructure::shortcut_chain(const HsArc& shortcut) const {
  if (shortcut.kind != HsArcKind::shortcut) throw std::invalid_argument("not a shortcut arc");
  const auto& layer = *shortcuts_;
  return {layer.chain_arcs.data() + layer.chain_offsets[shortcut.ref],
          layer.chain_arcs.data() + layer.chain_offsets[shortcut.ref + 1]};
}

void HierStructure::append_expansion(const HsArc& arc, std::vector<ArcId>& out) const {
  if (arc.kind == HsArcKind::shortcut) {
    auto chain = shortcut_chain(arc);
    out.insert(out.end(), chain.begin(), chain.end());
  } else {
    out.push_back(arc.ref);
  }
}

void HierStructure::dump(std::ostream& out) const {
  for (const HsCopy& c : skeleton_->copies) out << c.vertex << ' ' << c.level << '\n';
  auto arc_line = [&out](const HsArc& a) { out << a.tail << ' ' << a.head << ' ' << to_string(a.kind) << '\n'; };
  for (const HsArc& a : skeleton_->arcs) arc_line(a);
  for (const HsArc& a : shortcuts_->arcs) arc_line(a);
}

HierStructure HierStructure::from_parts(VertexId n, VertexId s, VertexId t, std::uint32_t k,
                                        std::vector<HsCopy> copies, std::vector<std::uint32_t> arc_offsets,
                                        std::vector<HsArc> arcs) {
  auto sk = std::make_shared<Skeleton>();
  sk->source = s;
  sk->target = t;
  sk->k = k;
  sk->vertex_offsets.assign(n + 1, 0);
  for (const HsCopy& c : copies) {
    ++sk->vertex_offsets[c.vertex + 1];
    sk->last_level = std::max(sk->last_level, c.level);
  }
  for (VertexId v = 0; v < n; ++v) sk->vertex_offsets[v + 1] += sk->vertex_offsets[v];
  sk->vertex_copies.resize(copies.size());
  std::vector<std::uint32_t> fill(sk->vertex_offsets.begin(), sk->vertex_offsets.end() - 1);
  for (CopyId c = 0; c < copies.size(); ++c) sk->vertex_copies[fill[copies[c].vertex]++] = c;
  // Copy ids are in level order except for t, which is alone anyway.
  sk->copies = std::move(copies);
  sk->arc_offsets = std::move(arc_offsets);
  sk->arcs = std::move(arcs);
  if (sk->arcs.size() >= kShortcutBit) throw std::length_error("hierarchical structure too large");
  return HierStructure(std::move(sk), std::make_shared<ShortcutLayer>());
}

HierStructure build_dag_hs(const Graph& g, VertexId s, VertexId t) {
  check_endpoints(g, s, t);
  const VertexId n = g.num_vertices();

  // Kahn's algorithm over the whole graph doubles as the cycle check.
  std::vector<std::uint32_t> indegree(n);
  for (VertexId v = 0; v < n; ++v) indegree[v] = g.in_degree(v);
  std::vector<VertexId> topo;
  topo.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (indegree[v] == 0) topo.push_back(v);
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (ArcId a : g.out_arcs(topo[i])) {
      if (--indegree[g.head(a)] == 0) topo.push_back(g.head(a));
    }
  }
  if (topo.size() != n) throw std::invalid_argument("graph has a cycle");

  auto from_s = reachable(g, s, false);
  auto to_t = reachable(g, t, true);
  if (!from_s[t]) throw std::invalid_argument("target unreachable from source");
  auto kept = [&](VertexId v) { return from_s[v] && to_t[v]; };

  std::vector<std::uint32_t> level(n, 0);
  for (VertexId u : topo) {
    if (!kept(u)) continue;
    for (ArcId a : g.out_arcs(u)) {
      VertexId v = g.head(a);
      if (kept(v)) level[v] = std::max(level[v], level[u] + 1);
    }
  }

  std::vector<HsCopy> copies;
  for (VertexId v = 0; v < n; ++v) {
    if (kept(v)) copies.push_back({v, level[v]});
  }
  std::stable_sort(copies.begin(), copies.end(),
                   [](const HsCopy& l, const HsCopy& r) { return l.level < r.level; });
  std::vector<CopyId> copy_of(n, kNoCopy);
  for (CopyId c = 0; c < copies.size(); ++c) copy_of[copies[c].vertex] = c;

  std::vector<std::uint32_t> offsets{0};
  std::vector<HsArc> arcs;
  for (CopyId c = 0; c < copies.size(); ++c) {
    for (ArcId a : g.out_arcs(copies[c].vertex)) {
      CopyId head = copy_of[g.head(a)];
      if (head != kNoCopy) arcs.push_back({c, head, g.cost(a), g.length(a), HsArcKind::forward, a});
    }
    offsets.push_back(static_cast<std::uint32_t>(arcs.size()));
  }
  return HierStructure::from_parts(n, s, t, 1, std::move(copies), std::move(offsets), std::move(arcs));
}

HierStructure build_k_hs(const Graph& g, VertexId s, VertexId t, std::uint32_t k, bool prune_dead_ends) {
  check_endpoints(g, s, t);
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const VertexId n = g.num_vertices();
  const std::int64_t span = static_cast<std::int64_t>(k) - 1;

  // The deepest useful level is the last copy of any in-neighbour of t;
  // when pruning, the breadth-first search stops once that level is known
  // and all vertices up to it are labelled.
  std::vector<bool> feeds_t(n, false);
  std::size_t feeders_left = 0;
  for (ArcId a : g.in_arcs(t)) {
    VertexId u = g.tail(a);
    if (u != t && !feeds_t[u]) {
      feeds_t[u] = true;
      ++feeders_left;
    }
  }
  std::vector<std::int64_t> hop(n, kNoDistance);
  std::int64_t deepest = 0;
  auto reach = [&](VertexId v, std::int64_t h) {
    hop[v] = h;
    if (feeds_t[v]) {
      --feeders_left;
      deepest = std::max(deepest, v == s ? 0 : h + span);
    }
  };
  std::vector<VertexId> queue{s};
  reach(s, 0);
  std::size_t layer_begin = 0;
  for (std::int64_t h = 0; layer_begin < queue.size(); ++h) {
    if (prune_dead_ends && feeders_left == 0 && h >= deepest && hop[t] != kNoDistance) break;
    std::size_t layer_end = queue.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (ArcId a : g.out_arcs(queue[i])) {
        VertexId v = g.head(a);
        if (hop[v] == kNoDistance) {
          reach(v, h + 1);
          queue.push_back(v);
        }
      }
    }
    layer_begin = layer_end;
  }
  if (hop[t] == kNoDistance) throw std::invalid_argument("target unreachable from source");

  // Vertices with copies besides s and t, bucketed by hop (ids ascending).
  std::int64_t max_hop = 0;
  for (VertexId v : queue) {
    if (v != s && v != t) max_hop = std::max(max_hop, hop[v]);
  }
  const std::int64_t top = prune_dead_ends ? std::min(deepest, max_hop + span) : max_hop + span;
  std::vector<std::uint32_t> hop_start(max_hop + 2, 0);
  for (VertexId v : queue) {
    if (v != s && v != t) ++hop_start[hop[v] + 1];
  }
  for (std::int64_t h = 0; h <= max_hop; ++h) hop_start[h + 1] += hop_start[h];
  std::vector<VertexId> order(hop_start.back());
  std::vector<std::uint32_t> pos(n, 0);
  {
    std::vector<std::uint32_t> fill(hop_start.begin(), hop_start.end() - 1);
    std::vector<VertexId> sorted(queue.begin(), queue.end());
    std::sort(sorted.begin(), sorted.end());
    for (VertexId v : sorted) {
      if (v == s || v == t) continue;
      pos[v] = fill[hop[v]]++;
      order[pos[v]] = v;
    }
  }

  auto first_hop = [&](std::int64_t l) { return std::max<std::int64_t>(1, l - span); };
  std::vector<HsCopy> copies{{s, 0}};
  std::vector<std::uint32_t> level_start(top + 2, 0);
  for (std::int64_t l = 1; l <= top; ++l) {
    level_start[l] = static_cast<std::uint32_t>(copies.size());
    std::int64_t last = std::min(l, max_hop);
    for (std::uint32_t i = hop_start[first_hop(l)]; i < hop_start[last + 1]; ++i) {
      copies.push_back({order[i], static_cast<std::uint32_t>(l)});
    }
  }
  const auto t_copy = static_cast<CopyId>(copies.size());
  copies.push_back({t, static_cast<std::uint32_t>(hop[t])});
  auto copy_at = [&](VertexId v, std::int64_t l) {
    return static_cast<CopyId>(level_start[l] + pos[v] - hop_start[first_hop(l)]);
  };

  std::vector<std::uint32_t> offsets{0};
  std::vector<HsArc> arcs;
  for (CopyId c = 0; c < t_copy; ++c) {
    const auto [v, l] = copies[c];
    for (ArcId a : g.out_arcs(v)) {
      VertexId w = g.head(a);
      if (w == v) continue;
      if (w == t) {
        arcs.push_back({c, t_copy, g.cost(a), g.length(a), HsArcKind::sink, a});
        continue;
      }
      if (w == s || hop[w] == kNoDistance) continue;
      std::int64_t next = static_cast<std::int64_t>(l) + 1;
      if (next <= top && hop[w] <= next && next <= hop[w] + span) {
        arcs.push_back({c, copy_at(w, next), g.cost(a), g.length(a), HsArcKind::level, a});
      }
    }
    offsets.push_back(static_cast<std::uint32_t>(arcs.size()));
  }
  offsets.push_back(static_cast<std::uint32_t>(arcs.size()));

  if (prune_dead_ends) {
    // Heads always have larger ids, so one backward pass settles liveness.
    std::vector<bool> alive(copies.size(), false);
    alive[t_copy] = true;
    for (CopyId c = t_copy; c-- > 0;) {
      for (std::uint32_t i = offsets[c]; i < offsets[c + 1] && !alive[c]; ++i) alive[c] = alive[arcs[i].head];
    }
    alive[0] = true;
    std::vector<CopyId> renumber(copies.size(), kNoCopy);
    std::vector<HsCopy> kept_copies;
    for (CopyId c = 0; c < copies.size(); ++c) {
      if (!alive[c]) continue;
      renumber[c] = static_cast<CopyId>(kept_copies.size());
      kept_copies.push_back(copies[c]);
    }
    std::vector<std::uint32_t> kept_offsets{0};
    std::vector<HsArc> kept_arcs;
    for (CopyId c = 0; c < copies.size(); ++c) {
      if (!alive[c]) continue;
      for (std::uint32_t i = offsets[c]; i < offsets[c + 1]; ++i) {
        HsArc arc = arcs[i];
        if (!alive[arc.head]) continue;
        arc.tail = renumber[arc.tail];
        arc.head = renumber[arc.head];
        kept_arcs.push_back(arc);
      }
      kept_offsets.push_back(static_cast<std::uint32_t>(kept_arcs.size()));
    }
    copies = std::move(kept_copies);
    offsets = std::move(kept_offsets);
    arcs = std::move(kept_arcs);
  }
  return HierStructure::from_parts(n, s, t, k, std::move(copies), std::move(offsets), std::move(arcs));
}

PerspectiveMap compute_perspective_arcs(const Graph& g, VertexId t, const WeightView& w) {
  if (!g.has_coords()) throw std::invalid_argument("perspective arcs need vertex coordinates");
  if (t >= g.num_vertices()) throw std::invalid_argument("target out of range");
  const Point target = g.coord(t);
  std::vector<ArcId> choice(g.num_vertices(), kNoArc);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (v == t) continue;
    const Point from = g.coord(v);
    const double tx = target.x - from.x;
    const double ty = target.y - from.y;
    const double to_target = std::hypot(tx, ty);
    if (to_target == 0.0) continue;
    double best = 0.0;
    for (ArcId a : g.out_arcs(v)) {
      ScaledWeight c = w.weight(g.cost(a), g.length(a));
      if (c == 0) continue;
      const Point to = g.coord(g.head(a));
      // |ij| cos(angle(ij, it)) is the projection of ij onto the direction of t.
      double progress = ((to.x - from.x) * tx + (to.y - from.y) * ty) / to_target;
      double score = progress / static_cast<double>(c);
      if (score > best) {
        best = score;
        choice[v] = a;
      }
    }
  }
  return PerspectiveMap(std::move(choice));
}

HierStructure add_perspective_shortcuts(const Graph& g, const HierStructure& hs, const PerspectiveMap& pm,
                                        std::uint32_t p_max) {
  auto layer = std::make_shared<HierStructure::ShortcutLayer>();
  layer->p_max = std::max<std::uint32_t>(p_max, 1);
  if (p_max <= 1) return HierStructure(hs.skeleton_, std::move(layer));

  const VertexId t = hs.target();
  std::vector<HsArc> shortcuts;
  std::vector<VertexId> chain_vertices;
  std::vector<ArcId> chain;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto own = hs.copies_of(v);
    if (own.empty() || v == t) continue;
    const CopyId from = own.front();
    const std::uint32_t from_level = hs.copy(from).level;

    chain_vertices.assign(1, v);
    chain.clear();
    Cost cost = 0;
    Length length = 0;
    VertexId at = v;
    for (std::uint32_t p = 1; p <= p_max && at != t; ++p) {
      ArcId a = pm.arc(at);
      if (a == kNoArc) break;
      VertexId next = g.head(a);
      if (std::find(chain_vertices.begin(), chain_vertices.end(), next) != chain_vertices.end()) break;
      chain.push_back(a);
      chain_vertices.push_back(next);
      cost += g.cost(a);
      length += g.length(a);
      at = next;
      if (p < 2) continue;

      CopyId to = kNoCopy;
      if (at == t) {
        to = hs.target_copy();
      } else {
        for (CopyId c : hs.copies_of(at)) {
          if (hs.copy(c).level > from_level) {
            to = c;
            break;
          }
        }
      }
      if (to == kNoCopy) continue;
      auto index = static_cast<std::uint32_t>(layer->chain_offsets.size() - 1);
      layer->chain_arcs.insert(layer->chain_arcs.end(), chain.begin(), chain.end());
      layer->chain_offsets.push_back(static_cast<std::uint32_t>(layer->chain_arcs.size()));
      shortcuts.push_back({from, to, cost, length, HsArcKind::shortcut, index});
    }
  }

  std::stable_sort(shortcuts.begin(), shortcuts.end(), [](const HsArc& l, const HsArc& r) { return l.tail < r.tail; });
  layer->offsets.assign(hs.num_copies() + 1, 0);
  for (const HsArc& a : shortcuts) ++layer->offsets[a.tail + 1];
  for (std::size_t c = 0; c < hs.num_copies(); ++c) layer->offsets[c + 1] += layer->offsets[c];
  layer->arcs = std::move(shortcuts);
  return HierStructure(hs.skeleton_, std::move(layer));
}

std::optional<HsSearchResult> hs_shortest_path(const Graph& g, const HierStructure& hs, const WeightView& w,
                                               HsScratch& scratch) {
  w.check_range(g);
  const std::size_t nc = hs.num_copies();
  scratch.dist.assign(nc, kUnreachable);
  scratch.tie.assign(nc, 0);
  scratch.pred.assign(nc, kNoPred);
  auto& dist = scratch.dist;
  auto& tie = scratch.tie;
  auto& pred = scratch.pred;

  const HsArc* base = hs.num_base_arcs() ? hs.arcs_from(0).data() : nullptr;
  const HsArc* extra = hs.num_shortcuts() ? hs.shortcuts_from(0).data() : nullptr;
  dist[hs.source_copy()] = 0;
  // Heads of all arcs out of c have larger ids, so d[c] is final here.
  for (CopyId c = 0; c < nc; ++c) {
    if (dist[c] == kUnreachable) continue;
    const ScaledWeight d = dist[c];
    const std::int64_t tk = tie[c];
    auto relax = [&](const HsArc& arc, std::uint32_t tag) {
      ScaledWeight nd = d + w.weight(arc.cost, arc.length);
      std::int64_t nt = tk + w.tie_key(arc.cost, arc.length);
      if (nd < dist[arc.head] || (nd == dist[arc.head] && nt < tie[arc.head])) {
        dist[arc.head] = nd;
        tie[arc.head] = nt;
        pred[arc.head] = tag;
      }
    };
    for (const HsArc& arc : hs.arcs_from(c)) relax(arc, static_cast<std::uint32_t>(&arc - base));
    for (const HsArc& arc : hs.shortcuts_from(c)) relax(arc, static_cast<std::uint32_t>(&arc - extra) | kShortcutBit);
  }

  const CopyId goal = hs.target_copy();
  if (dist[goal] == kUnreachable) return std::nullopt;
  std::vector<const HsArc*> trail;
  for (CopyId c = goal; c != hs.source_copy();) {
    std::uint32_t tag = pred[c];
    const HsArc* arc = (tag & kShortcutBit) ? extra + (tag & ~kShortcutBit) : base + tag;
    trail.push_back(arc);
    c = arc->tail;
  }
  std::vector<ArcId> arcs;
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) hs.append_expansion(**it, arcs);
  return HsSearchResult{make_path(g, hs.source(), std::move(arcs)), dist[goal]};
}

std::optional<HsSearchResult> hs_shortest_path(const Graph& g, const HierStructure& hs, const WeightView& w) {
  HsScratch scratch;
  return hs_shortest_path(g, hs, w, scratch);
}

}  // namespace cspath
