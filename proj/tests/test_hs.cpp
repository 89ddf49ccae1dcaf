#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "cspath/dijkstra.hpp"
#include "cspath/hs.hpp"
#include "cspath/udg.hpp"
#include "support.hpp"

using namespace cspath;

namespace {

std::vector<std::uint32_t> levels_of(const HierStructure& hs, VertexId v) {
  std::vector<std::uint32_t> out;
  for (CopyId c : hs.copies_of(v)) out.push_back(hs.copy(c).level);
  return out;
}

std::vector<HsArc> all_arcs(const HierStructure& hs) {
  std::vector<HsArc> out;
  for (CopyId c = 0; c < hs.num_copies(); ++c) {
    for (const HsArc& a : hs.arcs_from(c)) out.push_back(a);
    for (const HsArc& a : hs.shortcuts_from(c)) out.push_back(a);
  }
  return out;
}

ScaledWeight dijkstra_weight(const Graph& g, VertexId s, VertexId t, const WeightView& w) {
  return dijkstra(g, s, w).dist[t];
}

ScaledWeight hs_weight(const Graph& g, const HierStructure& hs, const WeightView& w) {
  auto r = hs_shortest_path(g, hs, w);
  return r ? r->weight : kUnreachable;
}

// Level rule, copy rule and the arc-count bound.
void check_structure(const Graph& g, const HierStructure& hs, bool pruned) {
  const auto hops = testsupport::bfs(g, hs.source());
  CHECK(levels_of(hs, hs.source()) == std::vector<std::uint32_t>{0});
  REQUIRE(hs.copies_of(hs.target()).size() == 1);
  CHECK(hs.copy(hs.target_copy()).vertex == hs.target());
  CHECK(hs.copy(hs.target_copy()).level == hops[hs.target()]);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto lv = levels_of(hs, v);
    if (lv.empty() || v == hs.source() || v == hs.target()) continue;
    CHECK(lv.size() <= hs.k());
    for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv[i] == lv[i - 1] + 1);
    if (!pruned) {
      CHECK(lv.front() == hops[v]);
      CHECK(lv.size() == hs.k());
    } else {
      CHECK(lv.front() >= hops[v]);
      CHECK(lv.back() < hops[v] + hs.k());
    }
  }
  for (const HsArc& a : all_arcs(hs)) {
    const HsCopy& tail = hs.copy(a.tail);
    const HsCopy& head = hs.copy(a.head);
    switch (a.kind) {
      case HsArcKind::level:
        CHECK(head.level == tail.level + 1);
        CHECK(g.tail(a.ref) == tail.vertex);
        CHECK(g.head(a.ref) == head.vertex);
        break;
      case HsArcKind::sink:
        CHECK(head.vertex == hs.target());
        CHECK(g.head(a.ref) == hs.target());
        break;
      case HsArcKind::shortcut:
        CHECK((head.level > tail.level || head.vertex == hs.target()));
        break;
      case HsArcKind::forward:
        CHECK(head.level > tail.level);
        break;
    }
  }
  std::size_t in_t = g.in_degree(hs.target());
  CHECK(hs.num_arcs() <= hs.k() * g.num_arcs() + g.num_vertices() * hs.p_max() + hs.k() * in_t);
}

}  // namespace

TEST_CASE("DAG-HS of a single arc") {
  Graph g(2, {{0, 1, 3, 4}});
  HierStructure hs = build_dag_hs(g, 0, 1);
  CHECK(levels_of(hs, 0) == std::vector<std::uint32_t>{0});
  CHECK(levels_of(hs, 1) == std::vector<std::uint32_t>{1});
  CHECK(hs.num_arcs() == 1);
  auto r = hs_shortest_path(g, hs, WeightView::at(Rational(0)));
  REQUIRE(r);
  CHECK(r->walk.cost == 3);
}

TEST_CASE("DAG-HS of the diamond uses longest-path levels") {
  // s=0, a=1, b=2, t=3: s->a, s->b, a->b, b->t
  Graph g(4, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}});
  HierStructure hs = build_dag_hs(g, 0, 3);
  CHECK(levels_of(hs, 0) == std::vector<std::uint32_t>{0});
  CHECK(levels_of(hs, 1) == std::vector<std::uint32_t>{1});
  CHECK(levels_of(hs, 2) == std::vector<std::uint32_t>{2});
  CHECK(levels_of(hs, 3) == std::vector<std::uint32_t>{3});
  CHECK(hs.num_arcs() == 4);
}

TEST_CASE("DAG-HS rejects cycles and unreachable targets, prunes bystanders") {
  Graph cyc(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 1, 1, 1}});
  CHECK_THROWS_AS(build_dag_hs(cyc, 0, 2), std::invalid_argument);
  Graph apart(3, {{0, 1, 1, 1}});
  CHECK_THROWS_AS(build_dag_hs(apart, 0, 2), std::invalid_argument);
  // 3 hangs off s but never reaches t.
  Graph g(4, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 3, 1, 1}});
  HierStructure hs = build_dag_hs(g, 0, 2);
  CHECK(hs.copies_of(3).empty());
  CHECK(hs.num_arcs() == 2);
}

TEST_CASE("k-HS of a single arc") {
  Graph g(2, {{0, 1, 3, 4}});
  HierStructure hs = build_k_hs(g, 0, 1, 2);
  CHECK(hs.num_copies() == 2);
  CHECK(levels_of(hs, 1) == std::vector<std::uint32_t>{1});
  CHECK(hs.num_arcs() == 1);
  std::ostringstream dump;
  hs.dump(dump);
  CHECK(dump.str() == "0 0\n1 1\n0 1 sink\n");
  CHECK_THROWS_AS(build_k_hs(g, 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_k_hs(g, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("k-HS arcs enter copies on the level after their tail") {
  // 0=s; 1, 2 at hop 1; 3 at hop 2 behind 2; 4 reached from 1 (hop 1) and 3 (hop 2); 5=t.
  Graph g(6, {{0, 1, 1, 1}, {0, 2, 1, 1}, {2, 3, 1, 1}, {1, 4, 1, 1}, {3, 4, 1, 1}, {4, 5, 1, 1}});
  const ArcId arc_1_4 = 2, arc_3_4 = 4;  // ids after grouping by tail
  REQUIRE(g.tail(arc_1_4) == 1);
  REQUIRE(g.tail(arc_3_4) == 3);
  HierStructure hs = build_k_hs(g, 0, 5, 2, false);
  CHECK(levels_of(hs, 4) == std::vector<std::uint32_t>{2, 3});
  std::set<std::uint32_t> levels_1_4, levels_3_4;
  for (const HsArc& a : all_arcs(hs)) {
    if (a.ref == arc_1_4 && a.kind == HsArcKind::level) levels_1_4.insert(hs.copy(a.head).level);
    if (a.ref == arc_3_4 && a.kind == HsArcKind::level) levels_3_4.insert(hs.copy(a.head).level);
  }
  CHECK(levels_1_4.count(2) == 1);
  CHECK(levels_3_4 == std::set<std::uint32_t>{3});
  check_structure(g, hs, false);
}

TEST_CASE("k-HS drops arcs without a neighbouring-level copy pair") {
  // s=0 -> a=1 -> b=2 -> s, and b -> t=3.
  Graph g(4, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}, {2, 3, 1, 1}});
  HierStructure hs = build_k_hs(g, 0, 3, 1);
  CHECK(levels_of(hs, 0) == std::vector<std::uint32_t>{0});
  CHECK(levels_of(hs, 1) == std::vector<std::uint32_t>{1});
  CHECK(levels_of(hs, 2) == std::vector<std::uint32_t>{2});
  CHECK(levels_of(hs, 3) == std::vector<std::uint32_t>{3});
  CHECK(hs.num_arcs() == 3);
  for (const HsArc& a : all_arcs(hs)) CHECK(g.head(a.ref) != 0);
}

TEST_CASE("sink arcs reach t from every copy of its in-neighbours") {
  // t=3 has hop 1, but vertex 2 (hop 2) also feeds it.
  Graph g(4, {{0, 3, 9, 9}, {0, 1, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}});
  HierStructure hs = build_k_hs(g, 0, 3, 2, false);
  std::size_t from_2 = 0;
  for (const HsArc& a : all_arcs(hs)) {
    if (a.kind == HsArcKind::sink && hs.copy(a.tail).vertex == 2) ++from_2;
  }
  CHECK(from_2 == hs.copies_of(2).size());
  auto r = hs_shortest_path(g, hs, WeightView::at(Rational(0)));
  REQUIRE(r);
  CHECK(r->walk.cost == 3);
}

TEST_CASE("dead-end pruning keeps every s-t route") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    Graph g = testsupport::random_connected_graph({25, 60, 8, 0, 8, false}, rng, 0, 24);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      HierStructure full = build_k_hs(g, 0, 24, k, false);
      HierStructure pruned = build_k_hs(g, 0, 24, k, true);
      check_structure(g, full, false);
      check_structure(g, pruned, true);
      CHECK(pruned.num_arcs() <= full.num_arcs());
      for (const Rational& alpha : {Rational(0), Rational(2, 3), Rational(4)}) {
        auto w = WeightView::at(alpha);
        CHECK(hs_weight(g, pruned, w) == hs_weight(g, full, w));
      }
      // Every surviving copy other than t has an out-arc.
      for (CopyId c = 0; c + 1 < pruned.num_copies(); ++c) CHECK_FALSE(pruned.arcs_from(c).empty());
    }
  }
}

TEST_CASE("DAG-HS is exact on random DAGs") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    Graph g = testsupport::random_connected_graph({25, 70, 8, 0, 8, true}, rng, 0, 24);
    HierStructure hs = build_dag_hs(g, 0, 24);
    for (const Rational& alpha : {Rational(0), Rational(1), Rational(7, 3)}) {
      auto w = WeightView::at(alpha);
      auto r = hs_shortest_path(g, hs, w);
      REQUIRE(r);
      CHECK(r->weight == dijkstra_weight(g, 0, 24, w));
      CHECK(w.weight(r->walk.cost, r->walk.length) == r->weight);
    }
  }
}

TEST_CASE("k-HS is conservative and monotone in k on cyclic graphs") {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed);
    Graph g = testsupport::random_connected_graph({20, 60, 8, 0, 8, false}, rng, 0, 19);
    auto w = WeightView::at(Rational(static_cast<Int128>(seed % 5), 2));
    ScaledWeight exact = dijkstra_weight(g, 0, 19, w);
    ScaledWeight prev = kUnreachable;
    for (std::uint32_t k = 1; k <= 3; ++k) {
      ScaledWeight got = hs_weight(g, build_k_hs(g, 0, 19, k), w);
      CHECK(got >= exact);
      CHECK(got <= prev);
      prev = got;
    }
  }
}

TEST_CASE("walks expand into original arcs with matching totals") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = generate_udg(300, 0.12, seed);
    VertexId t = 299;
    if (testsupport::bfs(g, 0)[t] < 0) continue;
    auto w = WeightView::at(Rational(1, 2));
    HierStructure base = build_k_hs(g, 0, t, 2);
    HierStructure hs = add_perspective_shortcuts(g, base, compute_perspective_arcs(g, t, w), 3);
    auto r = hs_shortest_path(g, hs, w);
    REQUIRE(r);
    Path check = make_path(g, 0, r->walk.arcs);
    CHECK(check.target == t);
    CHECK(check.cost == r->walk.cost);
    CHECK(check.length == r->walk.length);
    CHECK(w.weight(check.cost, check.length) == r->weight);
    CHECK(r->weight >= dijkstra_weight(g, 0, t, w));
  }
}

TEST_CASE("perspective arc prefers progress towards t") {
  // v=0 at (0,0), t=3 at (10,0); arcs to (1,0) and (0,1), both weight 1.
  Graph g(4, {{0, 1, 1, 0}, {0, 2, 1, 0}, {1, 3, 1, 0}, {2, 3, 1, 0}}, {{0, 0}, {1, 0}, {0, 1}, {10, 0}});
  PerspectiveMap pm = compute_perspective_arcs(g, 3, WeightView::at(Rational(0)));
  REQUIRE(pm.has(0));
  CHECK(g.head(pm.arc(0)) == 1);
  CHECK_FALSE(pm.has(3));
}

TEST_CASE("arc pointing away from t is never a perspective arc") {
  Graph g(3, {{0, 1, 1, 1}, {0, 2, 1, 1}}, {{0, 0}, {-1, 0}, {5, 0}});
  Graph away(3, {{0, 1, 1, 1}}, {{0, 0}, {-1, 0}, {5, 0}});
  CHECK_FALSE(compute_perspective_arcs(away, 2, WeightView::at(Rational(0))).has(0));
  CHECK(compute_perspective_arcs(g, 2, WeightView::at(Rational(0))).arc(0) == 1);
}

TEST_CASE("zero-weight arcs and missing coordinates") {
  Graph zero(3, {{0, 2, 0, 0}, {0, 1, 1, 1}}, {{0, 0}, {1, 0}, {2, 0}});
  PerspectiveMap pm = compute_perspective_arcs(zero, 2, WeightView::at(Rational(0)));
  REQUIRE(pm.has(0));
  CHECK(zero.head(pm.arc(0)) == 1);
  Graph bare(2, {{0, 1, 1, 1}});
  CHECK_THROWS_AS(compute_perspective_arcs(bare, 1, WeightView::at(Rational(0))), std::invalid_argument);
}

TEST_CASE("perspective arcs match direct score evaluation on a UDG") {
  Graph g = generate_udg(20, 0.5, 3);
  for (const Rational& alpha : {Rational(0), Rational(1), Rational(5, 2)}) {
    auto w = WeightView::at(alpha);
    for (VertexId t = 0; t < g.num_vertices(); t += 7) {
      PerspectiveMap pm = compute_perspective_arcs(g, t, w);
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (v == t) {
          CHECK_FALSE(pm.has(v));
          continue;
        }
        // |ij| cos(angle) / c_ij, evaluated with the angle itself.
        ArcId best = kNoArc;
        double best_score = 0.0;
        for (ArcId a : g.out_arcs(v)) {
          double c = (Rational(g.cost(a)) + alpha * Rational(g.length(a))).to_double();
          if (c == 0.0) continue;
          Point from = g.coord(v), to = g.coord(g.head(a)), tt = g.coord(t);
          double len = std::hypot(to.x - from.x, to.y - from.y);
          double angle = std::atan2(to.y - from.y, to.x - from.x) - std::atan2(tt.y - from.y, tt.x - from.x);
          double score = len * std::cos(angle) / c;
          if (score > best_score * (1 + 1e-12) + 1e-300) {
            best_score = score;
            best = a;
          }
        }
        CHECK(pm.arc(v) == best);
      }
    }
  }
}

TEST_CASE("p_max 1 adds no shortcuts") {
  Graph g = generate_udg(100, 0.2, 9);
  HierStructure base = build_k_hs(g, 0, 50, 2);
  auto pm = compute_perspective_arcs(g, 50, WeightView::at(Rational(0)));
  HierStructure same = add_perspective_shortcuts(g, base, pm, 1);
  CHECK(same.num_shortcuts() == 0);
  CHECK(same.num_arcs() == base.num_arcs());
}

TEST_CASE("a two-arc perspective chain becomes one summed shortcut") {
  // v=0 -> x=1 -> y=2 -> t=3 along a line, plus a side branch through 4.
  // Arc ids after grouping by tail: 0->1 is 0, 0->4 is 1, 1->2 is 2.
  Graph g(5, {{0, 1, 2, 3}, {1, 2, 4, 5}, {2, 3, 1, 1}, {0, 4, 50, 50}, {4, 1, 50, 50}},
          {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 5}});
  HierStructure base = build_k_hs(g, 0, 3, 1);
  auto pm = compute_perspective_arcs(g, 3, WeightView::at(Rational(0)));
  REQUIRE(pm.arc(0) == 0);
  HierStructure hs = add_perspective_shortcuts(g, base, pm, 2);
  bool found = false;
  for (const HsArc& a : all_arcs(hs)) {
    if (a.kind != HsArcKind::shortcut || hs.copy(a.tail).vertex != 0) continue;
    CHECK(hs.copy(a.head).vertex == 2);
    CHECK(a.cost == 6);
    CHECK(a.length == 8);
    auto chain = hs.shortcut_chain(a);
    CHECK(std::vector<ArcId>(chain.begin(), chain.end()) == std::vector<ArcId>{0, 2});
    found = true;
  }
  CHECK(found);
}

TEST_CASE("shortcuts on a 500-vertex UDG re-walk to their stored sums") {
  Graph g = generate_udg(500, 0.1, 11);
  VertexId t = 0;
  VertexId s = 0;
  auto hops = testsupport::bfs(g, 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (hops[v] > hops[t]) t = v;
  }
  REQUIRE(t != s);
  for (const Rational& alpha : {Rational(0), Rational(1, 3)}) {
    auto w = WeightView::at(alpha);
    HierStructure hs = add_perspective_shortcuts(g, build_k_hs(g, s, t, 2), compute_perspective_arcs(g, t, w), 3);
    CHECK(hs.num_shortcuts() > 0);
    CHECK(hs.num_shortcuts() <= 3 * g.num_vertices());
    for (const HsArc& a : all_arcs(hs)) {
      if (a.kind != HsArcKind::shortcut) continue;
      auto chain = hs.shortcut_chain(a);
      Path p = make_path(g, hs.copy(a.tail).vertex, std::vector<ArcId>(chain.begin(), chain.end()));
      CHECK(p.cost == a.cost);
      CHECK(p.length == a.length);
      CHECK(p.target == hs.copy(a.head).vertex);
      CHECK(chain.size() >= 2);
      CHECK(chain.size() <= 3);
    }
    check_structure(g, hs, true);
  }
}

TEST_CASE("reused scratch gives the same answers") {
  Graph g = generate_udg(200, 0.15, 21);
  auto hops = testsupport::bfs(g, 0);
  VertexId t = 1;
  while (hops[t] < 2) ++t;
  HierStructure hs = build_k_hs(g, 0, t, 3);
  HsScratch scratch;
  for (const Rational& alpha : {Rational(0), Rational(3), Rational(1, 7), Rational(0)}) {
    auto w = WeightView::at(alpha);
    auto a = hs_shortest_path(g, hs, w, scratch);
    auto b = hs_shortest_path(g, hs, w);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->weight == b->weight);
    CHECK(a->walk == b->walk);
  }
}
