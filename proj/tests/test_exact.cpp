#include <doctest.h>

#include "cspath/exact.hpp"
#include "support.hpp"

using namespace cspath;

TEST_CASE("two routes with budget 3 cost 4") {
  Graph g(4, {{0, 1, 1, 5}, {1, 3, 0, 0}, {0, 2, 4, 2}, {2, 3, 0, 0}});
  auto p = exact_csp(g, 0, 3, 3);
  REQUIRE(p);
  CHECK(p->cost == 4);
  CHECK(p->length == 2);
  auto loose = exact_csp(g, 0, 3, 5);
  REQUIRE(loose);
  CHECK(loose->cost == 1);
}

TEST_CASE("budget below every path length gives no path") {
  Graph g(4, {{0, 1, 1, 5}, {1, 3, 0, 0}, {0, 2, 4, 2}, {2, 3, 0, 0}});
  CHECK_FALSE(exact_csp(g, 0, 3, 1));
  Graph apart(3, {{0, 1, 1, 1}});
  CHECK_FALSE(exact_csp(apart, 0, 2, 10));
  CHECK_THROWS_AS(exact_csp(g, 0, 0, 3), std::invalid_argument);
}

TEST_CASE("exact oracle equals enumeration on 500 random graphs") {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed);
    VertexId n = 3 + static_cast<VertexId>(rng.below(10));
    auto arcs = static_cast<std::uint32_t>(n + rng.below(3 * n));
    Graph g = testsupport::random_graph({n, arcs, 8, 0, 8, false}, rng);
    auto paths = testsupport::all_simple_paths(g, 0, n - 1);
    auto beta = static_cast<Length>(1 + rng.below(30));
    auto expected = testsupport::brute_csp(paths, beta);
    auto got = exact_csp(g, 0, n - 1, beta);
    REQUIRE(got.has_value() == expected.has_value());
    if (!got) continue;
    CHECK(got->cost == *expected);
    CHECK(got->length <= beta);
    CHECK(is_simple(g, *got));
    CHECK(got->source == 0);
    CHECK(got->target == n - 1);
  }
}

TEST_CASE("label budget overflow is an error, not an answer") {
  // A ladder of 20 rungs needs at least one label per vertex on the way.
  std::vector<ArcSpec> arcs;
  for (VertexId v = 0; v + 1 < 20; ++v) {
    arcs.push_back({v, v + 1, 1, 2});
    arcs.push_back({v, v + 1, 2, 1});
  }
  Graph g(20, arcs);
  ExactStats stats;
  CHECK_THROWS_AS(exact_csp(g, 0, 19, 30, {10}, &stats), OracleOverflow);
  CHECK(stats.labels_created >= 10);
  auto p = exact_csp(g, 0, 19, 30, {}, &stats);
  REQUIRE(p);
  // Length 38 - x with x cheap-length steps; x = 8 meets the budget.
  CHECK(p->cost == 19 + 8);
  CHECK(p->length == 30);
}
