#include <doctest.h>

#include <sstream>

#include "cspath/dimacs.hpp"

using namespace cspath;

namespace {

const std::string kData = CSPATH_TEST_DATA;

Graph golden_expected() {
  // Weights are the file values divided by 100; the self-loop 3 -> 3 is gone.
  return Graph(5, {{0, 1, 7, 1},
                   {0, 2, 12, 2},
                   {1, 3, 4, 9},
                   {2, 3, 1, 10},
                   {3, 4, 0, 5},
                   {4, 0, 10, 0},
                   {1, 4, 25, 40}});
}

}  // namespace

TEST_CASE("golden 5-vertex pair parses to the expected graph") {
  Graph g = load_dimacs(kData + "/golden5_cost.gr", kData + "/golden5_length.gr");
  CHECK(g == golden_expected());
  CHECK(g.num_vertices() == 5);
  CHECK(g.num_arcs() == 7);
  CHECK(g.max_cost() == 25);
  CHECK(g.max_length() == 40);
}

TEST_CASE("write then reload is identical, and so is the text") {
  Graph g = load_dimacs(kData + "/golden5_cost.gr", kData + "/golden5_length.gr");
  std::stringstream cost, length;
  write_dimacs(cost, g, ArcWeight::cost);
  write_dimacs(length, g, ArcWeight::length);
  const std::string cost_text = cost.str();
  const std::string length_text = length.str();
  Graph again = load_dimacs(cost, length);
  CHECK(again == g);
  std::stringstream cost2, length2;
  write_dimacs(cost2, again, ArcWeight::cost);
  write_dimacs(length2, again, ArcWeight::length);
  CHECK(cost2.str() == cost_text);
  CHECK(length2.str() == length_text);
}

TEST_CASE("arc weights are divided by 100 and truncated") {
  std::istringstream cost("p sp 2 1\na 1 2 730\n"), length("p sp 2 1\na 1 2 199\n");
  Graph g = load_dimacs(cost, length);
  REQUIRE(g.num_arcs() == 1);
  CHECK(g.tail(0) == 0);
  CHECK(g.head(0) == 1);
  CHECK(g.cost(0) == 7);
  CHECK(g.length(0) == 1);
}

TEST_CASE("header gives vertex and arc counts") {
  std::istringstream in("c comment\np sp 4 5\na 1 2 1\na 2 3 1\na 3 4 1\na 4 1 1\na 1 3 1\n");
  GrFile f = parse_gr(in);
  CHECK(f.num_vertices == 4);
  CHECK(f.arcs.size() == 5);
}

TEST_CASE("malformed lines report their line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_gr(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("p sp 2 1\na 1 x 3\n") == 2);
  CHECK(line_of("c x\nc y\na 1 2 3\n") == 3);
  CHECK(line_of("p sp 2 1\na 1 3 4\n") == 2);
  CHECK(line_of("p sp 2 1\na 1 2 -4\n") == 2);
  CHECK(line_of("p sp 2 1\na 1 2\n") == 2);
  CHECK(line_of("p sp 2 1\nq\n") == 2);
  CHECK(line_of("p sp 2 2\na 1 2 4\n") == 2);
  CHECK(line_of("p sp 2 1\np sp 2 1\n") == 2);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_gr(empty), ParseError);
}

TEST_CASE("mismatched arc sets are structural errors") {
  {
    std::istringstream c("p sp 3 1\na 1 2 1\n"), l("p sp 3 1\na 2 1 1\n");
    CHECK_THROWS_AS(load_dimacs(c, l), StructuralError);
  }
  {
    std::istringstream c("p sp 3 1\na 1 2 1\n"), l("p sp 4 1\na 1 2 1\n");
    CHECK_THROWS_AS(load_dimacs(c, l), StructuralError);
  }
  {
    std::istringstream c("p sp 3 2\na 1 2 1\na 2 3 1\n"), l("p sp 3 1\na 1 2 1\n");
    CHECK_THROWS_AS(load_dimacs(c, l), StructuralError);
  }
}

TEST_CASE("parallel arcs are kept, self-loops dropped") {
  std::istringstream c("p sp 2 3\na 1 2 100\na 1 2 200\na 2 2 5\n"), l("p sp 2 3\na 1 2 100\na 1 2 300\na 2 2 5\n");
  Graph g = load_dimacs(c, l);
  CHECK(g.num_arcs() == 2);
  CHECK(g.cost(1) == 2);
  CHECK(g.length(1) == 3);
}

TEST_CASE("coordinate companion") {
  std::istringstream in("c coords\np aux sp co 2\nv 1 -73530767 41085396\nv 2 -73530538 41086098\n");
  auto pts = parse_dimacs_coords(in, 2);
  CHECK(pts[0].x == -73530767.0);
  CHECK(pts[1].y == 41086098.0);
  std::istringstream missing("v 1 0 0\n");
  CHECK_THROWS_AS(parse_dimacs_coords(missing, 2), StructuralError);
}
