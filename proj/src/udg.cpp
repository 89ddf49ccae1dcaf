#include "cspath/udg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cspath/dimacs.hpp"

namespace cspath {

Graph build_udg(std::span<const Point> points, double radius, Rng& noise) {
  const auto n = static_cast<VertexId>(points.size());
  if (n < 2) throw std::invalid_argument("unit-disk graph needs at least two points");
  if (!(radius > 0.0) || radius > std::sqrt(2.0)) throw std::invalid_argument("radius must lie in (0, sqrt(2)]");

  // Bucket grid with cell side >= radius: neighbours lie in adjacent cells.
  const auto cells = static_cast<std::uint32_t>(std::max(1.0, std::floor(1.0 / radius)));
  auto cell_of = [cells](double c) {
    auto i = static_cast<std::int64_t>(c * cells);
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(i, 0, cells - 1));
  };
  std::vector<std::vector<VertexId>> grid(static_cast<std::size_t>(cells) * cells);
  for (VertexId v = 0; v < n; ++v) grid[cell_of(points[v].y) * cells + cell_of(points[v].x)].push_back(v);

  std::vector<ArcSpec> arcs;
  std::vector<VertexId> near;
  for (VertexId u = 0; u < n; ++u) {
    near.clear();
    const std::int64_t cx = cell_of(points[u].x);
    const std::int64_t cy = cell_of(points[u].y);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        std::int64_t x = cx + dx;
        std::int64_t y = cy + dy;
        if (x < 0 || y < 0 || x >= cells || y >= cells) continue;
        for (VertexId v : grid[y * cells + x]) {
          if (v <= u) continue;
          double ddx = points[u].x - points[v].x;
          double ddy = points[u].y - points[v].y;
          if (std::sqrt(ddx * ddx + ddy * ddy) < radius) near.push_back(v);
        }
      }
    }
    std::sort(near.begin(), near.end());
    for (VertexId v : near) {
      double d = std::hypot(points[u].x - points[v].x, points[u].y - points[v].y);
      double factor = noise.uniform(kUdgNoiseMin, kUdgNoiseMax);
      auto cost = static_cast<Cost>(d * kUdgWeightScale);
      auto length = static_cast<Length>(d * factor * kUdgWeightScale);
      arcs.push_back({u, v, cost, length});
      arcs.push_back({v, u, cost, length});
    }
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const ArcSpec& l, const ArcSpec& r) { return std::tie(l.tail, l.head) < std::tie(r.tail, r.head); });
  return Graph(n, std::move(arcs), std::vector<Point>(points.begin(), points.end()));
}

Graph generate_udg(VertexId n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> points(n);
  for (Point& p : points) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return build_udg(points, radius, rng);
}

void write_udg(std::ostream& out, const Graph& g, double radius, std::uint64_t seed) {
  if (!g.has_coords()) throw std::invalid_argument("unit-disk graph export needs coordinates");
  out << "c udg-format " << kUdgFormatVersion << '\n';
  out << "udg " << g.num_vertices() << ' ' << g.num_arcs() << ' ' << std::setprecision(17) << radius << ' '
      << seed << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << "v " << v << ' ' << g.coord(v).x << ' ' << g.coord(v).y << '\n';
  }
  for (ArcId a = 0; a < g.num_arcs(); ++a) {
    out << "a " << g.tail(a) << ' ' << g.head(a) << ' ' << g.cost(a) << ' ' << g.length(a) << '\n';
  }
}

UdgFile read_udg(std::istream& in) {
  UdgFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Point> coords;
  std::vector<bool> seen;
  std::vector<ArcSpec> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    if (kind == "c") {
      std::string tag;
      int version = 0;
      if (fields >> tag && tag == "udg-format" && (!(fields >> version) || version != kUdgFormatVersion)) {
        throw ParseError(line_no, "unsupported udg format version");
      }
      continue;
    }
    if (kind == "udg") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (!(fields >> n >> m >> file.radius >> file.seed)) throw ParseError(line_no, "expected 'udg <n> <m> <r> <seed>'");
      coords.resize(n);
      seen.assign(n, false);
      arcs.reserve(m);
      have_header = true;
    } else if (kind == "v" || kind == "a") {
      if (!have_header) throw ParseError(line_no, "record before header");
      if (kind == "v") {
        std::uint64_t id;
        Point p;
        if (!(fields >> id >> p.x >> p.y) || id >= n) throw ParseError(line_no, "bad vertex line");
        coords[id] = p;
        seen[id] = true;
      } else {
        std::uint64_t tail;
        std::uint64_t head;
        Cost cost;
        Length length;
        if (!(fields >> tail >> head >> cost >> length) || tail >= n || head >= n || cost < 0 || length < 0) {
          throw ParseError(line_no, "bad arc line");
        }
        arcs.push_back({static_cast<VertexId>(tail), static_cast<VertexId>(head), cost, length});
      }
    } else {
      throw ParseError(line_no, "unknown line type '" + kind + "'");
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing field '" + extra + "'");
  }
  if (!have_header) throw ParseError(line_no, "missing udg header");
  if (arcs.size() != m) throw ParseError(line_no, "header arc count does not match arc lines");
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw StructuralError("missing vertex coordinates");
  file.graph = Graph(static_cast<VertexId>(n), std::move(arcs), std::move(coords));
  return file;
}

}  // namespace cspath
