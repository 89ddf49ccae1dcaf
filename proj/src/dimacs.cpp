#include "cspath/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace cspath {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::ifstream open_or_throw(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return in;
}

}  // namespace

GrFile parse_gr(std::istream& in) {
  GrFile file;
  bool have_header = false;
  std::uint64_t declared_arcs = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split(line);
    if (fields.empty() || fields[0] == "c") continue;
    if (fields[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (fields.size() != 4 || fields[1] != "sp") throw ParseError(line_no, "expected 'p sp <n> <m>'");
      file.num_vertices = parse_number<VertexId>(fields[2], line_no, "vertex count");
      declared_arcs = parse_number<std::uint64_t>(fields[3], line_no, "arc count");
      file.arcs.reserve(declared_arcs);
      have_header = true;
    } else if (fields[0] == "a") {
      if (!have_header) throw ParseError(line_no, "arc line before problem line");
      if (fields.size() != 4) throw ParseError(line_no, "expected 'a <tail> <head> <weight>'");
      auto tail = parse_number<std::uint64_t>(fields[1], line_no, "tail");
      auto head = parse_number<std::uint64_t>(fields[2], line_no, "head");
      auto weight = parse_number<std::int64_t>(fields[3], line_no, "weight");
      if (tail < 1 || tail > file.num_vertices || head < 1 || head > file.num_vertices) {
        throw ParseError(line_no, "vertex id out of range");
      }
      if (weight < 0) throw ParseError(line_no, "negative weight");
      file.arcs.push_back({static_cast<VertexId>(tail - 1), static_cast<VertexId>(head - 1), weight});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(fields[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (file.arcs.size() != declared_arcs) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_arcs) + " arcs, found " +
                                  std::to_string(file.arcs.size()));
  }
  return file;
}

Graph load_dimacs(std::istream& cost_in, std::istream& length_in, std::int64_t divisor) {
  if (divisor <= 0) throw std::invalid_argument("weight divisor must be positive");
  GrFile costs = parse_gr(cost_in);
  GrFile lengths = parse_gr(length_in);
  if (costs.num_vertices != lengths.num_vertices) {
    throw StructuralError("cost and length files disagree on the vertex count");
  }
  if (costs.arcs.size() != lengths.arcs.size()) {
    throw StructuralError("cost and length files disagree on the arc count");
  }
  std::vector<ArcSpec> arcs;
  arcs.reserve(costs.arcs.size());
  for (std::size_t i = 0; i < costs.arcs.size(); ++i) {
    const GrArc& c = costs.arcs[i];
    const GrArc& l = lengths.arcs[i];
    if (c.tail != l.tail || c.head != l.head) {
      throw StructuralError("arc " + std::to_string(i + 1) + " differs between cost and length files");
    }
    if (c.tail == c.head) continue;
    arcs.push_back({c.tail, c.head, c.weight / divisor, l.weight / divisor});
  }
  return Graph(costs.num_vertices, std::move(arcs));
}

Graph load_dimacs(const std::filesystem::path& cost_file, const std::filesystem::path& length_file,
                  std::int64_t divisor) {
  auto cost_in = open_or_throw(cost_file);
  auto length_in = open_or_throw(length_file);
  return load_dimacs(cost_in, length_in, divisor);
}

void write_dimacs(std::ostream& out, const Graph& g, ArcWeight which, std::int64_t multiplier) {
  out << "c " << (which == ArcWeight::cost ? "cost" : "length") << " weights x" << multiplier << '\n';
  out << "p sp " << g.num_vertices() << ' ' << g.num_arcs() << '\n';
  for (ArcId a = 0; a < g.num_arcs(); ++a) {
    std::int64_t w = which == ArcWeight::cost ? g.cost(a) : g.length(a);
    out << "a " << g.tail(a) + 1 << ' ' << g.head(a) + 1 << ' ' << w * multiplier << '\n';
  }
}

std::vector<Point> parse_dimacs_coords(std::istream& in, VertexId num_vertices) {
  std::vector<Point> coords(num_vertices);
  std::vector<bool> seen(num_vertices, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split(line);
    if (fields.empty() || fields[0] == "c" || fields[0] == "p") continue;
    if (fields[0] != "v" || fields.size() != 4) throw ParseError(line_no, "expected 'v <id> <x> <y>'");
    auto id = parse_number<std::uint64_t>(fields[1], line_no, "vertex id");
    if (id < 1 || id > num_vertices) throw ParseError(line_no, "vertex id out of range");
    coords[id - 1] = {static_cast<double>(parse_number<std::int64_t>(fields[2], line_no, "x")),
                      static_cast<double>(parse_number<std::int64_t>(fields[3], line_no, "y"))};
    seen[id - 1] = true;
  }
  for (VertexId v = 0; v < num_vertices; ++v) {
    if (!seen[v]) throw StructuralError("no coordinate for vertex " + std::to_string(v + 1));
  }
  return coords;
}

}  // namespace cspath
