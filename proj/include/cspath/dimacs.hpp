#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cspath/graph.hpp"

namespace cspath {

/// Malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed inputs that disagree with each other.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrArc {
  VertexId tail;  // 0-based
  VertexId head;
  std::int64_t weight;  // raw file value
};

struct GrFile {
  VertexId num_vertices = 0;
  std::vector<GrArc> arcs;
};

/// Parses one DIMACS shortest-path `.gr` stream: `c` comments, one
/// `p sp <n> <m>` header, then exactly m `a <tail> <head> <w>` lines with
/// 1-based ids.
GrFile parse_gr(std::istream& in);

inline constexpr std::int64_t kDimacsWeightDivisor = 100;

/// Combines a cost file and a length file over the same arc sequence.
/// Weights are integer-divided by `divisor`; self-loops are dropped,
/// parallel arcs kept.
Graph load_dimacs(std::istream& cost_in, std::istream& length_in,
                  std::int64_t divisor = kDimacsWeightDivisor);
Graph load_dimacs(const std::filesystem::path& cost_file, const std::filesystem::path& length_file,
                  std::int64_t divisor = kDimacsWeightDivisor);

enum class ArcWeight { cost, length };

/// Writes one weight of every arc as a `.gr` stream, multiplying by
/// `multiplier` so that loading with the same divisor restores it.
void write_dimacs(std::ostream& out, const Graph& g, ArcWeight which,
                  std::int64_t multiplier = kDimacsWeightDivisor);

/// Reads a `.co` companion (`v <id> <x> <y>` lines) for a graph of n vertices.
std::vector<Point> parse_dimacs_coords(std::istream& in, VertexId num_vertices);

}  // namespace cspath
