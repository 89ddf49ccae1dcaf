#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "cspath/graph.hpp"

namespace cspath {

/// The label budget ran out before optimality was proven.
class OracleOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactOptions {
  std::size_t label_budget = 10'000'000;
};

struct ExactStats {
  std::size_t labels_created = 0;
};

/// Minimum-cost s-t path of length at most beta, or nullopt if none exists.
/// Bicriteria label setting with Pareto dominance per vertex, pruning any
/// label that cannot reach t within the remaining budget. Throws
/// OracleOverflow once more than `label_budget` labels are created.
std::optional<Path> exact_csp(const Graph& g, VertexId s, VertexId t, Length beta, const ExactOptions& options = {},
                              ExactStats* stats = nullptr);

}  // namespace cspath
