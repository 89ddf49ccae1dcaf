#include "cspath/engine.hpp"

#include <regex>
#include <stdexcept>

namespace cspath {

std::string EngineSpec::name() const {
  if (kind == Kind::dijkstra) return "Dij";
  return std::to_string(k) + "-HS" + std::to_string(p_max);
}

EngineSpec EngineSpec::parse(const std::string& name) {
  if (name == "Dij") return dijkstra();
  static const std::regex hs_name(R"(([1-9][0-9]*)-HS([1-9][0-9]*))");
  std::smatch m;
  if (!std::regex_match(name, m, hs_name)) throw std::invalid_argument("unknown engine '" + name + "'");
  return hs(static_cast<std::uint32_t>(std::stoul(m[1])), static_cast<std::uint32_t>(std::stoul(m[2])));
}

namespace {

class DijkstraEngine final : public PathEngine {
 public:
  DijkstraEngine(const Graph& g, VertexId s, VertexId t) : g_(g), s_(s), t_(t) {}

  std::optional<EngineResult> shortest(const WeightView& w) override {
    ShortestPathTree tree = dijkstra(g_, s_, w, t_);
    auto path = extract_path(g_, tree, s_, t_);
    if (!path) return std::nullopt;
    return EngineResult{std::move(*path), tree.dist[t_]};
  }
  bool exact() const override { return true; }
  std::string name() const override { return "Dij"; }

 private:
  const Graph& g_;
  VertexId s_;
  VertexId t_;
};

class HsEngine final : public PathEngine {
 public:
  HsEngine(const Graph& g, VertexId s, VertexId t, const EngineSpec& spec)
      : g_(g), spec_(spec), hs_(build_k_hs(g, s, t, spec.k)) {
    if (spec_.p_max > 1) {
      if (!g.has_coords()) throw std::invalid_argument("perspective shortcuts need vertex coordinates");
      if (spec_.perspective == PerspectiveMode::fixed) {
        hs_ = add_perspective_shortcuts(g_, hs_, compute_perspective_arcs(g_, t, WeightView::at(Rational(0))),
                                        spec_.p_max);
      }
    }
  }

  std::optional<EngineResult> shortest(const WeightView& w) override {
    std::optional<HsSearchResult> found;
    if (spec_.p_max > 1 && spec_.perspective == PerspectiveMode::per_alpha) {
      HierStructure layered =
          add_perspective_shortcuts(g_, hs_, compute_perspective_arcs(g_, hs_.target(), w), spec_.p_max);
      found = hs_shortest_path(g_, layered, w, scratch_);
    } else {
      found = hs_shortest_path(g_, hs_, w, scratch_);
    }
    if (!found) return std::nullopt;
    return EngineResult{std::move(found->walk), found->weight};
  }
  bool exact() const override { return false; }
  std::string name() const override { return spec_.name(); }

 private:
  const Graph& g_;
  EngineSpec spec_;
  HierStructure hs_;
  HsScratch scratch_;
};

}  // namespace

std::unique_ptr<PathEngine> make_engine(const Graph& g, VertexId s, VertexId t, const EngineSpec& spec) {
  if (spec.kind == EngineSpec::Kind::dijkstra) return std::make_unique<DijkstraEngine>(g, s, t);
  if (spec.k == 0 || spec.p_max == 0) throw std::invalid_argument("k and p_max must be positive");
  return std::make_unique<HsEngine>(g, s, t, spec);
}

}  // namespace cspath
