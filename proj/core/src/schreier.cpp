#include "treeauto/schreier.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "treeauto/error.hpp"

namespace treeauto {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

std::vector<Vertex> orbit(const GeneratorSet& gens, const Vertex& v, std::size_t budget) {
  const GeneratorSet sym = gens.symmetrized();
  for (Letter x : v)
    if (!gens.alphabet().contains(x)) throw Error("vertex letter outside the alphabet");
  std::vector<Vertex> found{v};
  std::unordered_map<Vertex, char> seen{{v, 1}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& g : sym.elements()) {
      Vertex w = apply(g, found[i]);
      if (seen.try_emplace(w, 1).second) {
        if (found.size() >= budget)
          throw BudgetExceeded("orbit exceeds the vertex budget of " + std::to_string(budget));
        found.push_back(std::move(w));
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::uint32_t SchreierLevelGraph::index_of(const Vertex& v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw Error("vertex " + v.to_string() + " is not in the graph");
  return static_cast<std::uint32_t>(it - vertices.begin());
}

SchreierLevelGraph schreier_level_graph(const GeneratorSet& gens, const Vertex& seed,
                                        std::size_t budget) {
  const GeneratorSet sym = gens.symmetrized();
  SchreierLevelGraph graph;
  graph.level = seed.size();
  graph.generators = sym.names();
  graph.vertices = orbit(gens, seed, budget);
  std::unordered_map<Vertex, std::uint32_t> index;
  index.reserve(graph.vertices.size());
  for (std::uint32_t i = 0; i < graph.vertices.size(); ++i) index.emplace(graph.vertices[i], i);
  graph.edges.reserve(graph.vertices.size() * sym.size());
  for (std::uint32_t i = 0; i < graph.vertices.size(); ++i) {
    for (std::uint32_t s = 0; s < sym.size(); ++s) {
      const Trace t = trace(sym.element(s), graph.vertices[i]);
      graph.edges.push_back({s, i, index.at(t.image), t.state == 0});
    }
  }
  return graph;
}

std::vector<std::vector<std::uint32_t>> gamma_prime_components(const SchreierLevelGraph& graph) {
  DisjointSets sets(graph.vertices.size());
  for (const auto& e : graph.edges)
    if (e.trivial_section) sets.unite(e.source, e.target);
  // Roots are the smallest member, so components come out ordered by smallest vertex.
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> slot(graph.vertices.size(), UINT32_MAX);
  for (std::uint32_t v = 0; v < graph.vertices.size(); ++v) {
    const std::uint32_t r = sets.find(v);
    if (slot[r] == UINT32_MAX) {
      slot[r] = static_cast<std::uint32_t>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

FolnerReport folner_candidate(const GeneratorSet& gens, const BoundaryPoint& seed, std::size_t n,
                              std::size_t budget) {
  if (n == 0) throw PreconditionError("Folner candidates start at level 1");
  const Vertex prefix = seed.prefix(n);
  const SchreierLevelGraph graph = schreier_level_graph(gens, prefix, budget);

  FolnerReport report;
  report.level = n;
  report.orbit_size = graph.vertices.size();
  report.tail = seed.shift(n);
  const auto comps = gamma_prime_components(graph);
  std::vector<std::uint32_t> comp_of(graph.vertices.size());
  for (std::uint32_t c = 0; c < comps.size(); ++c)
    for (auto v : comps[c]) comp_of[v] = c;

  // The lift of an edge s: v -> s(v) to v u ends at s(v) s|_v(u). It leaves
  // F = {x u : x in the component} iff s(v) is outside the component or s|_v
  // moves u. Trivial-section edges never leave.
  const GeneratorSet sym = gens.symmetrized();
  std::vector<std::size_t> boundary(comps.size(), 0);
  std::size_t nontrivial = 0;
  for (const auto& e : graph.edges) {
    if (e.trivial_section) continue;
    ++nontrivial;
    const bool leaves =
        comp_of[e.source] != comp_of[e.target] ||
        apply_boundary(section(sym.element(e.generator), graph.vertices[e.source]), report.tail) != report.tail;
    if (leaves) ++boundary[comp_of[e.source]];
  }
  report.bound = Rational(nontrivial, graph.vertices.size());

  for (std::size_t c = 0; c < comps.size(); ++c) {
    ComponentStats stats{comps[c], boundary[c], Rational(boundary[c], comps[c].size())};
    const auto& best = report.components.empty() ? stats : report.components[report.best];
    if (report.components.empty() || stats.ratio < best.ratio ||
        (stats.ratio == best.ratio && stats.vertices.size() > best.vertices.size()))
      report.best = c;
    report.components.push_back(std::move(stats));
  }
  const auto& best = report.components[report.best];
  for (auto v : best.vertices) report.best_component.push_back(graph.vertices[v]);
  report.boundary_size = best.boundary;
  report.ratio = best.ratio;
  const std::uint32_t seed_index = graph.index_of(prefix);
  report.anchor = comp_of[seed_index] == report.best ? prefix : report.best_component.front();
  return report;
}

IsoperimetricProfile isoperimetric_profile(const GeneratorSet& gens, const BoundaryPoint& seed,
                                           std::size_t n_max, std::size_t budget) {
  if (n_max == 0) throw PreconditionError("isoperimetric profile needs n_max >= 1");
  IsoperimetricProfile profile;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const FolnerReport r = folner_candidate(gens, seed, n, budget);
    profile.ratios.push_back(r.ratio);
    profile.bounds.push_back(r.bound);
  }
  return profile;
}

}  // namespace treeauto
