#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "treeauto/generators.hpp"
#include "treeauto/numeric.hpp"

namespace treeauto {

inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;

/// Orbit of v under the group generated by `gens`, in shortlex order.
/// Throws BudgetExceeded once more than `budget` vertices are found.
std::vector<Vertex> orbit(const GeneratorSet& gens, const Vertex& v,
                          std::size_t budget = kDefaultVertexBudget);

struct SchreierEdge {
  std::uint32_t generator;  // index into SchreierLevelGraph::generators
  std::uint32_t source;     // index into SchreierLevelGraph::vertices
  std::uint32_t target;
  bool trivial_section;     // the generator's section at the source is the identity
};

/// Action graph of a symmetric generating set on one level orbit: one edge per
/// (generator, vertex), ordered by vertex then generator.
struct SchreierLevelGraph {
  std::size_t level = 0;
  std::vector<std::string> generators;
  std::vector<Vertex> vertices;  // shortlex order
  std::vector<SchreierEdge> edges;

  /// Throws Error if v is not a vertex of the graph.
  std::uint32_t index_of(const Vertex& v) const;
};

/// The graph on orbit(gens, seed) for the symmetrized generating set.
SchreierLevelGraph schreier_level_graph(const GeneratorSet& gens, const Vertex& seed,
                                        std::size_t budget = kDefaultVertexBudget);

/// Connected components of the subgraph of trivial-section edges, as sorted
/// vertex-index sets, ordered by their smallest vertex.
std::vector<std::vector<std::uint32_t>> gamma_prime_components(const SchreierLevelGraph& graph);

struct ComponentStats {
  std::vector<std::uint32_t> vertices;
  /// Edges (s, v), v in the component, whose lift s(v u) = s(v) s|_v(u) leaves
  /// the lifted set {x u : x in the component}, u the seed's tail. This is the
  /// edge boundary of the lifted set in the orbital graph of the boundary.
  std::size_t boundary = 0;
  Rational ratio;
};

struct FolnerReport {
  std::size_t level = 0;
  std::size_t orbit_size = 0;
  std::vector<ComponentStats> components;
  std::size_t best = 0;  // index into components
  std::vector<Vertex> best_component;
  std::size_t boundary_size = 0;
  Rational ratio;
  /// Sum over the symmetric generators of the relative growth, over |L_n|.
  Rational bound;
  /// Vertex of the best component that every lifted point is carried from:
  /// the seed's prefix when it lies in the component, else its smallest vertex.
  Vertex anchor;
  /// Common tail u of the lifted set {v u : v in best_component}.
  BoundaryPoint tail;
};

/// Throws PreconditionError for n = 0 and BudgetExceeded past the vertex budget.
FolnerReport folner_candidate(const GeneratorSet& gens, const BoundaryPoint& seed, std::size_t n,
                              std::size_t budget = kDefaultVertexBudget);

struct IsoperimetricProfile {
  std::vector<Rational> ratios;  // levels 1..n_max
  std::vector<Rational> bounds;
};

IsoperimetricProfile isoperimetric_profile(const GeneratorSet& gens, const BoundaryPoint& seed,
                                           std::size_t n_max,
                                           std::size_t budget = kDefaultVertexBudget);

}  // namespace treeauto
