#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treeauto/automorphism.hpp"
#include "treeauto/generators.hpp"
#include "treeauto/numeric.hpp"

namespace treeauto {

enum class ActivityKind { finitary, bounded, polynomial, exponential };

/// A strongly connected set of nontrivial states that contains a cycle.
struct CycleComponent {
  std::vector<StateId> states;  // ascending
  std::size_t edges = 0;        // transitions inside the component, one per letter
  bool simple() const noexcept { return edges == states.size(); }
};

/// Position of an automorphism in the activity hierarchy, read off the cycle
/// structure of the nontrivial part of its minimal machine.
struct ActivityClass {
  ActivityKind kind = ActivityKind::finitary;
  /// Finitary: least n with every level-n section trivial. Zero otherwise.
  std::size_t depth = 0;
  /// Polynomial degree d; zero for bounded and finitary.
  std::size_t degree = 0;
  /// Every cyclic component reachable from the initial state.
  std::vector<CycleComponent> cycles;
  /// Indices into `cycles` along a path meeting the most cycles, root first.
  std::vector<std::size_t> chain;

  /// -1 for finitary, 0 for bounded, d for polynomial; exponential has no level.
  int level() const noexcept;
  /// "finitary:<depth>", "bounded", "polynomial:<degree>" or "exponential".
  std::string to_string() const;
};

const char* kind_name(ActivityKind kind) noexcept;

/// The boundary points around which the activity of a bounded automorphism
/// concentrates, and the finitary depth of its sections off those points.
struct DirectionSet {
  std::vector<BoundaryPoint> directions;  // canonical, ascending, no duplicates
  std::size_t finitary_depth = 0;
};

/// Number of level-n vertices with a nontrivial section.
BigInt theta(const Automorphism& g, std::size_t n);
/// theta(g, 0), ..., theta(g, n_max) in one pass.
std::vector<BigInt> theta_sequence(const Automorphism& g, std::size_t n_max);

/// Counts the vertices v of the level-n orbit of seed's prefix under `gens`
/// with g|_v nontrivial. Throws BudgetExceeded past `vertex_budget` vertices.
BigInt theta_relative(const GeneratorSet& gens, const Automorphism& g, const BoundaryPoint& seed,
                      std::size_t n, std::size_t vertex_budget = 1'000'000);

ActivityClass classify_activity(const Automorphism& g);

/// Throws PreconditionError unless g is finitary or bounded.
DirectionSet directions(const Automorphism& g);

/// Uniform measure of the singular set: the probability that a uniformly
/// random boundary point never has a trivial section. Exact.
Rational singular_measure(const Automorphism& g);

/// theta(g, n) / k^n for n = 0..n_max.
std::vector<Rational> empirical_measure_sequence(const Automorphism& g, std::size_t n_max);

/// Classes of gh, g^-1 and h^-1 for bounded (or finitary) g and h.
struct BoundedProductReport {
  ActivityClass product;
  ActivityClass inverse_first;
  ActivityClass inverse_second;
  std::size_t depth_bound = 0;  // max finitary depth of the inputs
  /// All three are bounded or finitary with finitary depth <= depth_bound.
  bool holds = false;
};

/// Throws PreconditionError if an input is polynomial or exponential.
BoundedProductReport is_bounded_closed_under_product(const Automorphism& g, const Automorphism& h);

}  // namespace treeauto
