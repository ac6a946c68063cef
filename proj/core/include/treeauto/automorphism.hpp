#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "treeauto/words.hpp"

namespace treeauto {

using StateId = std::uint32_t;

/// A permutation of the alphabet: the action of a state on the first level.
class Permutation {
 public:
  static Permutation identity(std::size_t size);
  /// Throws if `images` is not a bijection of 0..size-1.
  explicit Permutation(std::vector<Letter> images);

  std::size_t size() const noexcept { return images_.size(); }
  Letter operator()(Letter x) const { return images_[x]; }
  std::span<const Letter> images() const noexcept { return images_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Letter> images_;
};

class Automorphism;

/// An unrestricted finite-state machine over a fixed alphabet: every state has
/// a root permutation and one transition per letter.
///
/// State 0 is the reserved identity state (trivial permutation, every
/// transition to itself). Machines are mutable builders; freezing a state
/// into an Automorphism minimizes it.
class AutomatonMachine {
 public:
  static constexpr StateId identity_state = 0;

  explicit AutomatonMachine(Alphabet alphabet);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return perms_.size(); }

  /// Adds a state whose transitions all point at the identity state.
  StateId add_state(Permutation perm);
  StateId add_state(Permutation perm, std::vector<StateId> transitions);
  void set_transition(StateId state, Letter x, StateId target);

  const Permutation& permutation(StateId state) const { return perms_.at(state); }
  StateId transition(StateId state, Letter x) const;

  /// The automorphism defined by `initial`, in canonical form.
  Automorphism automorphism(StateId initial) const;

 private:
  Alphabet alphabet_;
  std::vector<Permutation> perms_;
  std::vector<StateId> next_;
};

/// An automorphism of the rooted tree X* given by a finite-state machine.
///
/// Values are immutable and always canonical:
///  - state 0 is the identity state, and it is the only trivial state;
///  - every state is reachable from the initial state, which is state 0 for the
///    identity automorphism and state 1 otherwise;
///  - no two states are behaviorally equivalent;
///  - states are numbered breadth-first from the initial state, visiting
///    letters in increasing order.
/// Hence two automorphisms are equal iff their machines are identical, and
/// `operator==` is structural.
class Automorphism {
 public:
  /// The identity of the tree over `alphabet`.
  explicit Automorphism(Alphabet alphabet = Alphabet{});

  /// Canonicalizes an arbitrary machine given as flat arrays of size
  /// `states * alphabet.size()`: `images[s*k+x]` is the letter written by
  /// state s on reading x, and `next[s*k+x]` is the state it moves to.
  static Automorphism from_tables(Alphabet alphabet, std::span<const Letter> images,
                                  std::span<const StateId> next, StateId initial);

  Alphabet alphabet() const noexcept { return body_->alphabet; }
  std::size_t state_count() const noexcept { return body_->next.size() / body_->alphabet.size(); }
  StateId initial() const noexcept { return state_count() > 1 ? 1 : 0; }
  bool is_identity() const noexcept { return state_count() == 1; }

  /// Image of letter x under state s.
  Letter output(StateId s, Letter x) const { return body_->images[s * alphabet().size() + x]; }
  /// State reached from s after reading x.
  StateId next(StateId s, Letter x) const { return body_->next[s * alphabet().size() + x]; }

  Permutation root_permutation() const;
  /// The section at state s, i.e. the automorphism whose initial state is s.
  Automorphism state(StateId s) const;

  std::size_t hash() const noexcept { return body_->hash; }

  friend bool operator==(const Automorphism& a, const Automorphism& b) noexcept;
  /// Total order used for deterministic output; not meaningful algebraically.
  friend bool operator<(const Automorphism& a, const Automorphism& b) noexcept;

 private:
  struct Body {
    Alphabet alphabet;
    std::vector<Letter> images;
    std::vector<StateId> next;
    std::size_t hash = 0;
  };
  explicit Automorphism(std::shared_ptr<const Body> body) : body_(std::move(body)) {}
  static Automorphism from_canonical(Alphabet alphabet, std::vector<Letter> images,
                                     std::vector<StateId> next);

  std::shared_ptr<const Body> body_;
};

/// gh, acting as g after h: (gh)(v) = g(h(v)).
Automorphism compose(const Automorphism& g, const Automorphism& h);
Automorphism invert(const Automorphism& g);
/// g|_v, defined by g(vu) = g(v) g|_v(u).
Automorphism section(const Automorphism& g, const Vertex& v);
Automorphism section(const Automorphism& g, Letter x);
Vertex apply(const Automorphism& g, const Vertex& v);
/// Image of an eventually periodic boundary point, in canonical form.
BoundaryPoint apply_boundary(const Automorphism& g, const BoundaryPoint& w);
/// Canonical form of g. Values are already canonical, so this only re-derives
/// the form from the machine and is the identity function on well-formed input.
Automorphism minimize(const Automorphism& g);
bool is_identity(const Automorphism& g);

/// State reached by reading v from the initial state, together with g(v).
struct Trace {
  Vertex image;
  StateId state;
};
Trace trace(const Automorphism& g, const Vertex& v);

}  // namespace treeauto

template <>
struct std::hash<treeauto::Automorphism> {
  std::size_t operator()(const treeauto::Automorphism& g) const noexcept { return g.hash(); }
};
