#pragma once

#include <cstddef>
#include <vector>

#include "treeauto/generators.hpp"

namespace treeauto {

inline constexpr std::size_t kDefaultElementBudget = 200'000;

struct BallElement {
  Automorphism element;
  GroupWord word;  // shortlex-least word evaluating to `element`
};

/// The elements of word length at most `radius`, discovered breadth-first.
/// Letters are ordered by generator index with each inverse right after its
/// generator, so each element carries its shortlex-least word.
struct WordBall {
  std::vector<BallElement> elements;
  /// elements[layer_start[r]] is the first element of length r.
  std::vector<std::size_t> layer_start;
  std::size_t radius = 0;
  /// A layer came out empty: the whole (finite) group is listed.
  bool exhausted = false;
  /// The element budget stopped the search before `radius`.
  bool truncated = false;
};

WordBall word_ball(const GeneratorSet& gens, std::size_t radius,
                   std::size_t budget = kDefaultElementBudget);

}  // namespace treeauto
