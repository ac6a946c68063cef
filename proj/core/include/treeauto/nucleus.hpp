#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treeauto/ball.hpp"
#include "treeauto/generators.hpp"

namespace treeauto {

enum class Verdict { yes, no, inconclusive };
const char* verdict_name(Verdict v);

struct SectionWitness {
  std::string generator;
  Letter letter = 0;
  /// A word in the generators equal to the section; empty optional if none
  /// was found within the search length.
  std::optional<GroupWord> word;
};

struct SelfSimilarity {
  /// `no` only when the ball covers the whole (finite) group.
  Verdict verdict = Verdict::inconclusive;
  std::vector<SectionWitness> witnesses;  // generator-major, then letter
  std::size_t searched_length = 0;
};

/// Looks up every first-level section of every generator among the words of
/// length at most `max_len`.
SelfSimilarity is_self_similar(const GeneratorSet& gens, std::size_t max_len = 6,
                               std::size_t budget = kDefaultElementBudget);

enum class NucleusStatus { found, exceeded_size, exceeded_depth };
const char* status_name(NucleusStatus s);

struct NucleusResult {
  NucleusStatus status = NucleusStatus::found;
  /// Sorted by Automorphism::operator<, so the identity comes first. For the
  /// exceeded statuses this is the last set computed.
  std::vector<Automorphism> elements;
  std::size_t generations = 0;

  bool contains(const Automorphism& g) const;
};

/// Fixed-point iteration for the nucleus. Starting from the cyclic part of the
/// section closure of the generators and their inverses, the set N is replaced
/// by the elements of the section closure of N and N*N that lie on, or are
/// reachable from, a cycle of the section graph. A contracting group reaches
/// its nucleus; otherwise one of the bounds stops the iteration.
NucleusResult nucleus(const GeneratorSet& gens, std::size_t max_size = 1000,
                      std::size_t max_depth = 20);

/// The elements of `set` that are reachable from a cycle in the graph of
/// first-level sections. `set` must be closed under sections.
std::vector<Automorphism> cyclic_part(const std::vector<Automorphism>& set);

bool stabilizes(const Automorphism& g, const BoundaryPoint& w);

/// g acts trivially on some neighbourhood of w. Throws PreconditionError if g
/// moves w.
bool germ_is_trivial(const Automorphism& g, const BoundaryPoint& w);

/// The sections of g at the prefixes pre * per^j, j large, as one period of the
/// (eventually periodic) sequence, phase-aligned so that entry r is taken at
/// j = r mod length. Two elements fixing w have the same germ at w iff their
/// germ cycles are equal. Throws PreconditionError if g moves w.
std::vector<Automorphism> germ_cycle(const Automorphism& g, const BoundaryPoint& w);

struct GermClassTable {
  BoundaryPoint point;
  std::vector<Automorphism> classes;  // representatives, identity first
  std::vector<GroupWord> words;       // a word for each representative
  std::vector<std::vector<std::size_t>> multiplication;
  std::size_t class_of_identity = 0;
  std::size_t searched_length = 0;
  /// Every element of the group was examined. Otherwise the table lists the
  /// classes generated by the stabilizing words found within the bound.
  bool complete = false;
  /// The element budget stopped the word search before `max_len`.
  bool truncated = false;
};

/// Germ classes at w of the stabilizing words of length at most `max_len`,
/// closed under products. Throws PreconditionError unless the nucleus was
/// found.
GermClassTable germ_group(const GeneratorSet& gens, const NucleusResult& nucleus,
                          const BoundaryPoint& w, std::size_t max_len = 12,
                          std::size_t budget = kDefaultElementBudget);

}  // namespace treeauto
