#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeauto/generators.hpp"
#include "treeauto/numeric.hpp"

namespace treeauto {

/// Search limits shared by the word searches. A zero time limit means none.
struct SearchBudget {
  std::size_t max_words = 2'000'000;
  std::chrono::milliseconds time_limit{0};
  /// Products of machines whose state counts multiply past this are skipped.
  std::size_t max_product_states = 20'000;
};

struct RelationReport {
  std::size_t searched_length = 0;
  /// Cyclically reduced words that evaluate to the identity and have no
  /// trivial proper cyclic subword, one per class under rotation and
  /// inversion (the least rotation in word order), sorted in word order.
  std::vector<GroupWord> relators;
  /// Every word of length at most the requested bound was accounted for.
  bool complete = false;
};

/// Relators of length at most `max_len`. Generators equal to their own inverse
/// are used without their inverse letter, so `a a` stands for every word in
/// a, a^-1 of length two.
///
/// Relators are found by meeting in the middle: every relator of length m is
/// u v with |u| = ceil(m/2), |v| = floor(m/2) and u = v^-1 in the group, so
/// only words up to half the length are evaluated.
RelationReport find_relations(const GeneratorSet& gens, std::size_t max_len,
                              const SearchBudget& budget = {});

struct StabilizerReport {
  std::size_t searched_length = 0;
  /// Shortest word of each nontrivial element of length at most the bound
  /// that fixes the point, in word order.
  std::vector<GroupWord> words;
  bool complete = false;
};

/// Words order by length, then by generator index with each inverse right
/// after its generator.
StabilizerReport stabilizer_search(const GeneratorSet& gens, const BoundaryPoint& w,
                                   std::size_t max_len, const SearchBudget& budget = {});

struct GermProbe {
  std::vector<GroupWord> germ_trivial;
  std::vector<GroupWord> germ_nontrivial;
  std::size_t depth = 0;           // length of the commutator chains
  std::size_t pairs_tested = 0;
  /// First pair x, y whose chain [x,y], [x,[x,y]], ... stays germ-nontrivial.
  std::optional<std::pair<GroupWord, GroupWord>> surviving_pair;
  bool complete = false;           // the stabilizer search and the pair scan both finished
};

/// Splits the stabilizing words by germ triviality at w and looks for a pair
/// of germ-nontrivial words whose commutator chains never become trivial.
/// Only the first `max_pairs_words` germ-nontrivial words are paired.
GermProbe germ_faithfulness_probe(const GeneratorSet& gens, const BoundaryPoint& w,
                                  std::size_t max_len, std::size_t depth = 4,
                                  std::size_t max_pairs_words = 16,
                                  const SearchBudget& budget = {});

/// Decomposition of a reduced word as conjugator * root^exponent * conjugator^-1
/// with a primitive, cyclically reduced root.
struct WordRoot {
  GroupWord conjugator;
  GroupWord root;
  std::size_t exponent = 0;
};
/// Throws PreconditionError for the empty word.
WordRoot primitive_root(const GroupWord& w);

/// r1^(l/e1) where l = lcm(e1, e2), if r1 and r2 are powers of a common
/// element of the free group; none otherwise. Throws PreconditionError for
/// an empty argument.
std::optional<GroupWord> kernel_witness_power(const GroupWord& r1, const GroupWord& r2);

/// r1 r2 r1^-1 r2^-1, freely reduced. Throws PreconditionError if r1 and r2
/// commute in the free group.
GroupWord kernel_witness_commutator(const GroupWord& r1, const GroupWord& r2);

struct PointEvidence {
  BoundaryPoint point;
  StabilizerReport stabilizer;
  /// The stabilizing words commute pairwise as group elements.
  bool stabilizer_abelian = true;
  GermProbe germs;
  std::vector<Rational> folner_tail;  // last ratios of the isoperimetric profile
  bool folner_complete = true;
};

struct TrichotomyEvidence {
  std::size_t bound = 0;
  RelationReport relations;
  bool generators_commute = false;
  std::vector<PointEvidence> points;
  /// Branch indicators. Each only says the data do not contradict the branch.
  bool no_free_subgroup = false;  // relators found, or the group is abelian
  bool free_at_point = false;     // no relator, and some stabilizer looks abelian
  bool free_germs = false;        // some germ probe kept a pair alive
  std::string summary;
};

struct TrichotomyOptions {
  std::size_t relation_length = 10;
  std::size_t stabilizer_length = 8;
  std::size_t probe_depth = 4;
  std::size_t folner_levels = 8;
  std::size_t folner_tail = 3;
  std::size_t vertex_budget = 1'000'000;
  SearchBudget budget;
};

TrichotomyEvidence free_subgroup_certificate(const GeneratorSet& gens,
                                             const std::vector<BoundaryPoint>& basepoints,
                                             const TrichotomyOptions& options = {});

}  // namespace treeauto
