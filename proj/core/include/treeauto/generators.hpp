#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "treeauto/automorphism.hpp"
#include "treeauto/group_word.hpp"

namespace treeauto {

/// An ordered set of named automorphisms over one alphabet.
class GeneratorSet {
 public:
  explicit GeneratorSet(Alphabet alphabet = Alphabet{}) : alphabet_(alphabet) {}

  /// Throws on duplicate names, the reserved name "e", or an alphabet mismatch.
  void add(std::string name, Automorphism element);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Automorphism& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Automorphism>& elements() const noexcept { return elements_; }

  /// nullptr if absent.
  const Automorphism* find(std::string_view name) const;
  /// Throws UnknownGenerator if absent.
  const Automorphism& at(std::string_view name) const;

  /// A symmetric generating set: the generators followed by `name^-1` for every
  /// generator whose inverse is not already an element of the set.
  GeneratorSet symmetrized() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<Automorphism> elements_;
};

/// Product of the word's letters in order: "a b" evaluates to compose(a, b).
Automorphism evaluate_word(const GeneratorSet& gens, const GroupWord& word);

}  // namespace treeauto
