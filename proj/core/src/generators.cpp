#include "treeauto/generators.hpp"

#include <algorithm>

#include "treeauto/error.hpp"

namespace treeauto {

void GeneratorSet::add(std::string name, Automorphism element) {
  if (name.empty() || name == "e" || name == "1") throw Error("reserved generator name '" + name + "'");
  if (find(name)) throw Error("duplicate generator name '" + name + "'");
  if (element.alphabet() != alphabet_)
    throw AlphabetMismatch("generator '" + name + "' acts on a tree of degree " +
                           std::to_string(element.alphabet().size()));
  names_.push_back(std::move(name));
  elements_.push_back(std::move(element));
}

const Automorphism* GeneratorSet::find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? nullptr : &elements_[static_cast<std::size_t>(it - names_.begin())];
}

const Automorphism& GeneratorSet::at(std::string_view name) const {
  if (const auto* g = find(name)) return *g;
  throw UnknownGenerator(std::string(name));
}

GeneratorSet GeneratorSet::symmetrized() const {
  GeneratorSet out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    Automorphism inv = invert(elements_[i]);
    if (std::find(out.elements_.begin(), out.elements_.end(), inv) != out.elements_.end()) continue;
    out.names_.push_back(names_[i] + "^-1");
    out.elements_.push_back(std::move(inv));
  }
  return out;
}

Automorphism evaluate_word(const GeneratorSet& gens, const GroupWord& word) {
  Automorphism result(gens.alphabet());
  for (const auto& letter : word) {
    const Automorphism& g = gens.at(letter.name);
    result = compose(result, letter.inverse ? invert(g) : g);
  }
  return result;
}

}  // namespace treeauto
