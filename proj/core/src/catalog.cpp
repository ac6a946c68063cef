#include "treeauto/catalog.hpp"

#include <algorithm>

#include "treeauto/error.hpp"
#include "treeauto/machine_format.hpp"

namespace treeauto {

namespace {

struct Source {
  std::string_view name;
  std::string_view provenance;
  std::string_view machine;
  ExpectedProperties expected;
};

// Wreath recursions are written g = perm (g|_0, g|_1, ...): `perm` is the
// root action and the tuple lists the sections at each first-level vertex.
const std::vector<Source>& sources() {
  static const std::vector<Source> all = {
      {"adding_machine",
       "a = (0 1)(1, a): the binary odometer, a(n) = n + 1 on LSB-first integers.",
       R"(alphabet 2
state a
perm 1 0
on 0 -> e
on 1 -> a
initial a
)",
       {{{"a", "bounded"}}, true, 3, {}}},
      {"tullio",
       "a(0v) = 1v, a(1v) = 0a(v); b(0v) = 0b(v), b(1v) = 1a(v). Realizes "
       "a(n) = n + 1 and b(2^k(2m+1)) = 2^k(2m+3) on binary integers.",
       R"(alphabet 2
state a
perm 1 0
on 0 -> e
on 1 -> a
state b
perm 0 1
on 0 -> b
on 1 -> a
initial a
initial b
)",
       {{{"a", "bounded"}, {"b", "polynomial:1"}}, std::nullopt, std::nullopt, {}}},
      {"grigorchuk",
       "First Grigorchuk group: a = (0 1)(1, 1), b = (a, c), c = (a, d), d = (1, b).",
       R"(alphabet 2
state a
perm 1 0
on 0 -> e
on 1 -> e
state b
perm 0 1
on 0 -> a
on 1 -> c
state c
perm 0 1
on 0 -> a
on 1 -> d
state d
perm 0 1
on 0 -> e
on 1 -> b
initial a
initial b
initial c
initial d
)",
       {{{"a", "finitary:1"}, {"b", "bounded"}, {"c", "bounded"}, {"d", "bounded"}},
        true,
        5,
        {"a a", "b b", "c c", "d d"}}},
      {"basilica",
       "Basilica group, the iterated monodromy group of z^2 - 1: a = (1, b), "
       "b = (0 1)(1, a).",
       R"(alphabet 2
state a
perm 0 1
on 0 -> e
on 1 -> b
state b
perm 1 0
on 0 -> e
on 1 -> a
initial a
initial b
)",
       {{{"a", "bounded"}, {"b", "bounded"}}, true, 7, {}}},
      {"gupta_sidki_3",
       "Gupta-Sidki 3-group: a = (0 1 2)(1, 1, 1), t = (a, a^-1, t).",
       R"(alphabet 3
state a
perm 1 2 0
on 0 -> e
on 1 -> e
on 2 -> e
state ai
perm 2 0 1
on 0 -> e
on 1 -> e
on 2 -> e
state t
perm 0 1 2
on 0 -> a
on 1 -> ai
on 2 -> t
initial a
initial t
)",
       {{{"a", "finitary:1"}, {"t", "bounded"}}, true, 5, {"a a a", "t t t"}}},
      {"aleshin",
       "Aleshin automaton: a = (0 1)(c, b), b = (0 1)(b, c), c = (a, a); generates "
       "a free group of rank 3.",
       R"(alphabet 2
state a
perm 1 0
on 0 -> c
on 1 -> b
state b
perm 1 0
on 0 -> b
on 1 -> c
state c
perm 0 1
on 0 -> a
on 1 -> a
initial a
initial b
initial c
)",
       {{{"a", "exponential"}, {"b", "exponential"}, {"c", "exponential"}}, false, std::nullopt, {}}},
  };
  return all;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer action overflowed 64 bits");
  return r;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : sources()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

CatalogEntry builtin(std::string_view name) {
  const auto& all = sources();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Source& s) { return s.name == name; });
  if (it == all.end()) throw Error("unknown catalog entry '" + std::string(name) + "'");
  return {std::string(it->name), parse_machine(it->machine), std::string(it->provenance), it->expected};
}

std::int64_t tullio_integer_action(const GroupWord& word, std::int64_t n) {
  for (auto it = word.letters().rbegin(); it != word.letters().rend(); ++it) {
    if (it->name == "a") {
      n = checked_add(n, it->inverse ? -1 : 1);
    } else if (it->name == "b") {
      if (n == 0) continue;
      // n = 2^k (2m+1)  ->  2^k (2m+1 ± 2)
      const int k = __builtin_ctzll(static_cast<unsigned long long>(n));
      if (k >= 62) throw Error("integer action overflowed 64 bits");
      const std::int64_t step = std::int64_t{1} << (k + 1);
      n = checked_add(n, it->inverse ? -step : step);
    } else {
      throw UnknownGenerator(it->name);
    }
  }
  return n;
}

bool integer_tree_crosscheck(const GroupWord& word, std::int64_t n, std::size_t depth) {
  if (depth == 0 || depth > 62) throw PreconditionError("crosscheck depth must be in 1..62");
  const std::int64_t modulus = std::int64_t{1} << depth;
  if (n < 0 || n >= modulus)
    throw PreconditionError("depth overflow: " + std::to_string(n) + " does not fit in " +
                            std::to_string(depth) + " bits");
  static const GeneratorSet gens = builtin("tullio").generators;
  const Automorphism g = evaluate_word(gens, word);

  std::vector<Letter> bits(depth);
  for (std::size_t i = 0; i < depth; ++i) bits[i] = static_cast<Letter>((n >> i) & 1);
  const Vertex image = apply(g, Vertex(std::move(bits)));
  std::int64_t decoded = 0;
  for (std::size_t i = 0; i < depth; ++i) decoded |= static_cast<std::int64_t>(image[i]) << i;

  const std::int64_t expected = tullio_integer_action(word, n) & (modulus - 1);
  return decoded == expected;
}

}  // namespace treeauto
