#pragma once

// Reference implementations used by the tests. They share no code with the
// library beyond plain data types: actions are computed straight from
// hand-written wreath recursions, and free-group questions by stack reduction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeauto/automorphism.hpp"
#include "treeauto/generators.hpp"

namespace oracle {

using Word = std::vector<int>;  // tree vertices as plain letter lists

/// One state of a recursion: root permutation and the section names at each
/// first-level vertex. "1" names the identity.
struct Rule {
  std::vector<int> perm;
  std::vector<std::string> sections;
};

struct Recursion {
  int k = 2;
  std::map<std::string, Rule> rules;
  std::vector<std::string> generators;

  Word apply(const std::string& s, const Word& v) const {
    Word out;
    std::string cur = s;
    for (int x : v) {
      if (cur == "1") {
        out.push_back(x);
        continue;
      }
      const Rule& r = rules.at(cur);
      out.push_back(r.perm[x]);
      cur = r.sections[x];
    }
    return out;
  }

  std::string section(const std::string& s, const Word& v) const {
    std::string cur = s;
    for (int x : v) {
      if (cur == "1") return cur;
      cur = rules.at(cur).sections[x];
    }
    return cur;
  }

  /// Greatest fixed point: a state is trivial if its permutation is trivial
  /// and all its sections are trivial.
  bool trivial(const std::string& s) const {
    std::set<std::string> alive;
    for (const auto& [name, r] : rules) alive.insert(name);
    for (bool changed = true; changed;) {
      changed = false;
      for (auto it = alive.begin(); it != alive.end();) {
        const Rule& r = rules.at(*it);
        bool ok = true;
        for (int x = 0; x < k; ++x)
          ok = ok && r.perm[x] == x && (r.sections[x] == "1" || alive.count(r.sections[x]));
        if (ok) {
          ++it;
        } else {
          it = alive.erase(it);
          changed = true;
        }
      }
    }
    return s == "1" || alive.count(s) > 0;
  }

  /// Applies a word of generator names, rightmost first; "x-" is the inverse of x.
  Word apply_word(const std::vector<std::string>& word, Word v) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (it->back() == '-') {
        // Invert by search over the level: the action is a bijection of X^n.
        const std::string g = it->substr(0, it->size() - 1);
        v = preimage(g, v);
      } else {
        v = apply(*it, v);
      }
    }
    return v;
  }

  Word preimage(const std::string& s, const Word& v) const {
    Word u;
    std::string cur = s;
    for (int y : v) {
      if (cur == "1") {
        u.push_back(y);
        continue;
      }
      const Rule& r = rules.at(cur);
      int x = 0;
      while (r.perm[x] != y) ++x;
      u.push_back(x);
      cur = r.sections[x];
    }
    return u;
  }

  /// Number of level-n vertices with a nontrivial section, by enumeration.
  std::uint64_t theta(const std::string& s, int n) const {
    std::uint64_t count = 0;
    Word v(n, 0);
    for (;;) {
      if (!trivial(section(s, v))) ++count;
      int i = n - 1;
      while (i >= 0 && v[i] == k - 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
    return count;
  }
};

/// Standard recursions of the catalog groups, written out independently of
/// the library's machine texts.
inline Recursion recursion(const std::string& name) {
  Recursion r;
  const std::vector<int> id2{0, 1}, sw{1, 0};
  if (name == "adding_machine") {
    r.rules["a"] = {sw, {"1", "a"}};
    r.generators = {"a"};
  } else if (name == "tullio") {
    r.rules["a"] = {sw, {"1", "a"}};
    r.rules["b"] = {id2, {"b", "a"}};
    r.generators = {"a", "b"};
  } else if (name == "grigorchuk") {
    r.rules["a"] = {sw, {"1", "1"}};
    r.rules["b"] = {id2, {"a", "c"}};
    r.rules["c"] = {id2, {"a", "d"}};
    r.rules["d"] = {id2, {"1", "b"}};
    r.generators = {"a", "b", "c", "d"};
  } else if (name == "basilica") {
    r.rules["a"] = {id2, {"1", "b"}};
    r.rules["b"] = {sw, {"1", "a"}};
    r.generators = {"a", "b"};
  } else if (name == "gupta_sidki_3") {
    r.k = 3;
    r.rules["a"] = {{1, 2, 0}, {"1", "1", "1"}};
    r.rules["A"] = {{2, 0, 1}, {"1", "1", "1"}};
    r.rules["t"] = {{0, 1, 2}, {"a", "A", "t"}};
    r.generators = {"a", "t"};
  } else if (name == "aleshin") {
    r.rules["a"] = {sw, {"c", "b"}};
    r.rules["b"] = {sw, {"b", "c"}};
    r.rules["c"] = {id2, {"a", "a"}};
    r.generators = {"a", "b", "c"};
  } else {
    throw std::invalid_argument("no recursion for " + name);
  }
  return r;
}

inline Word to_word(const treeauto::Vertex& v) { return Word(v.begin(), v.end()); }

inline treeauto::Vertex to_vertex(const Word& w) {
  return treeauto::Vertex(std::vector<treeauto::Letter>(w.begin(), w.end()));
}

/// The integer action of the two-generator example, from its defining formulas.
inline std::int64_t a_int(std::int64_t n, bool inverse) { return inverse ? n - 1 : n + 1; }
inline std::int64_t b_int(std::int64_t n, bool inverse) {
  if (n == 0) return 0;
  std::int64_t p = 1, odd = n;
  while (odd % 2 == 0) {
    odd /= 2;
    p *= 2;
  }
  return p * (inverse ? odd - 2 : odd + 2);
}

/// Free group words as (generator, +-1) pairs, reduced with a stack.
using FreeWord = std::vector<std::pair<int, int>>;

inline FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  for (const auto& x : w) {
    if (!out.empty() && out.back().first == x.first && out.back().second == -x.second)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out(a);
  out.insert(out.end(), b.begin(), b.end());
  return reduce(out);
}

inline FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
  return out;
}

inline FreeWord power(const FreeWord& w, long n) {
  FreeWord out;
  const FreeWord base = n < 0 ? inverse(w) : w;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = concat(out, base);
  return out;
}

/// In a free group two elements share a root iff they commute.
inline bool commute(const FreeWord& a, const FreeWord& b) { return concat(a, b) == concat(b, a); }

/// w = conjugator * root^exponent * conjugator^-1 with root cyclically reduced
/// and not a proper power. Found by peeling matching ends, then trying every
/// period that divides the length.
struct Root {
  FreeWord conjugator, root;
  long exponent = 0;
};

inline Root root_of(const FreeWord& word) {
  FreeWord w = reduce(word);
  Root r;
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].first == w[hi - 1].first && w[lo].second == -w[hi - 1].second) {
    r.conjugator.push_back(w[lo]);
    ++lo;
    --hi;
  }
  const FreeWord core(w.begin() + lo, w.begin() + hi);
  for (std::size_t d = 1; d <= core.size(); ++d) {
    if (core.size() % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < core.size() && periodic; ++i) periodic = core[i] == core[i - d];
    if (periodic) {
      r.root.assign(core.begin(), core.begin() + d);
      r.exponent = static_cast<long>(core.size() / d);
      break;
    }
  }
  return r;
}

/// Random machine with `states` nontrivial-candidate states, all reachable or
/// not; the library canonicalizes whatever comes out.
inline treeauto::Automorphism random_automorphism(std::mt19937& rng, std::size_t k, std::size_t states,
                                                  double identity_bias = 0.3) {
  using namespace treeauto;
  AutomatonMachine m{Alphabet(k)};
  std::vector<StateId> ids;
  for (std::size_t i = 0; i < states; ++i) {
    std::vector<Letter> perm(k);
    for (std::size_t x = 0; x < k; ++x) perm[x] = static_cast<Letter>(x);
    std::shuffle(perm.begin(), perm.end(), rng);
    ids.push_back(m.add_state(Permutation(perm)));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  for (auto s : ids)
    for (std::size_t x = 0; x < k; ++x)
      m.set_transition(s, static_cast<Letter>(x), coin(rng) < identity_bias ? 0 : ids[pick(rng)]);
  return m.automorphism(ids.front());
}

}  // namespace oracle
