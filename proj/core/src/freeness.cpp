#include "treeauto/freeness.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "treeauto/error.hpp"
#include "treeauto/nucleus.hpp"
#include "treeauto/schreier.hpp"

namespace treeauto {

namespace {

using Symbol = std::uint16_t;
using SymbolWord = std::vector<Symbol>;

/// The letters used by the searches: each generator, then its inverse unless
/// the generator is an involution (or trivial), in which case the generator
/// letter serves as its own inverse.
struct Symbols {
  std::vector<GroupLetter> letters;
  std::vector<Automorphism> elements;
  std::vector<Symbol> inverse;
  std::vector<char> folded;

  std::size_t size() const { return letters.size(); }
  bool cancels(Symbol s, Symbol t) const { return !folded[s] && inverse[s] == t; }

  explicit Symbols(const GeneratorSet& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Automorphism& g = gens.element(i);
      Automorphism gi = invert(g);
      const auto s = static_cast<Symbol>(letters.size());
      letters.push_back({gens.name(i), false});
      elements.push_back(g);
      if (gi == g) {
        inverse.push_back(s);
        folded.push_back(1);
        continue;
      }
      letters.push_back({gens.name(i), true});
      elements.push_back(std::move(gi));
      inverse.push_back(s + 1);
      inverse.push_back(s);
      folded.push_back(0);
      folded.push_back(0);
    }
  }

  GroupWord word(const SymbolWord& w) const {
    std::vector<GroupLetter> out;
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(letters[s]);
    return GroupWord(std::move(out));
  }

  SymbolWord inverse_of(const SymbolWord& w) const {
    SymbolWord out(w.rbegin(), w.rend());
    for (auto& s : out) s = inverse[s];
    return out;
  }
};

bool shortlex_less(const SymbolWord& a, const SymbolWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit)
      : limit_(limit), start_(std::chrono::steady_clock::now()) {}
  bool expired() const {
    return limit_.count() > 0 && std::chrono::steady_clock::now() - start_ > limit_;
  }

 private:
  std::chrono::milliseconds limit_;
  std::chrono::steady_clock::time_point start_;
};

/// x y x^-1 y^-1, unless an intermediate product could exceed `limit` states.
std::optional<Automorphism> commutator(const Automorphism& x, const Automorphism& y,
                                       std::size_t limit) {
  if (x.state_count() * y.state_count() > limit) return std::nullopt;
  const Automorphism p = compose(x, y);
  const Automorphism q = compose(invert(x), invert(y));
  if (p.state_count() * q.state_count() > limit) return std::nullopt;
  return compose(p, q);
}

/// Trie of words whose prefixes all evaluate to distinct elements.
class PrefixTrie {
 public:
  PrefixTrie(const Symbols& symbols, Alphabet alphabet) : sym_(symbols) {
    intern(Automorphism(alphabet));
    nodes_.push_back({0, 0, 0, 0});
    children_.assign(sym_.size(), -1);
  }

  /// Adds the next layer. Returns false if the budget ran out first.
  bool grow(std::size_t max_nodes, const Deadline& deadline) {
    const std::size_t depth = ++depth_;
    const std::size_t begin = layer_begin_;
    const std::size_t end = nodes_.size();
    layer_begin_ = end;
    for (std::size_t n = begin; n < end; ++n) {
      for (Symbol s = 0; s < sym_.size(); ++s) {
        if (n != 0 && sym_.cancels(nodes_[n].symbol, s)) continue;
        const std::uint32_t e = product(nodes_[n].element, s);
        bool repeat = false;
        for (std::int64_t p = static_cast<std::int64_t>(n);; p = nodes_[p].parent) {
          if (nodes_[p].element == e) {
            repeat = true;
            break;
          }
          if (p == 0) break;
        }
        if (repeat) continue;
        if (nodes_.size() >= max_nodes || ((nodes_.size() & 255) == 0 && deadline.expired()))
          return false;
        children_[n * sym_.size() + s] = static_cast<std::int64_t>(nodes_.size());
        nodes_.push_back({static_cast<std::uint32_t>(n), s, static_cast<std::uint32_t>(depth), e});
        children_.resize(children_.size() + sym_.size(), -1);
      }
    }
    return true;
  }

  /// Node of the word, or -1 if the word has a repeated prefix element.
  std::int64_t find(const Symbol* w, std::size_t len) const {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < len && n >= 0; ++i) n = children_[n * sym_.size() + w[i]];
    return n;
  }

  std::size_t size() const { return nodes_.size(); }
  std::uint32_t depth(std::size_t n) const { return nodes_[n].depth; }
  std::uint32_t element(std::size_t n) const { return nodes_[n].element; }
  SymbolWord word(std::size_t n) const {
    SymbolWord w;
    for (; n != 0; n = nodes_[n].parent) w.push_back(nodes_[n].symbol);
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  struct Node {
    std::uint32_t parent;
    Symbol symbol;
    std::uint32_t depth;
    std::uint32_t element;
  };

  std::uint32_t intern(const Automorphism& g) {
    auto [it, fresh] = ids_.emplace(g, static_cast<std::uint32_t>(elements_.size()));
    if (fresh) elements_.push_back(g);
    return it->second;
  }

  std::uint32_t product(std::uint32_t e, Symbol s) {
    const std::uint64_t key = std::uint64_t{e} * sym_.size() + s;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint32_t r = intern(compose(elements_[e], sym_.elements[s]));
    memo_.emplace(key, r);
    return r;
  }

  const Symbols& sym_;
  std::vector<Node> nodes_;
  std::vector<std::int64_t> children_;
  std::size_t depth_ = 0;
  std::size_t layer_begin_ = 0;  // first node of the deepest layer
  std::vector<Automorphism> elements_;
  std::unordered_map<Automorphism, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> memo_;
};

/// True if some cyclic subword of r shorter than r is trivial. Relies on the
/// trie holding every prefix-distinct word up to half of |r|.
bool has_trivial_cyclic_subword(const SymbolWord& r, const PrefixTrie& trie, const Symbols& sym) {
  const std::size_t m = r.size();
  SymbolWord doubled(r);
  doubled.insert(doubled.end(), r.begin(), r.end());
  for (std::size_t len = 1; len < m; ++len) {
    const std::size_t h = (len + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t p = trie.find(doubled.data() + i, h);
      if (p < 0) return true;
      const SymbolWord q(doubled.begin() + static_cast<std::ptrdiff_t>(i + h),
                         doubled.begin() + static_cast<std::ptrdiff_t>(i + len));
      const SymbolWord qi = sym.inverse_of(q);
      const std::int64_t n = trie.find(qi.data(), qi.size());
      if (n < 0 || trie.element(p) == trie.element(n)) return true;
    }
  }
  return false;
}

SymbolWord least_rotation(const SymbolWord& r, const Symbols& sym) {
  SymbolWord best = r;
  for (const SymbolWord& w : {r, sym.inverse_of(r)}) {
    SymbolWord rot = w;
    for (std::size_t i = 0; i < w.size(); ++i) {
      best = std::min(best, rot);
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  }
  return best;
}

struct StabilizerSearch {
  StabilizerReport report;
  std::vector<Automorphism> elements;  // parallel to report.words
};

StabilizerSearch search_stabilizer(const GeneratorSet& gens, const BoundaryPoint& w,
                                   std::size_t max_len, const SearchBudget& budget) {
  for (Letter x : w.preperiod())
    if (!gens.alphabet().contains(x)) throw Error("boundary point letter outside the alphabet");
  for (Letter x : w.period())
    if (!gens.alphabet().contains(x)) throw Error("boundary point letter outside the alphabet");
  const Symbols sym(gens);
  const Deadline deadline(budget.time_limit);

  // Words are grown by prepending letters, so the image of w under a longer
  // word is one generator application away from its parent's.
  struct Node {
    std::uint32_t parent;
    Symbol first;
    BoundaryPoint image;
  };
  std::vector<Node> layer{{0, 0, w}};
  std::vector<SymbolWord> prev_words{{}};
  std::vector<SymbolWord> hits;
  std::size_t visited = 0;
  StabilizerSearch out;
  out.report.complete = true;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    std::vector<SymbolWord> next_words;
    bool stopped = false;
    for (std::uint32_t i = 0; i < layer.size() && !stopped; ++i) {
      for (Symbol s = 0; s < sym.size(); ++s) {
        if (len > 1 && sym.cancels(s, layer[i].first)) continue;
        if (++visited > budget.max_words || ((visited & 1023) == 0 && deadline.expired())) {
          stopped = true;
          break;
        }
        BoundaryPoint image = apply_boundary(sym.elements[s], layer[i].image);
        SymbolWord word{s};
        word.insert(word.end(), prev_words[i].begin(), prev_words[i].end());
        if (image == w) hits.push_back(word);
        if (len < max_len) {
          next.push_back({i, s, std::move(image)});
          next_words.push_back(std::move(word));
        }
      }
    }
    if (stopped) {
      out.report.complete = false;
      // Hits of the unfinished layer are kept but the bound is the last full one.
      break;
    }
    out.report.searched_length = len;
    layer = std::move(next);
    prev_words = std::move(next_words);
  }

  std::sort(hits.begin(), hits.end(), shortlex_less);
  std::unordered_set<Automorphism> seen;
  for (const auto& h : hits) {
    Automorphism g = sym.elements[h.front()];
    for (std::size_t i = 1; i < h.size(); ++i) g = compose(g, sym.elements[h[i]]);
    if (g.is_identity() || !seen.insert(g).second) continue;
    out.report.words.push_back(sym.word(h));
    out.elements.push_back(std::move(g));
  }
  return out;
}

GermProbe probe_germs(const StabilizerSearch& st, const BoundaryPoint& w, std::size_t depth,
                      std::size_t max_pairs_words, const SearchBudget& budget) {
  const Deadline deadline(budget.time_limit);
  GermProbe probe;
  probe.depth = depth;
  std::vector<Automorphism> nontrivial;
  for (std::size_t i = 0; i < st.elements.size(); ++i) {
    if (germ_is_trivial(st.elements[i], w)) {
      probe.germ_trivial.push_back(st.report.words[i]);
    } else {
      probe.germ_nontrivial.push_back(st.report.words[i]);
      nontrivial.push_back(st.elements[i]);
    }
  }
  const std::size_t n = std::min(nontrivial.size(), max_pairs_words);
  bool finished = true;
  bool stopped = false;
  for (std::size_t i = 0; i < n && !probe.surviving_pair && !stopped; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (deadline.expired()) {
        stopped = true;
        break;
      }
      ++probe.pairs_tested;
      bool alive = true;
      std::optional<Automorphism> c = commutator(nontrivial[i], nontrivial[j], budget.max_product_states);
      for (std::size_t d = 1; d <= depth; ++d) {
        if (!c) {
          // Too large to follow; the pair proves nothing either way.
          alive = false;
          finished = false;
          break;
        }
        if (germ_is_trivial(*c, w)) {
          alive = false;
          break;
        }
        if (d < depth) c = commutator(nontrivial[i], *c, budget.max_product_states);
      }
      if (alive) {
        probe.surviving_pair.emplace(probe.germ_nontrivial[i], probe.germ_nontrivial[j]);
        break;
      }
    }
  }
  probe.complete = st.report.complete && finished && !stopped && nontrivial.size() <= max_pairs_words;
  return probe;
}

}  // namespace

RelationReport find_relations(const GeneratorSet& gens, std::size_t max_len,
                              const SearchBudget& budget) {
  if (max_len == 0) throw PreconditionError("relation search needs max_len >= 1");
  const Symbols sym(gens);
  const Deadline deadline(budget.time_limit);
  RelationReport report;
  std::vector<SymbolWord> found;

  for (Symbol s = 0; s < sym.size(); ++s)
    if (sym.elements[s].is_identity() && sym.inverse[s] >= s) found.push_back({s});

  PrefixTrie trie(sym, gens.alphabet());
  const std::size_t half = (max_len + 1) / 2;
  std::size_t built = 0;
  report.complete = true;
  while (built < half) {
    if (!trie.grow(budget.max_words, deadline)) {
      report.complete = false;
      break;
    }
    ++built;
  }
  report.searched_length = report.complete ? max_len : std::min(max_len, 2 * built);

  // Nodes by (depth, element).
  std::vector<std::unordered_map<std::uint32_t, std::vector<std::uint32_t>>> by_element(built + 1);
  for (std::uint32_t n = 0; n < trie.size(); ++n)
    if (trie.depth(n) <= built) by_element[trie.depth(n)][trie.element(n)].push_back(n);

  std::set<SymbolWord> dedup;
  for (std::size_t m = 2; m <= report.searched_length; ++m) {
    const std::size_t h1 = (m + 1) / 2;
    const std::size_t h2 = m / 2;
    for (const auto& [element, us] : by_element[h1]) {
      const auto it = by_element[h2].find(element);
      if (it == by_element[h2].end()) continue;
      for (auto u : us) {
        const SymbolWord uw = trie.word(u);
        for (auto v : it->second) {
          const SymbolWord vw = trie.word(v);
          if (sym.cancels(uw.back(), sym.inverse[vw.back()])) continue;
          SymbolWord r = uw;
          const SymbolWord vi = sym.inverse_of(vw);
          r.insert(r.end(), vi.begin(), vi.end());
          if (sym.cancels(r.back(), r.front())) continue;
          if (has_trivial_cyclic_subword(r, trie, sym)) continue;
          SymbolWord canon = least_rotation(r, sym);
          if (dedup.insert(canon).second) found.push_back(std::move(canon));
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), shortlex_less);
  for (const auto& r : found) report.relators.push_back(sym.word(r));
  return report;
}

StabilizerReport stabilizer_search(const GeneratorSet& gens, const BoundaryPoint& w,
                                   std::size_t max_len, const SearchBudget& budget) {
  return search_stabilizer(gens, w, max_len, budget).report;
}

GermProbe germ_faithfulness_probe(const GeneratorSet& gens, const BoundaryPoint& w,
                                  std::size_t max_len, std::size_t depth,
                                  std::size_t max_pairs_words, const SearchBudget& budget) {
  const StabilizerSearch st = search_stabilizer(gens, w, max_len, budget);
  return probe_germs(st, w, depth, max_pairs_words, budget);
}

WordRoot primitive_root(const GroupWord& w) {
  if (w.empty()) throw PreconditionError("the empty word has no root");
  const auto& l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size() - 1;
  while (i < j && l[i] == l[j].inverted()) {
    ++i;
    --j;
  }
  const std::vector<GroupLetter> core(l.begin() + static_cast<std::ptrdiff_t>(i),
                                      l.begin() + static_cast<std::ptrdiff_t>(j + 1));
  std::size_t period = core.size();
  for (std::size_t p = 1; p < core.size(); ++p) {
    if (core.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t k = p; k < core.size() && ok; ++k) ok = core[k] == core[k - p];
    if (ok) {
      period = p;
      break;
    }
  }
  WordRoot out;
  out.conjugator = GroupWord(std::vector<GroupLetter>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i)));
  out.root = GroupWord(std::vector<GroupLetter>(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(period)));
  out.exponent = core.size() / period;
  return out;
}

std::optional<GroupWord> kernel_witness_power(const GroupWord& r1, const GroupWord& r2) {
  const WordRoot a = primitive_root(r1);
  const WordRoot b = primitive_root(r2);
  if (a.conjugator != b.conjugator) return std::nullopt;
  if (a.root != b.root && a.root != b.root.inverse()) return std::nullopt;
  const std::size_t l = std::lcm(a.exponent, b.exponent);
  return r1.power(static_cast<long>(l / a.exponent));
}

GroupWord kernel_witness_commutator(const GroupWord& r1, const GroupWord& r2) {
  if (kernel_witness_power(r1, r2))
    throw PreconditionError("the words commute: " + r1.to_string() + " and " + r2.to_string());
  return r1 * r2 * r1.inverse() * r2.inverse();
}

TrichotomyEvidence free_subgroup_certificate(const GeneratorSet& gens,
                                             const std::vector<BoundaryPoint>& basepoints,
                                             const TrichotomyOptions& options) {
  TrichotomyEvidence ev;
  ev.bound = options.relation_length;
  ev.relations = find_relations(gens, options.relation_length, options.budget);
  ev.generators_commute = true;
  for (std::size_t i = 0; i < gens.size() && ev.generators_commute; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (compose(gens.element(i), gens.element(j)) != compose(gens.element(j), gens.element(i))) {
        ev.generators_commute = false;
        break;
      }

  for (const auto& w : basepoints) {
    PointEvidence pe;
    pe.point = w;
    const StabilizerSearch st =
        search_stabilizer(gens, w, options.stabilizer_length, options.budget);
    pe.stabilizer = st.report;
    for (std::size_t i = 0; i < st.elements.size() && pe.stabilizer_abelian; ++i)
      for (std::size_t j = i + 1; j < st.elements.size(); ++j)
        if (compose(st.elements[i], st.elements[j]) != compose(st.elements[j], st.elements[i])) {
          pe.stabilizer_abelian = false;
          break;
        }
    pe.germs = probe_germs(st, w, options.probe_depth, 16, options.budget);
    try {
      const auto profile = isoperimetric_profile(gens, w, options.folner_levels, options.vertex_budget);
      const std::size_t keep = std::min(options.folner_tail, profile.ratios.size());
      pe.folner_tail.assign(profile.ratios.end() - static_cast<std::ptrdiff_t>(keep), profile.ratios.end());
    } catch (const BudgetExceeded&) {
      pe.folner_complete = false;
    }
    ev.free_germs = ev.free_germs || pe.germs.surviving_pair.has_value();
    ev.free_at_point = ev.free_at_point || pe.stabilizer_abelian;
    ev.points.push_back(std::move(pe));
  }
  ev.no_free_subgroup = !ev.relations.relators.empty() || ev.generators_commute;
  ev.free_at_point = ev.free_at_point && !ev.no_free_subgroup;

  std::vector<std::string> branches;
  if (ev.no_free_subgroup) branches.emplace_back("no free non-abelian subgroup");
  if (ev.free_at_point) branches.emplace_back("a free subgroup acting freely at a basepoint");
  if (ev.free_germs) branches.emplace_back("a free subgroup of germs");
  if (branches.empty()) {
    ev.summary = "no branch is supported by the bounded data";
  } else {
    ev.summary = "bounded evidence consistent with: " + branches.front();
    for (std::size_t i = 1; i < branches.size(); ++i) ev.summary += "; " + branches[i];
  }
  return ev;
}

}  // namespace treeauto
