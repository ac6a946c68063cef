#include "treeauto/nucleus.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "scc.hpp"
#include "treeauto/error.hpp"

namespace treeauto {

namespace {

std::vector<Automorphism> section_closure(const std::vector<Automorphism>& seeds) {
  std::unordered_set<Automorphism> seen;
  std::vector<Automorphism> out;
  for (const auto& g : seeds)
    for (StateId s = 0; s < g.state_count(); ++s)
      if (Automorphism h = g.state(s); seen.insert(h).second) out.push_back(std::move(h));
  return out;
}

/// States met at the prefixes pre * per^j for j = 0, 1, ... until the first
/// repetition; `first_repeat` is the index where the cycle starts.
std::vector<StateId> period_states(const Automorphism& g, const BoundaryPoint& w,
                                   std::size_t& first_repeat) {
  if (!stabilizes(g, w)) throw PreconditionError("the element moves " + w.to_string());
  StateId s = trace(g, w.preperiod()).state;
  std::vector<StateId> seq;
  std::unordered_map<StateId, std::size_t> index;
  while (index.emplace(s, seq.size()).second) {
    seq.push_back(s);
    for (Letter x : w.period()) s = g.next(s, x);
  }
  first_repeat = index.at(s);
  return seq;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* status_name(NucleusStatus s) {
  switch (s) {
    case NucleusStatus::found: return "found";
    case NucleusStatus::exceeded_size: return "exceeded_size";
    case NucleusStatus::exceeded_depth: return "exceeded_depth";
  }
  return "?";
}

SelfSimilarity is_self_similar(const GeneratorSet& gens, std::size_t max_len, std::size_t budget) {
  const WordBall ball = word_ball(gens, max_len, budget);
  std::unordered_map<Automorphism, std::size_t> where;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) where.emplace(ball.elements[i].element, i);

  SelfSimilarity out;
  out.searched_length = ball.radius;
  bool all = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Letter x = 0; x < gens.alphabet().size(); ++x) {
      SectionWitness w{gens.name(i), x, std::nullopt};
      if (auto it = where.find(section(gens.element(i), x)); it != where.end())
        w.word = ball.elements[it->second].word;
      else
        all = false;
      out.witnesses.push_back(std::move(w));
    }
  }
  if (all)
    out.verdict = Verdict::yes;
  else
    out.verdict = ball.exhausted ? Verdict::no : Verdict::inconclusive;
  return out;
}

bool NucleusResult::contains(const Automorphism& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

std::vector<Automorphism> cyclic_part(const std::vector<Automorphism>& set) {
  std::unordered_map<Automorphism, std::uint32_t> index;
  for (std::uint32_t i = 0; i < set.size(); ++i) index.emplace(set[i], i);
  std::vector<std::vector<std::uint32_t>> adj(set.size());
  for (std::uint32_t i = 0; i < set.size(); ++i) {
    const Automorphism& g = set[i];
    for (Letter x = 0; x < g.alphabet().size(); ++x) {
      const auto it = index.find(section(g, x));
      if (it == index.end()) throw Error("cyclic_part: set is not closed under sections");
      adj[i].push_back(it->second);
    }
  }
  const detail::Components scc = detail::strongly_connected(adj);
  std::vector<char> keep(set.size(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < set.size(); ++i) {
    const bool cyclic = scc.members[scc.of[i]].size() > 1 ||
                        std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end();
    if (cyclic && !keep[i]) {
      keep[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!keep[w]) {
        keep[w] = 1;
        stack.push_back(w);
      }
  }
  std::vector<Automorphism> out;
  for (std::uint32_t i = 0; i < set.size(); ++i)
    if (keep[i]) out.push_back(set[i]);
  std::sort(out.begin(), out.end());
  return out;
}

NucleusResult nucleus(const GeneratorSet& gens, std::size_t max_size, std::size_t max_depth) {
  std::vector<Automorphism> seeds{Automorphism(gens.alphabet())};
  for (const auto& g : gens.elements()) {
    seeds.push_back(g);
    seeds.push_back(invert(g));
  }
  NucleusResult result;
  result.elements = cyclic_part(section_closure(seeds));
  if (result.elements.size() > max_size) {
    result.status = NucleusStatus::exceeded_size;
    return result;
  }
  for (std::size_t generation = 1;; ++generation) {
    if (generation > max_depth) {
      result.status = NucleusStatus::exceeded_depth;
      return result;
    }
    const auto& n = result.elements;
    std::vector<Automorphism> products(n);
    products.reserve(n.size() * n.size() + n.size());
    for (const auto& g : n)
      for (const auto& h : n) products.push_back(compose(g, h));
    std::vector<Automorphism> next = cyclic_part(section_closure(products));
    result.generations = generation;
    const bool stable = next == result.elements;
    result.elements = std::move(next);
    if (result.elements.size() > max_size) {
      result.status = NucleusStatus::exceeded_size;
      return result;
    }
    if (stable) {
      result.status = NucleusStatus::found;
      return result;
    }
  }
}

bool stabilizes(const Automorphism& g, const BoundaryPoint& w) { return apply_boundary(g, w) == w; }

bool germ_is_trivial(const Automorphism& g, const BoundaryPoint& w) {
  std::size_t start = 0;
  const auto seq = period_states(g, w, start);
  // The identity state is absorbing, so it is either the whole cycle or absent.
  return seq[start] == 0 && seq.size() == start + 1;
}

std::vector<Automorphism> germ_cycle(const Automorphism& g, const BoundaryPoint& w) {
  std::size_t start = 0;
  const auto seq = period_states(g, w, start);
  const std::size_t c = seq.size() - start;
  std::vector<Automorphism> out;
  out.reserve(c);
  for (std::size_t r = 0; r < c; ++r) {
    const std::size_t j = start + ((r + c - start % c) % c);
    out.push_back(g.state(seq[j]));
  }
  return out;
}

GermClassTable germ_group(const GeneratorSet& gens, const NucleusResult& nucleus,
                          const BoundaryPoint& w, std::size_t max_len, std::size_t budget) {
  if (nucleus.status != NucleusStatus::found)
    throw PreconditionError("germ_group needs a nucleus that was found");
  for (Letter x : w.period())
    if (!gens.alphabet().contains(x)) throw Error("boundary point letter outside the alphabet");
  for (Letter x : w.preperiod())
    if (!gens.alphabet().contains(x)) throw Error("boundary point letter outside the alphabet");

  const WordBall ball = word_ball(gens, max_len, budget);
  GermClassTable table;
  table.point = w;
  table.searched_length = ball.radius;
  table.complete = ball.exhausted && !ball.truncated;
  table.truncated = ball.truncated;

  std::map<std::vector<Automorphism>, std::size_t> class_of;
  auto add = [&](const Automorphism& g, const GroupWord& word) {
    auto [it, fresh] = class_of.emplace(germ_cycle(g, w), table.classes.size());
    if (fresh) {
      table.classes.push_back(g);
      table.words.push_back(word);
    }
    return it->second;
  };
  for (const auto& e : ball.elements)
    if (stabilizes(e.element, w)) add(e.element, e.word);

  // Close under products. Germ groups of a contracting group are no larger
  // than the nucleus, so this terminates.
  for (std::size_t done = 0; done != table.classes.size();) {
    done = table.classes.size();
    if (done > nucleus.elements.size())
      throw Error("germ classes outnumber the nucleus; the nucleus is not closed");
    table.multiplication.assign(done, std::vector<std::size_t>(done));
    for (std::size_t i = 0; i < done; ++i)
      for (std::size_t j = 0; j < done; ++j)
        table.multiplication[i][j] = add(compose(table.classes[i], table.classes[j]),
                                         table.words[i] * table.words[j]);
  }
  return table;
}

}  // namespace treeauto
