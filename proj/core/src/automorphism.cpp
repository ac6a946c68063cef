#include "treeauto/automorphism.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "treeauto/error.hpp"

namespace treeauto {

namespace {

constexpr StateId kUnset = std::numeric_limits<StateId>::max();

struct RowHash {
  std::size_t operator()(const std::vector<std::uint32_t>& row) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : row) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

std::size_t hash_tables(const std::vector<Letter>& images, const std::vector<StateId>& next) {
  std::size_t h = 0xcbf29ce484222325ULL ^ next.size();
  for (auto x : images) h = (h ^ x) * 0x100000001b3ULL;
  for (auto s : next) h = (h ^ (s + 0x9e37u)) * 0x100000001b3ULL;
  return h;
}

void check_same_alphabet(const Automorphism& g, const Automorphism& h) {
  if (g.alphabet() != h.alphabet())
    throw AlphabetMismatch("automorphisms act on trees of degree " +
                           std::to_string(g.alphabet().size()) + " and " +
                           std::to_string(h.alphabet().size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(std::size_t size) {
  std::vector<Letter> images(size);
  std::iota(images.begin(), images.end(), Letter{0});
  return Permutation(std::move(images));
}

Permutation::Permutation(std::vector<Letter> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (auto y : images_) {
    if (y >= images_.size() || hit[y]) throw Error("root permutation is not a bijection");
    hit[y] = true;
  }
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Letter> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Letter>(x);
  return Permutation(std::move(inv));
}

// ---------------------------------------------------------------------------
// AutomatonMachine

AutomatonMachine::AutomatonMachine(Alphabet alphabet) : alphabet_(alphabet) {
  perms_.push_back(Permutation::identity(alphabet.size()));
  next_.assign(alphabet.size(), identity_state);
}

StateId AutomatonMachine::add_state(Permutation perm) {
  return add_state(std::move(perm), std::vector<StateId>(alphabet_.size(), identity_state));
}

StateId AutomatonMachine::add_state(Permutation perm, std::vector<StateId> transitions) {
  if (perm.size() != alphabet_.size() || transitions.size() != alphabet_.size())
    throw AlphabetMismatch("state arity does not match the alphabet");
  const auto id = static_cast<StateId>(perms_.size());
  perms_.push_back(std::move(perm));
  next_.insert(next_.end(), transitions.begin(), transitions.end());
  return id;
}

void AutomatonMachine::set_transition(StateId state, Letter x, StateId target) {
  if (state == identity_state) throw Error("the identity state cannot be modified");
  if (state >= state_count() || target >= state_count() || !alphabet_.contains(x))
    throw Error("transition out of range");
  next_[state * alphabet_.size() + x] = target;
}

StateId AutomatonMachine::transition(StateId state, Letter x) const {
  return next_.at(state * alphabet_.size() + x);
}

Automorphism AutomatonMachine::automorphism(StateId initial) const {
  if (initial >= state_count()) throw Error("initial state out of range");
  const std::size_t k = alphabet_.size();
  std::vector<Letter> images;
  images.reserve(perms_.size() * k);
  for (const auto& p : perms_) images.insert(images.end(), p.images().begin(), p.images().end());
  return Automorphism::from_tables(alphabet_, images, next_, initial);
}

// ---------------------------------------------------------------------------
// Automorphism

Automorphism::Automorphism(Alphabet alphabet) {
  std::vector<Letter> images(alphabet.size());
  std::iota(images.begin(), images.end(), Letter{0});
  *this = from_canonical(alphabet, std::move(images), std::vector<StateId>(alphabet.size(), 0));
}

Automorphism Automorphism::from_canonical(Alphabet alphabet, std::vector<Letter> images,
                                          std::vector<StateId> next) {
  auto body = std::make_shared<Body>();
  body->alphabet = alphabet;
  body->hash = hash_tables(images, next) ^ alphabet.size();
  body->images = std::move(images);
  body->next = std::move(next);
  return Automorphism(std::shared_ptr<const Body>(std::move(body)));
}

Automorphism Automorphism::from_tables(Alphabet alphabet, std::span<const Letter> images,
                                       std::span<const StateId> next, StateId initial) {
  const std::size_t k = alphabet.size();
  const std::size_t n = next.size() / k;
  if (images.size() != next.size() || next.size() % k != 0 || initial >= n)
    throw Error("malformed transition tables");

  // Reachable part, numbered in discovery order.
  std::vector<StateId> local(n, kUnset);
  std::vector<StateId> order{initial};
  local[initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t x = 0; x < k; ++x) {
      const StateId t = next[order[i] * k + x];
      if (t >= n) throw Error("transition target out of range");
      if (local[t] == kUnset) {
        local[t] = static_cast<StateId>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t m = order.size();
  auto img = [&](std::size_t s, std::size_t x) { return images[order[s] * k + x]; };
  auto nxt = [&](std::size_t s, std::size_t x) { return local[next[order[s] * k + x]]; };

  // Trivial states: greatest set of identity-permutation states closed under transitions.
  std::vector<char> trivial(m, 1);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t x = 0; x < k; ++x)
      if (img(s, x) != x) trivial[s] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < m; ++s) {
      if (!trivial[s]) continue;
      for (std::size_t x = 0; x < k; ++x) {
        if (!trivial[nxt(s, x)]) {
          trivial[s] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  if (trivial[0]) return Automorphism(alphabet);

  // Moore partition refinement. Class 0 is reserved for the trivial states.
  std::vector<std::uint32_t> cls(m);
  std::size_t classes = 0;
  {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, RowHash> ids;
    std::vector<std::uint32_t> row(k);
    ids.emplace(std::vector<std::uint32_t>(), 0);
    for (std::size_t s = 0; s < m; ++s) {
      if (trivial[s]) {
        cls[s] = 0;
        continue;
      }
      for (std::size_t x = 0; x < k; ++x) row[x] = img(s, x);
      cls[s] = ids.try_emplace(row, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    classes = ids.size();
  }
  std::vector<std::uint32_t> refined(m);
  std::vector<std::uint32_t> sig(k + 1);
  for (;;) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, RowHash> ids;
    ids.reserve(classes * 2);
    // Trivial states only reach trivial states, so they keep one signature.
    for (std::size_t s = 0; s < m; ++s) {
      sig[0] = cls[s];
      for (std::size_t x = 0; x < k; ++x) sig[x + 1] = cls[nxt(s, x)];
      if (trivial[s]) {
        refined[s] = 0;
        continue;
      }
      refined[s] = ids.try_emplace(sig, static_cast<std::uint32_t>(ids.size() + 1)).first->second;
    }
    const std::size_t count = ids.size() + 1;
    cls.swap(refined);
    if (count == classes) break;
    classes = count;
  }

  // Canonical numbering: identity first, then breadth-first from the initial class.
  std::vector<StateId> canon(classes, kUnset);
  std::vector<std::size_t> rep(classes, m);
  for (std::size_t s = 0; s < m; ++s)
    if (rep[cls[s]] == m) rep[cls[s]] = s;
  canon[0] = 0;
  std::vector<std::uint32_t> queue{cls[0]};
  canon[cls[0]] = 1;
  std::vector<Letter> out_images((classes) * k);
  std::vector<StateId> out_next((classes) * k);
  for (std::size_t x = 0; x < k; ++x) {
    out_images[x] = static_cast<Letter>(x);
    out_next[x] = 0;
  }
  std::size_t used = 2;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::uint32_t c = queue[i];
    const std::size_t s = rep[c];
    const StateId id = canon[c];
    for (std::size_t x = 0; x < k; ++x) {
      const std::uint32_t t = cls[nxt(s, x)];
      if (canon[t] == kUnset) {
        canon[t] = static_cast<StateId>(used++);
        queue.push_back(t);
      }
      out_images[id * k + x] = img(s, x);
      out_next[id * k + x] = canon[t];
    }
  }
  out_images.resize(used * k);
  out_next.resize(used * k);
  return from_canonical(alphabet, std::move(out_images), std::move(out_next));
}

Permutation Automorphism::root_permutation() const {
  const std::size_t k = alphabet().size();
  const StateId s = initial();
  return Permutation(std::vector<Letter>(body_->images.begin() + s * k,
                                         body_->images.begin() + (s + 1) * k));
}

Automorphism Automorphism::state(StateId s) const {
  if (s >= state_count()) throw Error("state out of range");
  if (s == initial()) return *this;
  if (s == 0) return Automorphism(alphabet());
  // The sub-machine of a minimal machine is minimal; only renumber it.
  const std::size_t k = alphabet().size();
  std::vector<StateId> canon(state_count(), kUnset);
  canon[0] = 0;
  canon[s] = 1;
  std::vector<StateId> queue{s};
  std::vector<Letter> images(k);
  std::vector<StateId> next(k, 0);
  std::iota(images.begin(), images.end(), Letter{0});
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const StateId q = queue[i];
    for (std::size_t x = 0; x < k; ++x) {
      const StateId t = body_->next[q * k + x];
      if (canon[t] == kUnset) {
        canon[t] = static_cast<StateId>(queue.size() + 1);
        queue.push_back(t);
      }
      images.push_back(body_->images[q * k + x]);
      next.push_back(canon[t]);
    }
  }
  return from_canonical(alphabet(), std::move(images), std::move(next));
}

bool operator==(const Automorphism& a, const Automorphism& b) noexcept {
  if (a.body_ == b.body_) return true;
  return a.body_->hash == b.body_->hash && a.body_->alphabet == b.body_->alphabet &&
         a.body_->next == b.body_->next && a.body_->images == b.body_->images;
}

bool operator<(const Automorphism& a, const Automorphism& b) noexcept {
  const auto ka = a.alphabet().size(), kb = b.alphabet().size();
  if (ka != kb) return ka < kb;
  if (a.state_count() != b.state_count()) return a.state_count() < b.state_count();
  if (a.body_->images != b.body_->images) return a.body_->images < b.body_->images;
  return a.body_->next < b.body_->next;
}

// ---------------------------------------------------------------------------
// Operations

Automorphism compose(const Automorphism& g, const Automorphism& h) {
  check_same_alphabet(g, h);
  if (g.is_identity()) return h;
  if (h.is_identity()) return g;
  const std::size_t k = g.alphabet().size();
  const std::uint64_t hn = h.state_count();

  // Reachable pairs (p, q): p a state of g, q a state of h.
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId p, StateId q) {
    const auto [it, fresh] = index.try_emplace(p * hn + q, static_cast<StateId>(pairs.size()));
    if (fresh) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(g.initial(), h.initial());
  std::vector<Letter> images;
  std::vector<StateId> next;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (std::size_t x = 0; x < k; ++x) {
      const Letter y = h.output(q, static_cast<Letter>(x));
      images.push_back(g.output(p, y));
      next.push_back(intern(g.next(p, y), h.next(q, static_cast<Letter>(x))));
    }
  }
  return Automorphism::from_tables(g.alphabet(), images, next, 0);
}

Automorphism invert(const Automorphism& g) {
  if (g.is_identity()) return g;
  const std::size_t k = g.alphabet().size();
  const std::size_t n = g.state_count();
  std::vector<Letter> images(n * k);
  std::vector<StateId> next(n * k);
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t x = 0; x < k; ++x) {
      // (g|_x)^{-1} = g^{-1}|_{g(x)}
      const Letter y = g.output(s, static_cast<Letter>(x));
      images[s * k + y] = static_cast<Letter>(x);
      next[s * k + y] = g.next(s, static_cast<Letter>(x));
    }
  }
  return Automorphism::from_tables(g.alphabet(), images, next, g.initial());
}

Trace trace(const Automorphism& g, const Vertex& v) {
  std::vector<Letter> out;
  out.reserve(v.size());
  StateId s = g.initial();
  for (Letter x : v) {
    if (!g.alphabet().contains(x))
      throw Error("letter " + std::to_string(x) + " outside alphabet of size " +
                  std::to_string(g.alphabet().size()));
    out.push_back(g.output(s, x));
    s = g.next(s, x);
  }
  return {Vertex(std::move(out)), s};
}

Automorphism section(const Automorphism& g, const Vertex& v) { return g.state(trace(g, v).state); }

Automorphism section(const Automorphism& g, Letter x) { return section(g, Vertex{x}); }

Vertex apply(const Automorphism& g, const Vertex& v) { return trace(g, v).image; }

BoundaryPoint apply_boundary(const Automorphism& g, const BoundaryPoint& w) {
  auto [head, s] = trace(g, w.preperiod());
  std::vector<Letter> pre(head.begin(), head.end());
  // State at the start of each period sweep; the first repeat closes the cycle.
  std::map<StateId, std::size_t> seen;
  std::vector<std::vector<Letter>> blocks;
  while (!seen.contains(s)) {
    seen.emplace(s, blocks.size());
    auto [block, t] = [&] {
      std::vector<Letter> out;
      StateId q = s;
      for (Letter x : w.period()) {
        out.push_back(g.output(q, x));
        q = g.next(q, x);
      }
      return std::pair{std::move(out), q};
    }();
    blocks.push_back(std::move(block));
    s = t;
  }
  const std::size_t start = seen.at(s);
  for (std::size_t i = 0; i < start; ++i) pre.insert(pre.end(), blocks[i].begin(), blocks[i].end());
  std::vector<Letter> per;
  for (std::size_t i = start; i < blocks.size(); ++i)
    per.insert(per.end(), blocks[i].begin(), blocks[i].end());
  return BoundaryPoint(Vertex(std::move(pre)), Vertex(std::move(per)));
}

Automorphism minimize(const Automorphism& g) {
  const std::size_t k = g.alphabet().size();
  std::vector<Letter> images;
  std::vector<StateId> next;
  for (StateId s = 0; s < g.state_count(); ++s) {
    for (std::size_t x = 0; x < k; ++x) {
      images.push_back(g.output(s, static_cast<Letter>(x)));
      next.push_back(g.next(s, static_cast<Letter>(x)));
    }
  }
  return Automorphism::from_tables(g.alphabet(), images, next, g.initial());
}

bool is_identity(const Automorphism& g) { return g.is_identity(); }

}  // namespace treeauto
