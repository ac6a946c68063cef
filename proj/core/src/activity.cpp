#include "treeauto/activity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "scc.hpp"
#include "treeauto/error.hpp"
#include "treeauto/schreier.hpp"

namespace treeauto {

namespace {

/// Nontrivial part of a canonical machine: nodes are states 1..n-1 shifted
/// down by one, with one edge per letter whose target is nontrivial.
struct ActiveGraph {
  std::vector<std::vector<std::uint32_t>> adj;
  detail::Components scc;
};

ActiveGraph active_graph(const Automorphism& g) {
  ActiveGraph out;
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();
  out.adj.resize(n > 0 ? n - 1 : 0);
  for (StateId s = 1; s < n; ++s)
    for (std::size_t x = 0; x < k; ++x)
      if (const StateId t = g.next(s, static_cast<Letter>(x)); t != 0) out.adj[s - 1].push_back(t - 1);
  out.scc = detail::strongly_connected(out.adj);
  return out;
}

std::size_t internal_edges(const ActiveGraph& graph, std::uint32_t comp) {
  std::size_t edges = 0;
  for (auto v : graph.scc.members[comp])
    for (auto w : graph.adj[v])
      if (graph.scc.of[w] == comp) ++edges;
  return edges;
}

/// Longest chain of nontrivial states from each node of an acyclic region;
/// `allowed` restricts the region.
std::vector<std::size_t> finitary_depths(const Automorphism& g, const std::vector<char>& allowed) {
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();
  std::vector<std::size_t> depth(n, 0);
  std::vector<char> done(n, 0);
  done[0] = 1;
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 1; root < n; ++root) {
    if (done[root] || !allowed[root]) continue;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [s, x] = stack.back();
      if (x < k) {
        const StateId t = g.next(s, static_cast<Letter>(x++));
        if (!done[t] && allowed[t]) stack.emplace_back(t, 0);
        continue;
      }
      std::size_t best = 0;
      for (std::size_t y = 0; y < k; ++y) best = std::max(best, depth[g.next(s, static_cast<Letter>(y))]);
      depth[s] = best + 1;
      done[s] = 1;
      stack.pop_back();
    }
  }
  return depth;
}

}  // namespace

const char* kind_name(ActivityKind kind) noexcept {
  switch (kind) {
    case ActivityKind::finitary: return "finitary";
    case ActivityKind::bounded: return "bounded";
    case ActivityKind::polynomial: return "polynomial";
    case ActivityKind::exponential: return "exponential";
  }
  return "?";
}

int ActivityClass::level() const noexcept {
  switch (kind) {
    case ActivityKind::finitary: return -1;
    case ActivityKind::bounded: return 0;
    case ActivityKind::polynomial: return static_cast<int>(degree);
    case ActivityKind::exponential: break;
  }
  return INT32_MAX;
}

std::string ActivityClass::to_string() const {
  switch (kind) {
    case ActivityKind::finitary: return "finitary:" + std::to_string(depth);
    case ActivityKind::polynomial: return "polynomial:" + std::to_string(degree);
    default: return kind_name(kind);
  }
}

std::vector<BigInt> theta_sequence(const Automorphism& g, std::size_t n_max) {
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();
  // paths[s]: number of words of the current length leading from the initial state to s.
  std::vector<BigInt> paths(n), step(n);
  paths[g.initial()] = 1;
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  for (std::size_t level = 0;; ++level) {
    BigInt active = 0;
    for (StateId s = 1; s < n; ++s) active += paths[s];
    out.push_back(std::move(active));
    if (level == n_max) break;
    for (auto& c : step) c = 0;
    for (StateId s = 0; s < n; ++s) {
      if (paths[s] == 0) continue;
      for (std::size_t x = 0; x < k; ++x) step[g.next(s, static_cast<Letter>(x))] += paths[s];
    }
    paths.swap(step);
  }
  return out;
}

BigInt theta(const Automorphism& g, std::size_t n) { return theta_sequence(g, n).back(); }

BigInt theta_relative(const GeneratorSet& gens, const Automorphism& g, const BoundaryPoint& seed,
                      std::size_t n, std::size_t vertex_budget) {
  if (g.alphabet() != gens.alphabet()) throw AlphabetMismatch("element and generators differ in alphabet");
  BigInt count = 0;
  for (const auto& v : orbit(gens, seed.prefix(n), vertex_budget))
    if (trace(g, v).state != 0) ++count;
  return count;
}

ActivityClass classify_activity(const Automorphism& g) {
  ActivityClass out;
  if (g.is_identity()) return out;
  const ActiveGraph graph = active_graph(g);
  const auto& comps = graph.scc.members;

  // Cyclic components, listed in the order of their smallest state.
  std::vector<std::size_t> cycle_of(comps.size(), SIZE_MAX);
  std::vector<std::uint32_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return comps[a].front() < comps[b].front(); });
  bool exponential = false;
  for (auto c : order) {
    const std::size_t edges = internal_edges(graph, c);
    if (edges == 0) continue;
    CycleComponent cc{{}, edges};
    for (auto v : comps[c]) cc.states.push_back(v + 1);
    exponential = exponential || !cc.simple();
    cycle_of[c] = out.cycles.size();
    out.cycles.push_back(std::move(cc));
  }

  // Most cycles met along one path; components are in reverse topological order.
  std::vector<std::size_t> best(comps.size(), 0), longest(comps.size(), 0);
  std::vector<std::uint32_t> succ(comps.size(), UINT32_MAX);
  for (std::uint32_t c = 0; c < comps.size(); ++c) {
    std::size_t b = 0, l = 0;
    for (auto v : comps[c]) {
      for (auto w : graph.adj[v]) {
        const auto d = graph.scc.of[w];
        if (d == c) continue;
        if (best[d] > b || (best[d] == b && succ[c] == UINT32_MAX)) {
          b = best[d];
          succ[c] = d;
        }
        l = std::max(l, longest[d]);
      }
    }
    best[c] = b + (cycle_of[c] != SIZE_MAX ? 1 : 0);
    longest[c] = l + comps[c].size();
  }
  const std::uint32_t root = graph.scc.of[g.initial() - 1];
  for (std::uint32_t c = root; c != UINT32_MAX; c = succ[c]) {
    if (cycle_of[c] != SIZE_MAX) out.chain.push_back(cycle_of[c]);
    if (best[c] == 0) break;
  }

  if (exponential) {
    out.kind = ActivityKind::exponential;
  } else if (best[root] == 0) {
    out.kind = ActivityKind::finitary;
    out.depth = longest[root];
  } else if (best[root] == 1) {
    out.kind = ActivityKind::bounded;
  } else {
    out.kind = ActivityKind::polynomial;
    out.degree = best[root] - 1;
  }
  return out;
}

DirectionSet directions(const Automorphism& g) {
  const ActivityClass cls = classify_activity(g);
  if (cls.kind != ActivityKind::finitary && cls.kind != ActivityKind::bounded)
    throw PreconditionError("directions are defined for bounded automorphisms, got " + cls.to_string());
  DirectionSet out;
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();
  if (cls.kind == ActivityKind::finitary) {
    out.finitary_depth = cls.depth;
    return out;
  }

  // States on a cycle, and states that can still reach one.
  std::vector<char> on_cycle(n, 0), reaching(n, 0);
  for (const auto& c : cls.cycles)
    for (auto s : c.states) on_cycle[s] = reaching[s] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 1; s < n; ++s) {
      if (reaching[s]) continue;
      for (std::size_t x = 0; x < k && !reaching[s]; ++x)
        if (reaching[g.next(s, static_cast<Letter>(x))]) reaching[s] = changed = true;
    }
  }
  std::vector<char> off(n, 0);
  for (StateId s = 1; s < n; ++s) off[s] = !reaching[s];
  const std::vector<std::size_t> depth = finitary_depths(g, off);

  std::set<BoundaryPoint> found;
  std::size_t finitary_depth = 0;
  // Depth-first over paths through the acyclic part into a cycle.
  std::vector<Letter> path;
  auto walk = [&](auto&& self, StateId s) -> void {
    for (std::size_t x = 0; x < k; ++x) {
      const StateId t = g.next(s, static_cast<Letter>(x));
      if (!reaching[t]) finitary_depth = std::max(finitary_depth, depth[t]);
    }
    if (on_cycle[s]) {
      // The component is a simple cycle: each state has exactly one edge inside it,
      // and every other edge leaves into finitary states.
      std::vector<Letter> period;
      StateId q = s;
      do {
        StateId following = q;
        for (std::size_t x = 0; x < k; ++x) {
          const StateId t = g.next(q, static_cast<Letter>(x));
          if (on_cycle[t]) {
            period.push_back(static_cast<Letter>(x));
            following = t;
          } else if (!reaching[t]) {
            finitary_depth = std::max(finitary_depth, depth[t]);
          }
        }
        q = following;
      } while (q != s);
      found.emplace(Vertex(path), Vertex(std::move(period)));
      return;
    }
    for (std::size_t x = 0; x < k; ++x) {
      const StateId t = g.next(s, static_cast<Letter>(x));
      if (!reaching[t]) continue;
      path.push_back(static_cast<Letter>(x));
      self(self, t);
      path.pop_back();
    }
  };
  walk(walk, g.initial());
  out.directions.assign(found.begin(), found.end());
  out.finitary_depth = finitary_depth;
  return out;
}

Rational singular_measure(const Automorphism& g) {
  if (g.is_identity()) return Rational(0);
  const std::size_t n = g.state_count();
  const std::size_t k = g.alphabet().size();

  // States from which the identity state is reachable; the rest never absorb.
  std::vector<char> absorbing(n, 0);
  absorbing[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 1; s < n; ++s) {
      if (absorbing[s]) continue;
      for (std::size_t x = 0; x < k && !absorbing[s]; ++x)
        if (absorbing[g.next(s, static_cast<Letter>(x))]) absorbing[s] = changed = true;
    }
  }
  if (!absorbing[g.initial()]) return Rational(1);

  // x_s = (1/k) sum_x x_{next(s,x)}, x_identity = 1, over the transient states.
  std::vector<std::size_t> var(n, SIZE_MAX);
  std::vector<StateId> states;
  for (StateId s = 1; s < n; ++s)
    if (absorbing[s]) {
      var[s] = states.size();
      states.push_back(s);
    }
  const std::size_t m = states.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
  const Rational share(1, k);
  for (std::size_t i = 0; i < m; ++i) {
    a[i][i] += 1;
    for (std::size_t x = 0; x < k; ++x) {
      const StateId t = g.next(states[i], static_cast<Letter>(x));
      if (t == 0)
        a[i][m] += share;
      else if (var[t] != SIZE_MAX)
        a[i][var[t]] -= share;
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col] == 0) ++pivot;
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j <= m; ++j) a[col][j] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return 1 - a[var[g.initial()]][m];
}

std::vector<Rational> empirical_measure_sequence(const Automorphism& g, std::size_t n_max) {
  const auto thetas = theta_sequence(g, n_max);
  std::vector<Rational> out;
  out.reserve(thetas.size());
  BigInt level_size = 1;
  for (const auto& t : thetas) {
    out.emplace_back(t, level_size);
    level_size *= g.alphabet().size();
  }
  return out;
}

BoundedProductReport is_bounded_closed_under_product(const Automorphism& g, const Automorphism& h) {
  const std::size_t bound = std::max(directions(g).finitary_depth, directions(h).finitary_depth);
  const Automorphism product = compose(g, h);
  const Automorphism inverse_g = invert(g);
  const Automorphism inverse_h = invert(h);
  BoundedProductReport report{classify_activity(product), classify_activity(inverse_g),
                              classify_activity(inverse_h), bound, true};
  for (const auto* c : {&report.product, &report.inverse_first, &report.inverse_second})
    if (c->kind != ActivityKind::finitary && c->kind != ActivityKind::bounded) report.holds = false;
  if (report.holds) {
    report.holds = directions(product).finitary_depth <= bound &&
                   directions(inverse_g).finitary_depth <= bound &&
                   directions(inverse_h).finitary_depth <= bound;
  }
  return report;
}

}  // namespace treeauto
