#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "treeauto/activity.hpp"
#include "treeauto/catalog.hpp"
#include "treeauto/error.hpp"

using namespace treeauto;

namespace {

Automorphism all_swap() {
  AutomatonMachine m{Alphabet(2)};
  const StateId s = m.add_state(Permutation({1, 0}));
  m.set_transition(s, 0, s);
  m.set_transition(s, 1, s);
  return m.automorphism(s);
}

BoundaryPoint point(const char* text) { return BoundaryPoint::parse(text, Alphabet(2)); }

}  // namespace

TEST_CASE("theta agrees with enumeration") {
  for (const auto& name : builtin_names()) {
    const auto rec = oracle::recursion(name);
    const GeneratorSet gens = builtin(name).generators;
    const int n_max = rec.k == 2 ? 9 : 6;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto seq = theta_sequence(gens.element(i), n_max);
      REQUIRE(seq.size() == static_cast<std::size_t>(n_max) + 1);
      for (int n = 0; n <= n_max; ++n) {
        CHECK(seq[n] == BigInt(rec.theta(rec.generators[i], n)));
        CHECK(theta(gens.element(i), n) == seq[n]);
      }
    }
  }
}

TEST_CASE("theta of the identity and of the all-swap machine") {
  CHECK(theta(Automorphism(Alphabet(3)), 0) == 0);
  CHECK(theta(Automorphism(Alphabet(3)), 5) == 0);
  CHECK(theta(all_swap(), 20) == BigInt(1) << 20);
}

TEST_CASE("theta relative to an orbit") {
  const GeneratorSet gens = builtin("adding_machine").generators;
  // The orbit of every level is the whole level; a has one active vertex per level.
  for (std::size_t n = 0; n <= 8; ++n)
    CHECK(theta_relative(gens, gens.at("a"), point(":0"), n) == 1);
  CHECK_THROWS_AS(theta_relative(gens, gens.at("a"), point(":0"), 12, 100), BudgetExceeded);
}

TEST_CASE("classification of the catalog") {
  const GeneratorSet t = builtin("tullio").generators;
  CHECK(classify_activity(t.at("a")).kind == ActivityKind::bounded);
  const ActivityClass b = classify_activity(t.at("b"));
  CHECK(b.kind == ActivityKind::polynomial);
  CHECK(b.degree == 1);
  CHECK(b.level() == 1);
  CHECK(b.chain.size() == 2);

  const GeneratorSet g = builtin("grigorchuk").generators;
  const ActivityClass a = classify_activity(g.at("a"));
  CHECK(a.to_string() == "finitary:1");
  CHECK(a.level() == -1);
  CHECK(classify_activity(g.at("d")).to_string() == "bounded");
  CHECK(classify_activity(Automorphism(Alphabet(2))).to_string() == "finitary:0");
  CHECK(classify_activity(all_swap()).kind == ActivityKind::exponential);
  CHECK(classify_activity(builtin("aleshin").generators.at("a")).kind == ActivityKind::exponential);
}

TEST_CASE("classification matches the growth of theta") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Automorphism g = oracle::random_automorphism(rng, 2, 1 + trial % 4, 0.5);
    const ActivityClass c = classify_activity(g);
    const auto seq = theta_sequence(g, 24);
    switch (c.kind) {
      case ActivityKind::finitary:
        CHECK(seq[c.depth] == 0);
        if (c.depth > 0) CHECK(seq[c.depth - 1] > 0);
        break;
      case ActivityKind::bounded:
        CHECK(seq[24] > 0);
        CHECK(seq[24] <= BigInt(1) << g.state_count());
        break;
      case ActivityKind::polynomial:
        CHECK(seq[24] <= (BigInt(1) << g.state_count()) * boost::multiprecision::pow(BigInt(25), c.degree));
        CHECK(seq[24] > seq[12]);
        break;
      case ActivityKind::exponential:
        CHECK(seq[24] > 4 * seq[12]);
        break;
    }
  }
}

TEST_CASE("directions of bounded automorphisms") {
  const GeneratorSet am = builtin("adding_machine").generators;
  const DirectionSet da = directions(am.at("a"));
  REQUIRE(da.directions.size() == 1);
  CHECK(da.directions[0] == point(":1"));

  const GeneratorSet g = builtin("grigorchuk").generators;
  for (const char* name : {"b", "c", "d"}) {
    const DirectionSet d = directions(g.at(name));
    REQUIRE(d.directions.size() == 1);
    CHECK(d.directions[0] == point(":1"));
  }
  CHECK(directions(g.at("a")).directions.empty());
  CHECK_THROWS_AS(directions(builtin("tullio").generators.at("b")), PreconditionError);

  // Off the directions every section becomes trivial within the finitary depth.
  const Automorphism b = g.at("b");
  const DirectionSet d = directions(b);
  for (std::size_t n = 1; n <= 6; ++n) {
    oracle::Word v(n, 0);
    for (;;) {
      const Vertex vx = oracle::to_vertex(v);
      if (!(vx == d.directions[0].prefix(n))) {
        std::size_t split = 0;
        while (vx[split] == d.directions[0].at(split)) ++split;
        if (n - split >= d.finitary_depth + 1) CHECK(is_identity(section(b, vx)));
      }
      int i = static_cast<int>(n) - 1;
      while (i >= 0 && v[i] == 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
  }
}

TEST_CASE("singular measure") {
  for (const auto& name : builtin_names()) {
    const GeneratorSet gens = builtin(name).generators;
    for (const auto& g : gens.elements()) {
      const Rational m = singular_measure(g);
      CHECK(m >= 0);
      CHECK(m <= 1);
      const auto seq = empirical_measure_sequence(g, 12);
      for (std::size_t n = 1; n < seq.size(); ++n) CHECK(seq[n] <= seq[n - 1]);
      CHECK(m <= seq.back());
      if (classify_activity(g).kind != ActivityKind::exponential) CHECK(m == 0);
    }
  }
  CHECK(singular_measure(all_swap()) == 1);
  CHECK(singular_measure(Automorphism(Alphabet(2))) == 0);

  // t = (u, 1) with u the all-swap machine: the points starting with 0.
  AutomatonMachine m{Alphabet(2)};
  const StateId t = m.add_state(Permutation({0, 1}));
  const StateId u = m.add_state(Permutation({1, 0}));
  m.set_transition(t, 0, u);
  m.set_transition(t, 1, 0);
  m.set_transition(u, 0, u);
  m.set_transition(u, 1, u);
  CHECK(singular_measure(m.automorphism(t)) == Rational(1, 2));
}

TEST_CASE("bounded automorphisms are closed under products and inverses") {
  std::vector<Automorphism> bounded;
  for (const auto& name : builtin_names()) {
    const GeneratorSet gens = builtin(name).generators;
    for (const auto& g : gens.elements())
      if (classify_activity(g).level() <= 0) bounded.push_back(g);
  }
  REQUIRE(bounded.size() >= 8);
  for (const auto& g : bounded)
    for (const auto& h : bounded) {
      if (g.alphabet() != h.alphabet()) continue;
      const BoundedProductReport r = is_bounded_closed_under_product(g, h);
      CHECK(r.holds);
      CHECK(r.product.level() <= 0);
      CHECK(classify_activity(compose(g, h)).to_string() == r.product.to_string());
    }
  CHECK_THROWS_AS(is_bounded_closed_under_product(builtin("tullio").generators.at("b"),
                                                  builtin("tullio").generators.at("a")),
                  PreconditionError);
}
