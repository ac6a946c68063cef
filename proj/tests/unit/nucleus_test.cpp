#include <doctest.h>

#include <set>

#include "treeauto/ball.hpp"
#include "treeauto/catalog.hpp"
#include "treeauto/error.hpp"
#include "treeauto/nucleus.hpp"

using namespace treeauto;

namespace {

BoundaryPoint point(const char* text, std::size_t k = 2) { return BoundaryPoint::parse(text, Alphabet(k)); }

Automorphism swap_below_1() {
  AutomatonMachine m{Alphabet(2)};
  const StateId s = m.add_state(Permutation({1, 0}));
  const StateId t = m.add_state(Permutation({0, 1}));
  m.set_transition(s, 0, 0);
  m.set_transition(s, 1, 0);
  m.set_transition(t, 0, 0);
  m.set_transition(t, 1, s);
  return m.automorphism(t);
}

}  // namespace

TEST_CASE("self-similarity") {
  for (const auto& name : builtin_names()) {
    const SelfSimilarity s = is_self_similar(builtin(name).generators, 4);
    CHECK(s.verdict == Verdict::yes);
    for (const auto& w : s.witnesses) {
      REQUIRE(w.word.has_value());
      const GeneratorSet gens = builtin(name).generators;
      CHECK(evaluate_word(gens, *w.word) == section(gens.at(w.generator), w.letter));
    }
  }
  // The swap below 1 has the root swap as a section, which it cannot produce.
  GeneratorSet gens{Alphabet(2)};
  gens.add("t", swap_below_1());
  const SelfSimilarity s = is_self_similar(gens, 4);
  CHECK(s.verdict == Verdict::no);
  CHECK(std::string(verdict_name(s.verdict)) == "no");
}

TEST_CASE("nucleus sizes") {
  const NucleusResult am = nucleus(builtin("adding_machine").generators);
  CHECK(am.status == NucleusStatus::found);
  REQUIRE(am.elements.size() == 3);
  const Automorphism a = builtin("adding_machine").generators.at("a");
  CHECK(am.contains(a));
  CHECK(am.contains(invert(a)));
  CHECK(am.elements.front().is_identity());

  GeneratorSet trivial{Alphabet(2)};
  trivial.add("e1", Automorphism(Alphabet(2)));
  CHECK(nucleus(trivial).elements.size() == 1);

  const NucleusResult gr = nucleus(builtin("grigorchuk").generators, 16, 10);
  CHECK(gr.status == NucleusStatus::found);
  CHECK(gr.elements.size() == 5);
  CHECK(nucleus(builtin("basilica").generators).elements.size() == 7);
  CHECK(nucleus(builtin("gupta_sidki_3").generators).elements.size() == 5);

  const NucleusResult al = nucleus(builtin("aleshin").generators, 64, 10);
  CHECK(al.status != NucleusStatus::found);
  CHECK(std::string(status_name(NucleusStatus::exceeded_size)) == "exceeded_size");
}

TEST_CASE("the nucleus is closed under sections and every element recurs") {
  for (const char* name : {"adding_machine", "grigorchuk", "basilica", "gupta_sidki_3"}) {
    const GeneratorSet gens = builtin(name).generators;
    const NucleusResult nu = nucleus(gens);
    REQUIRE(nu.status == NucleusStatus::found);
    CHECK(std::is_sorted(nu.elements.begin(), nu.elements.end()));
    std::set<Automorphism> hit;
    for (const auto& g : nu.elements)
      for (Letter x = 0; x < gens.alphabet().size(); ++x) {
        CHECK(nu.contains(section(g, x)));
        hit.insert(section(g, x));
      }
    CHECK(hit.size() == nu.elements.size());
    CHECK(cyclic_part(nu.elements) == nu.elements);
  }
}

TEST_CASE("sections of short words fall into the nucleus") {
  for (const char* name : {"adding_machine", "grigorchuk", "basilica"}) {
    const GeneratorSet gens = builtin(name).generators;
    const NucleusResult nu = nucleus(gens);
    const WordBall ball = word_ball(gens, 4);
    for (const auto& e : ball.elements) {
      Vertex v;
      for (std::size_t i = 0; i < 7; ++i) v.push_back(static_cast<Letter>((i * 5 + e.word.size()) % 2));
      CHECK(nu.contains(section(e.element, v)));
      CHECK(nu.contains(section(e.element, Vertex(std::vector<Letter>(7, 1)))));
    }
  }
}

TEST_CASE("stabilizers and germs") {
  const Automorphism t = swap_below_1();
  CHECK(stabilizes(t, point(":0")));
  CHECK(germ_is_trivial(t, point(":0")));
  CHECK(stabilizes(t, point("0:1")));
  CHECK(germ_is_trivial(t, point("0:1")));
  CHECK_FALSE(stabilizes(t, point("1:0")));
  CHECK_THROWS_AS(germ_is_trivial(t, point("1:0")), PreconditionError);

  const GeneratorSet gr = builtin("grigorchuk").generators;
  for (const char* name : {"b", "c", "d"}) {
    CHECK(stabilizes(gr.at(name), point(":1")));
    CHECK_FALSE(germ_is_trivial(gr.at(name), point(":1")));
  }
  CHECK_FALSE(stabilizes(gr.at("a"), point(":1")));
  // Off the ray 1^omega only finitely many sections are nontrivial.
  CHECK(germ_is_trivial(gr.at("b"), point("11:0")));
  CHECK(germ_cycle(gr.at("b"), point(":1")).size() == 3);
  CHECK(germ_is_trivial(Automorphism(Alphabet(2)), point(":01")));
}

TEST_CASE("germ group of the adding machine is trivial") {
  const GeneratorSet gens = builtin("adding_machine").generators;
  const NucleusResult nu = nucleus(gens);
  for (const char* w : {":0", ":1", "01:1", ":011"}) {
    const GermClassTable t = germ_group(gens, nu, point(w), 10);
    CHECK(t.classes.size() == 1);
    CHECK(t.classes.size() <= nu.elements.size());
  }
}

TEST_CASE("germ groups of the first Grigorchuk group") {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  const NucleusResult nu = nucleus(gens, 16, 10);
  REQUIRE(nu.status == NucleusStatus::found);
  const GermClassTable t = germ_group(gens, nu, point(":1"), 10);
  CHECK(t.classes.size() == 4);
  CHECK(t.class_of_identity == 0);
  CHECK(t.classes[0].is_identity());
  CHECK_FALSE(t.complete);
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    CHECK(evaluate_word(gens, t.words[i]) == t.classes[i]);
    // Klein four: every class is its own inverse.
    CHECK(t.multiplication[i][i] == 0);
    for (std::size_t j = 0; j < t.classes.size(); ++j) {
      const Automorphism q = compose(t.classes[i], invert(t.classes[j]));
      CHECK(germ_is_trivial(q, point(":1")) == (i == j));
      const Automorphism p = compose(t.classes[i], t.classes[j]);
      CHECK(germ_cycle(p, point(":1")) == germ_cycle(t.classes[t.multiplication[i][j]], point(":1")));
    }
  }
  for (const char* w : {":0", ":01", "0:1", "10:110"}) {
    const GermClassTable u = germ_group(gens, nu, point(w), 8);
    CHECK(u.classes.size() <= nu.elements.size());
  }
  CHECK_THROWS_AS(germ_group(gens, nucleus(builtin("aleshin").generators, 32, 4), point(":1")),
                  PreconditionError);
}

TEST_CASE("germ-trivial stabilizing elements are closed under products") {
  const GeneratorSet gens = builtin("grigorchuk").generators;
  const BoundaryPoint w = point(":0");
  std::vector<Automorphism> trivial;
  for (const auto& e : word_ball(gens, 6).elements)
    if (stabilizes(e.element, w) && germ_is_trivial(e.element, w)) trivial.push_back(e.element);
  REQUIRE(trivial.size() > 1);
  for (const auto& g : trivial)
    for (const auto& h : trivial) CHECK(germ_is_trivial(compose(g, h), w));
}
