#include <doctest.h>

#include "../support/oracles.hpp"
#include "treeauto/activity.hpp"
#include "treeauto/catalog.hpp"
#include "treeauto/error.hpp"
#include "treeauto/freeness.hpp"
#include "treeauto/nucleus.hpp"

using namespace treeauto;

TEST_CASE("builtin entries") {
  CHECK(builtin_names().size() == 6);
  CHECK(builtin("adding_machine").generators.names() == std::vector<std::string>{"a"});
  CHECK(builtin("tullio").generators.names() == std::vector<std::string>{"a", "b"});
  CHECK(builtin("gupta_sidki_3").generators.alphabet().size() == 3);
  CHECK_THROWS_AS(builtin("unknown"), Error);
  for (const auto& name : builtin_names()) CHECK_FALSE(builtin(name).provenance.empty());
}

TEST_CASE("machines realize the standard recursions") {
  for (const auto& name : builtin_names()) {
    const auto rec = oracle::recursion(name);
    const GeneratorSet gens = builtin(name).generators;
    REQUIRE(gens.names() == rec.generators);
    const std::size_t depth = rec.k == 2 ? 9 : 6;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      oracle::Word v(depth, 0);
      for (;;) {
        CHECK(oracle::to_word(apply(gens.element(i), oracle::to_vertex(v))) == rec.apply(rec.generators[i], v));
        int j = static_cast<int>(depth) - 1;
        while (j >= 0 && v[j] == rec.k - 1) v[j--] = 0;
        if (j < 0) break;
        ++v[j];
      }
    }
  }
}

TEST_CASE("the two-generator example on integers") {
  CHECK(tullio_integer_action(GroupWord::parse("b"), 12) == 20);
  CHECK(tullio_integer_action(GroupWord::parse("a"), 7) == 8);
  CHECK(tullio_integer_action(GroupWord::parse("b"), 0) == 0);
  CHECK(tullio_integer_action(GroupWord::parse("b^-1"), 20) == 12);
  CHECK(tullio_integer_action(GroupWord::parse("a b"), 12) == 21);
  CHECK_THROWS_AS(tullio_integer_action(GroupWord::parse("c"), 1), UnknownGenerator);
  for (std::int64_t n = -300; n <= 300; ++n) {
    CHECK(tullio_integer_action(GroupWord::parse("b"), n) == oracle::b_int(n, false));
    CHECK(tullio_integer_action(GroupWord::parse("b^-1"), n) == oracle::b_int(n, true));
  }
  CHECK(integer_tree_crosscheck(GroupWord::parse("a"), 7, 4));
  CHECK(integer_tree_crosscheck(GroupWord::parse("b"), 12, 6));
  CHECK(integer_tree_crosscheck(GroupWord{}, 5, 3));
  CHECK(integer_tree_crosscheck(GroupWord::parse("a^-1"), 0, 8));
  CHECK_THROWS_AS(integer_tree_crosscheck(GroupWord::parse("a"), 16, 4), PreconditionError);
  CHECK_THROWS_AS(integer_tree_crosscheck(GroupWord::parse("a"), -1, 4), PreconditionError);
  CHECK_THROWS_AS(integer_tree_crosscheck(GroupWord::parse("a"), 1, 0), PreconditionError);
}

TEST_CASE("expected properties are recomputed, never trusted") {
  for (const auto& name : builtin_names()) {
    const CatalogEntry e = builtin(name);
    for (const auto& [gen, cls] : e.expected.activity)
      CHECK(classify_activity(e.generators.at(gen)).to_string() == cls);
    if (e.expected.nucleus_size) {
      const NucleusResult n = nucleus(e.generators, 64, 10);
      CHECK(n.status == NucleusStatus::found);
      CHECK(n.elements.size() == *e.expected.nucleus_size);
    }
    if (e.expected.contracting == false) CHECK(nucleus(e.generators, 64, 10).status != NucleusStatus::found);
    if (!e.expected.short_relators.empty()) {
      const RelationReport r = find_relations(e.generators, 3);
      for (const auto& rel : e.expected.short_relators)
        CHECK(std::find(r.relators.begin(), r.relators.end(), GroupWord::parse(rel)) != r.relators.end());
    }
  }
}
