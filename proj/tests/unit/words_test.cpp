#include <doctest.h>

#include "treeauto/error.hpp"
#include "treeauto/group_word.hpp"
#include "treeauto/words.hpp"

using namespace treeauto;

TEST_CASE("alphabet bounds") {
  CHECK(Alphabet(2).size() == 2);
  CHECK(Alphabet(36).contains(35));
  CHECK_THROWS_AS(Alphabet(0), Error);
  CHECK_THROWS_AS(Alphabet(37), Error);
}

TEST_CASE("vertex parsing and shortlex order") {
  const Alphabet two(2);
  CHECK(Vertex::parse("0110", two).to_string() == "0110");
  CHECK(Vertex::parse("", two).empty());
  CHECK_THROWS_AS(Vertex::parse("012", two), Error);
  CHECK(Vertex::parse("a", Alphabet(11))[0] == 10);
  CHECK(Vertex::parse("11", two) < Vertex::parse("000", two));
  CHECK(Vertex::parse("01", two) < Vertex::parse("10", two));
  CHECK(Vertex::parse("0110", two).prefix(2) == Vertex{0, 1});
  CHECK(Vertex{0}.concat(Vertex{1, 1}) == Vertex{0, 1, 1});
}

TEST_CASE("boundary points are canonical") {
  const Alphabet two(2);
  CHECK(BoundaryPoint::parse(":0", two).to_string() == ":0");
  CHECK(BoundaryPoint::parse("000:00", two).to_string() == ":0");
  CHECK(BoundaryPoint::parse("1:10", two).to_string() == "1:10");
  CHECK(BoundaryPoint::parse("0:10", two).to_string() == ":01");
  CHECK(BoundaryPoint::parse("11:0101", two).to_string() == "1:10");
  CHECK(BoundaryPoint::parse("0:10", two) == BoundaryPoint(Vertex{}, Vertex{0, 1}));
  CHECK_THROWS_AS(BoundaryPoint::parse("10", two), Error);
  CHECK_THROWS_AS(BoundaryPoint::parse("1:", two), Error);
  CHECK(BoundaryPoint().to_string() == ":0");
}

TEST_CASE("boundary point prefixes and shifts agree") {
  const Alphabet three(3);
  const BoundaryPoint w = BoundaryPoint::parse("21:012", three);
  CHECK(w.prefix(8).to_string() == "21012012");
  for (std::size_t n = 0; n < 12; ++n) {
    const BoundaryPoint t = w.shift(n);
    CHECK(w.prefix(n).concat(t.prefix(9)) == w.prefix(n + 9));
  }
}

TEST_CASE("group words reduce freely") {
  CHECK(GroupWord::parse("a b b^-1 a^-1").empty());
  CHECK(GroupWord::parse("a^3 b^-2").to_string() == "a a a b^-1 b^-1");
  CHECK(GroupWord::parse("a*b.c").size() == 3);
  CHECK(GroupWord::parse("1").empty());
  CHECK(GroupWord::parse("e").to_string() == "1");
  CHECK_THROWS_AS(GroupWord::parse("a^x"), Error);
  const GroupWord w = GroupWord::parse("a b^-1 c");
  CHECK((w * w.inverse()).empty());
  CHECK(w.inverse().to_string() == "c^-1 b a^-1");
  CHECK(w.power(-2) == GroupWord::parse("c^-1 b a^-1 c^-1 b a^-1"));
  CHECK(w.power(0).empty());
  CHECK(GroupWord::parse("a b a^-1").is_cyclically_reduced() == false);
  CHECK(GroupWord::parse("a b a").is_cyclically_reduced());
  CHECK(GroupWord::parse("b") < GroupWord::parse("a a"));
}
