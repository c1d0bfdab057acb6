#include <catch2/catch_amalgamated.hpp>

#include "deepfri/channel.hpp"

using namespace deepfri;

TEST_CASE("channel replays identically from the same seed") {
  Channel a(42), b(42);
  Field f(16);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
  Channel c(42), d(42);
  for (int i = 0; i < 50; ++i) {
    REQUIRE(c.field_element(f) == d.field_element(f));
    REQUIRE(c.index(37) == d.index(37));
  }
}

TEST_CASE("different seeds diverge") {
  Channel a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
  REQUIRE(same == 0);
}

TEST_CASE("children are independent of the parent position") {
  Channel parent(7);
  Channel c1 = parent.child("h1");
  parent.next_u64();
  parent.next_u64();
  Channel c2 = parent.child("h1");
  REQUIRE(c1.seed() == c2.seed());
  Channel other = parent.child("h2");
  REQUIRE(other.seed() != c1.seed());
}

TEST_CASE("field elements stay in range and look uniform-ish") {
  Channel ch(123);
  Field f(4);
  std::vector<int> counts(16, 0);
  for (int i = 0; i < 1600; ++i) {
    FieldElement e = ch.field_element(f);
    REQUIRE(e.bits() < 16);
    counts[e.bits()]++;
  }
  for (int c : counts) {
    REQUIRE(c > 40);  // expectation 100; crude uniformity floor
    REQUIRE(c < 200);
  }
}

TEST_CASE("index sampling is in range") {
  Channel ch(5);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(ch.index(7) < 7);
  }
  REQUIRE(ch.index(1) == 0);
}
