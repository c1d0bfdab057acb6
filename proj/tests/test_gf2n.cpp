#include <catch2/catch_amalgamated.hpp>

#include "deepfri/gf2n.hpp"

using namespace deepfri;

TEST_CASE("builtin moduli are irreducible and fixed") {
  for (int n = 1; n <= 32; ++n) {
    Field f(n);  // construction runs the irreducibility check
    REQUIRE(f.n() == n);
    REQUIRE(deepfri::detail::poly_degree(f.modulus()) == n);
  }
  REQUIRE(builtin_modulus(4) == 0x13);  // X^4 + X + 1
  REQUIRE_THROWS_AS(Field(4, 0x11), Error);  // X^4 + 1 = (X+1)^4
  REQUIRE_THROWS_AS(Field(33), Error);
}

TEST_CASE("arithmetic in F16") {
  Field f(4);
  REQUIRE((f.element(0x3) + f.element(0x5)).bits() == 0x6);
  REQUIRE((f.element(0x2) * f.element(0x2)).bits() == 0x4);
  // X^3 * X = X^4 = X + 1 mod X^4+X+1
  REQUIRE((f.element(0x8) * f.element(0x2)).bits() == 0x3);
  SECTION("inverse axiom, exhaustive") {
    for (uint32_t a = 1; a < 16; ++a) {
      REQUIRE(f.mul_raw(a, f.inv_raw(a)) == 1);
    }
  }
  SECTION("char 2: a + a = 0") {
    for (uint32_t a = 0; a < 16; ++a) REQUIRE(f.add_raw(a, a) == 0);
  }
  REQUIRE_THROWS_AS(f.element(0).inv(), Error);
}

TEST_CASE("inverse axiom exhaustive up to n = 8, randomized above") {
  for (int n = 2; n <= 8; ++n) {
    Field f(n);
    for (uint32_t a = 1; a < f.size(); ++a) {
      REQUIRE(f.mul_raw(a, f.inv_raw(a)) == 1);
    }
  }
  Field big(16);
  uint64_t x = 0x12345;
  for (int i = 0; i < 200; ++i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    uint32_t a = static_cast<uint32_t>(x >> 32) & big.mask();
    if (a == 0) continue;
    REQUIRE(big.mul_raw(a, big.inv_raw(a)) == 1);
  }
}

TEST_CASE("Frobenius additivity") {
  for (int n : {3, 4, 8}) {
    Field f(n);
    for (uint32_t a = 0; a < f.size(); ++a) {
      for (uint32_t b = 0; b < f.size(); b += 3) {
        uint32_t lhs = f.mul_raw(a ^ b, a ^ b);
        uint32_t rhs = f.mul_raw(a, a) ^ f.mul_raw(b, b);
        REQUIRE(lhs == rhs);
      }
    }
  }
}

TEST_CASE("field mismatch is rejected") {
  Field f4(4), f5(5);
  REQUIRE_THROWS_AS(f4.element(1) + f5.element(1), Error);
  try {
    f4.element(1) * f5.element(1);
    FAIL("expected throw");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::kFieldMismatch);
  }
}

TEST_CASE("trace takes values in {0,1} and is F2-linear") {
  for (int n : {2, 4, 6}) {
    Field f(n);
    for (uint32_t a = 0; a < f.size(); ++a) {
      uint32_t ta = f.trace_raw(a);
      REQUIRE((ta == 0 || ta == 1));
      for (uint32_t b = 0; b < f.size(); ++b) {
        REQUIRE(f.trace_raw(a ^ b) == (ta ^ f.trace_raw(b)));
      }
    }
  }
}

TEST_CASE("trace of X in F4 is 1") {
  // F4 mod X^2+X+1, a = X: trace = X + X^2 = X + (X+1) = 1.
  Field f(2);
  REQUIRE(f.trace_raw(0x2) == 0x1);
  REQUIRE(f.trace_raw(0) == 0);
}

TEST_CASE("trace kernel has size 2^(n-1) for every nonzero beta") {
  for (int n = 2; n <= 8; ++n) {
    Field f(n);
    for (uint32_t beta = 1; beta < f.size(); ++beta) {
      uint64_t zeros = 0;
      for (uint32_t y = 0; y < f.size(); ++y) {
        if (f.trace_raw(f.mul_raw(beta, y)) == 0) ++zeros;
      }
      REQUIRE(zeros == f.size() / 2);
    }
  }
}

TEST_CASE("hex round trip") {
  Field f(16);
  FieldElement e = f.element(0x01a3);
  REQUIRE(e.to_hex() == "01a3");
  REQUIRE(FieldElement::from_hex(f, "01a3") == e);
  Field f5(5);
  REQUIRE(f5.element(0x11).to_hex() == "11");
  REQUIRE_THROWS_AS(FieldElement::from_hex(f5, "40"), Error);
}

TEST_CASE("subgroup generator has exact order") {
  Field f(16);
  FieldElement g = subgroup_generator(f, 15);
  REQUIRE(g.pow(15).bits() == 1);
  REQUIRE(g.pow(5).bits() != 1);
  REQUIRE(g.pow(3).bits() != 1);
  REQUIRE_THROWS_AS(subgroup_generator(f, 7), Error);  // 7 does not divide 2^16-1
}
