#include <catch2/catch_amalgamated.hpp>

#include "deepfri/subspace.hpp"

using namespace deepfri;

TEST_CASE("enumeration is deterministic and indexable") {
  Field f(4);
  Subspace s(f, {f.element(1), f.element(0x2), f.element(0x8)}, f.element(0x4));
  REQUIRE(s.dim() == 3);
  REQUIRE(s.size() == 8);
  for (uint64_t i = 0; i < s.size(); ++i) {
    REQUIRE(s.index_of(s.element(i)) == i);
  }
  REQUIRE(s.element(0) == f.element(0x4));
  REQUIRE(s.element(1) == f.element(0x5));  // shift + basis[0]
  REQUIRE(s.element(2) == f.element(0x6));  // shift + basis[1]
  REQUIRE(!s.contains(f.element(0x8)));     // 0x8 + shift 0x4 = 0xc is in; 0x8 itself is not
  REQUIRE(s.contains(f.element(0xc)));
}

TEST_CASE("dependent basis is rejected") {
  Field f(4);
  REQUIRE_THROWS_AS(Subspace(f, {f.element(1), f.element(2), f.element(3)}, f.zero()), Error);
}

TEST_CASE("adjacent even/odd indices form a coset of span{basis[0]}") {
  Field f(5);
  Subspace s = Subspace::canonical(f, 4, f.element(0x10));
  for (uint64_t t = 0; t < s.size() / 2; ++t) {
    REQUIRE((s.element(2 * t) + s.element(2 * t + 1)) == s.basis()[0]);
  }
}

TEST_CASE("subspace polynomial of a dim-1 space") {
  Field f(4);
  SECTION("kernel {0,1} gives X^2 + X") {
    FoldMap q = subspace_polynomial(Subspace(f, {f.one()}, f.zero()));
    for (uint32_t x = 0; x < 16; ++x) {
      REQUIRE(q.apply_raw(x) == (f.mul_raw(x, x) ^ x));
    }
  }
  SECTION("kernel {0,a} gives X^2 + aX") {
    FieldElement a = f.element(0xb);
    FoldMap q = subspace_polynomial(Subspace(f, {a}, f.zero()));
    REQUIRE(q.apply(a).is_zero());
    REQUIRE(q.apply(f.zero()).is_zero());
  }
  REQUIRE_THROWS_AS(subspace_polynomial(Subspace::canonical(f, 2, f.zero())), Error);
  REQUIRE_THROWS_AS(subspace_polynomial(Subspace(f, {f.one()}, f.element(2))), Error);
}

TEST_CASE("fold map is F2-linear on the whole field") {
  Field f(4);
  FoldMap q = subspace_polynomial(Subspace(f, {f.element(0x3)}, f.zero()));
  for (uint32_t x = 0; x < 16; ++x) {
    for (uint32_t y = 0; y < 16; ++y) {
      REQUIRE(q.apply_raw(x ^ y) == (q.apply_raw(x) ^ q.apply_raw(y)));
    }
  }
}

TEST_CASE("fold_domain halves the domain and commutes with enumeration") {
  Field f(6);
  Subspace l = Subspace::canonical(f, 4, f.element(0x20));
  FoldMap q(l.basis()[0]);
  Subspace folded = fold_domain(l, q);
  REQUIRE(folded.size() == l.size() / 2);
  for (uint64_t t = 0; t < folded.size(); ++t) {
    REQUIRE(q.apply(l.element(2 * t)) == folded.element(t));
    REQUIRE(q.apply(l.element(2 * t + 1)) == folded.element(t));
  }
  SECTION("image collected by evaluation equals the folded subspace") {
    std::vector<uint32_t> image;
    for (uint64_t i = 0; i < l.size(); ++i) image.push_back(q.apply(l.element(i)).bits());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    REQUIRE(image.size() == folded.size());
    for (uint32_t v : image) REQUIRE(folded.contains(f.element(v)));
  }
}

TEST_CASE("folding a dim-1 domain gives the zero point") {
  Field f(4);
  Subspace l(f, {f.element(0x5)}, f.zero());
  FoldMap q(l.basis()[0]);
  Subspace folded = fold_domain(l, q);
  REQUIRE(folded.dim() == 0);
  REQUIRE(folded.element(0).is_zero());
}

TEST_CASE("coset_pair returns both roots in enumeration order") {
  Field f(4);
  SECTION("q = X^2+X, s = 0 gives (0, 1)") {
    Subspace l = Subspace::canonical(f, 2, f.zero());
    FoldMap q(l.basis()[0]);  // kernel root 1
    auto [s0, s1] = coset_pair(l, q, f.zero());
    REQUIRE(s0.is_zero());
    REQUIRE(s1 == f.one());
  }
  SECTION("roundtrip on every point") {
    Subspace l = Subspace::canonical(f, 3, f.element(0x8));
    FoldMap q(l.basis()[0]);
    for (uint64_t i = 0; i < l.size(); ++i) {
      FieldElement y = l.element(i);
      auto [s0, s1] = coset_pair(l, q, q.apply(y));
      REQUIRE((s0 == y || s1 == y));
      REQUIRE(q.apply(s0) == q.apply(s1));
      REQUIRE(s1 == s0 + q.kernel_root());
    }
  }
  SECTION("point outside the image is rejected") {
    Subspace l = Subspace::canonical(f, 2, f.zero());
    FoldMap q(l.basis()[0]);
    // image of span{1,2} under X^2+X is {0, q(2)=0x6}; 1 is not in it
    REQUIRE_THROWS_AS(coset_pair(l, q, f.one()), Error);
  }
}

TEST_CASE("forest consistency: r folds walk dims k..k-r") {
  Field f(8);
  Subspace l = Subspace::canonical(f, 6, f.element(0x40));
  for (int i = 0; i < 5; ++i) {
    REQUIRE(l.dim() == 6 - i);
    FoldMap q(l.basis()[0]);
    l = fold_domain(l, q);
  }
  REQUIRE(l.dim() == 1);
}

TEST_CASE("kernel must match the first basis vector") {
  Field f(4);
  Subspace l = Subspace::canonical(f, 3, f.zero());
  REQUIRE_THROWS_AS(fold_domain(l, FoldMap(f.element(0x2))), Error);
}
