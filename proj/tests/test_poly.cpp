#include <catch2/catch_amalgamated.hpp>

#include "deepfri/channel.hpp"
#include "deepfri/codes.hpp"
#include "deepfri/poly.hpp"

using namespace deepfri;

namespace {
Evaluations random_evals(const Subspace& d, Channel& ch) {
  std::vector<FieldElement> v;
  for (uint64_t i = 0; i < d.size(); ++i) v.push_back(ch.field_element(d.field()));
  return Evaluations(d, std::move(v));
}
}  // namespace

TEST_CASE("polynomial basics") {
  Field f(4);
  Polynomial zero(f);
  REQUIRE(zero.is_zero());
  REQUIRE(zero.degree() == -1);
  Polynomial p = Polynomial::from_bits(f, {1, 1});  // X + 1
  REQUIRE(p.degree() == 1);
  REQUIRE(p(f.one()).is_zero());                    // char 2
  Polynomial q = Polynomial::from_bits(f, {0, 0, 1});
  REQUIRE((p * q).degree() == 3);
  REQUIRE((p + p).is_zero());
}

TEST_CASE("divrem and gcd") {
  Field f(4);
  Polynomial a = Polynomial::from_bits(f, {0x3, 0x1, 0x7, 0x1});
  Polynomial b = Polynomial::from_bits(f, {0x5, 0x1});
  auto [q, r] = a.divrem(b);
  REQUIRE(q * b + r == a);
  REQUIRE(r.degree() < b.degree());

  Polynomial g = Polynomial::from_bits(f, {0x2, 0x1});
  Polynomial lhs = g * Polynomial::from_bits(f, {1, 1});
  Polynomial rhs = g * Polynomial::from_bits(f, {0x4, 0, 1});
  Polynomial got = poly_gcd(lhs, rhs);
  REQUIRE(got.degree() >= 1);
  REQUIRE(lhs.divrem(got).second.is_zero());
  REQUIRE(rhs.divrem(got).second.is_zero());
  Polynomial l = poly_lcm(lhs, rhs);
  REQUIRE(l.divrem(lhs).second.is_zero());
  REQUIRE(l.divrem(rhs).second.is_zero());
  REQUIRE(l.degree() == lhs.degree() + rhs.degree() - got.degree());
}

TEST_CASE("two point interpolation in char 2") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 1, f.zero());  // {0, 1}
  Evaluations e(d, {f.one(), f.zero()});
  Polynomial p = interpolate(e);
  REQUIRE(p == Polynomial::from_bits(f, {1, 1}));  // X + 1
}

TEST_CASE("single point interpolation is the constant") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 0, f.element(0x9));
  Evaluations e(d, {f.element(0x5)});
  REQUIRE(interpolate(e) == Polynomial::from_bits(f, {0x5}));
}

TEST_CASE("encode/interpolate are mutually inverse") {
  Field f(4);
  Channel ch(11);
  Subspace d = Subspace::canonical(f, 3, f.element(0x8));
  SECTION("interpolate then encode on random evaluations") {
    for (int trial = 0; trial < 20; ++trial) {
      Evaluations e = random_evals(d, ch);
      Polynomial p = interpolate(e);
      REQUIRE(p.degree() < static_cast<int64_t>(d.size()));
      REQUIRE(encode(p, d) == e);
    }
  }
  SECTION("encode then interpolate on low-degree polynomials") {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FieldElement> coeffs;
      for (int i = 0; i < 5; ++i) coeffs.push_back(ch.field_element(f));
      Polynomial p(f, coeffs);
      REQUIRE(interpolate(encode(p, d)) == p);
    }
  }
}

TEST_CASE("encode of X and of 0") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 2, f.zero());  // {0,1,2,3}
  Evaluations ex = encode(Polynomial::from_bits(f, {0, 1}), d);
  for (uint64_t i = 0; i < 4; ++i) REQUIRE(ex[i] == d.element(i));
  Evaluations e0 = encode(Polynomial(f), d);
  for (uint64_t i = 0; i < 4; ++i) REQUIRE(e0[i].is_zero());
}

TEST_CASE("out-of-domain evaluation matches interpolate-then-evaluate") {
  Field f(8);
  Channel ch(5);
  Subspace d = Subspace::canonical(f, 2, f.element(0x10));
  Polynomial p = Polynomial::from_bits(f, {1, 0, 1});  // X^2 + 1
  Evaluations e = encode(p, d);
  for (uint32_t z = 0; z < 64; ++z) {
    FieldElement ze = f.element(z);
    REQUIRE(out_of_domain_eval(e, ze) == p(ze));
  }
  SECTION("inside the domain returns the stored value") {
    Evaluations r = random_evals(d, ch);
    for (uint64_t i = 0; i < d.size(); ++i) {
      REQUIRE(out_of_domain_eval(r, d.element(i)) == r[i]);
    }
  }
  SECTION("linearity in the evaluations") {
    Evaluations a = random_evals(d, ch), b = random_evals(d, ch);
    std::vector<FieldElement> sum;
    for (size_t i = 0; i < a.size(); ++i) sum.push_back(a[i] + b[i]);
    Evaluations s(d, sum);
    FieldElement z = f.element(0x55);
    REQUIRE(out_of_domain_eval(s, z) ==
            out_of_domain_eval(a, z) + out_of_domain_eval(b, z));
  }
}

TEST_CASE("quotient_single on an honest codeword drops the degree") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 3, f.zero());
  Polynomial p = Polynomial::from_bits(f, {1, 0, 1});  // X^2 + 1
  FieldElement z = f.element(0x9);
  REQUIRE(!d.contains(z));
  Evaluations g = quotient_single(encode(p, d), z, p(z));
  // (X^2 - z^2)/(X - z) = X + z in char 2
  REQUIRE(interpolate(g) == Polynomial(f, {z, f.one()}));
}

TEST_CASE("quotient of a constant against itself is zero") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 2, f.zero());
  FieldElement c = f.element(0x7);
  Evaluations g = quotient_single(encode(Polynomial(f, {c}), d), f.element(0x8), c);
  for (uint64_t i = 0; i < d.size(); ++i) REQUIRE(g[i].is_zero());
}

TEST_CASE("quotient point inside the domain is rejected") {
  Field f(4);
  Subspace d = Subspace::canonical(f, 2, f.zero());
  Evaluations e = encode(Polynomial::from_bits(f, {1}), d);
  REQUIRE_THROWS_AS(quotient_single(e, f.element(0x2), f.one()), Error);
}

TEST_CASE("quotient_multi specializes to quotient_single at one point") {
  Field f(4);
  Channel ch(9);
  Subspace d = Subspace::canonical(f, 3, f.zero());
  Evaluations e = random_evals(d, ch);
  FieldElement z = f.element(0x9), b = f.element(0x3);
  Evaluations a = quotient_single(e, z, b);
  Evaluations m = quotient_multi(e, {{z.bits(), b}});
  REQUIRE(a == m);
}

TEST_CASE("quotient_multi degree accounting") {
  Field f(8);
  Channel ch(17);
  Subspace d = Subspace::canonical(f, 4, f.element(0x80));
  std::vector<FieldElement> coeffs;
  for (int i = 0; i < 6; ++i) coeffs.push_back(ch.field_element(f));
  coeffs.push_back(f.one());
  Polynomial r(f, coeffs);  // degree 6 < d = 7
  std::map<uint32_t, FieldElement> answers;
  for (uint32_t z : {0x40u, 0x41u, 0x42u}) {
    answers.emplace(z, r(f.element(z)));
  }
  SECTION("honest answers drop the degree by the point count") {
    Evaluations g = quotient_multi(encode(r, d), answers);
    REQUIRE(interpolate(g).degree() == r.degree() - 3);
  }
  SECTION("one wrong answer blows the degree up to |D|-1") {
    answers.begin()->second += f.one();
    Evaluations g = quotient_multi(encode(r, d), answers);
    REQUIRE(interpolate(g).degree() == static_cast<int64_t>(d.size()) - 1);
  }
  SECTION("duplicate points are rejected by construction of the map") {
    // the map keys already dedupe; a point inside the domain still throws
    std::map<uint32_t, FieldElement> bad = answers;
    bad.emplace(d.element(0).bits(), f.zero());
    REQUIRE_THROWS_AS(quotient_multi(encode(r, d), bad), Error);
  }
}

TEST_CASE("multiply-back round trip through quotient_single") {
  Field f(4);
  Channel ch(23);
  Subspace d = Subspace::canonical(f, 3, f.zero());
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<FieldElement> coeffs;
    for (int i = 0; i < 4; ++i) coeffs.push_back(ch.field_element(f));
    Polynomial p(f, coeffs);
    FieldElement z = f.element(0x9);
    Polynomial lifted = Polynomial(f, {z, f.one()}) * p;  // (X - z) * p
    FieldElement b = ch.field_element(f);
    Polynomial r = lifted + Polynomial(f, {b});           // r(z) = b
    Evaluations g = quotient_single(encode(r, d), z, b);
    REQUIRE(interpolate(g) == p);
  }
}

// Quotient lemma: g = QUOTIENT(f, z, b) has a deg <= d-1 polynomial within
// delta iff f has a deg <= d polynomial R within delta with R(z) = b.
// Exhaustive over every f on a 2-point domain; randomized on dim 3.
TEST_CASE("quotient lemma equivalence") {
  Field f(4);
  SECTION("exhaustive, |D| = 2, d = 1") {
    Subspace d = Subspace::canonical(f, 1, f.zero());
    RsParams code_g(f, d, 1);
    RsParams code_f(f, d, 2);
    FieldElement z = f.element(0x5);
    Rational delta(1, 2);
    for (uint32_t v0 = 0; v0 < 16; ++v0) {
      for (uint32_t v1 = 0; v1 < 16; ++v1) {
        Evaluations fe(d, {f.element(v0), f.element(v1)});
        for (uint32_t b = 0; b < 16; ++b) {
          Evaluations g = quotient_single(fe, z, f.element(b));
          bool lhs = !list_decode_rs(g, code_g, delta).empty();
          bool rhs = !list_decode_rs(fe, code_f, delta,
                                     RsConstraint{z, f.element(b)})
                          .empty();
          REQUIRE(lhs == rhs);
        }
      }
    }
  }
  SECTION("randomized, |D| = 8, d = 3, delta = 1/4") {
    Channel ch(41);
    Subspace d = Subspace::canonical(f, 3, f.zero());
    RsParams code_g(f, d, 3);
    RsParams code_f(f, d, 4);
    for (int trial = 0; trial < 50; ++trial) {
      Evaluations fe = random_evals(d, ch);
      FieldElement z = f.element(0x9);
      FieldElement b = ch.field_element(f);
      Evaluations g = quotient_single(fe, z, b);
      bool lhs = !list_decode_rs(g, code_g, Rational(1, 4)).empty();
      bool rhs = !list_decode_rs(fe, code_f, Rational(1, 4), RsConstraint{z, b}).empty();
      REQUIRE(lhs == rhs);
    }
  }
}
