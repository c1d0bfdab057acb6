#ifndef DEEPFRI_GF2N_HPP
#define DEEPFRI_GF2N_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "deepfri/errors.hpp"

namespace deepfri {

class FieldElement;

namespace detail {

inline int poly_degree(uint64_t x) { return x == 0 ? -1 : 63 - __builtin_clzll(x); }

// Multiplication in F2[X] modulo p, where deg(p) = n and both inputs have
// degree < n. Used only by the irreducibility check, which works with the
// image of X rather than field elements.
inline uint64_t poly_mulmod(uint64_t a, uint64_t b, uint64_t p, int n) {
  uint64_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> n) & 1) a ^= p;
  }
  return r;
}

inline uint64_t poly_gcd(uint64_t a, uint64_t b) {
  while (b != 0) {
    while (a != 0 && poly_degree(a) >= poly_degree(b)) {
      a ^= b << (poly_degree(a) - poly_degree(b));
    }
    uint64_t t = a;
    a = b;
    b = t;
  }
  return a;
}

inline std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

// Rabin's irreducibility test: X^(2^n) = X mod p, and X^(2^(n/q)) - X coprime
// to p for every prime q | n.
inline bool is_irreducible(uint64_t p, int n) {
  if (n == 1) return p == 0x3;
  uint64_t x = 0x2;
  uint64_t a = x;
  for (int i = 0; i < n; ++i) a = poly_mulmod(a, a, p, n);
  if (a != x) return false;
  for (int q : prime_factors(n)) {
    uint64_t b = x;
    for (int i = 0; i < n / q; ++i) b = poly_mulmod(b, b, p, n);
    uint64_t h = b ^ x;
    if (h == 0 || poly_gcd(p, h) != 1) return false;
  }
  return true;
}

}  // namespace detail

// One fixed irreducible modulus per extension degree: the smallest degree-n
// irreducible polynomial over F2 when read as an integer bit mask. The choice
// is a convention of this library (nothing canonical forces it); it is pinned
// so that transcripts replay identically across builds.
inline uint64_t builtin_modulus(int n) {
  static constexpr std::array<uint64_t, 33> kTable = {
      0,          0x3,        0x7,        0xb,        0x13,       0x25,
      0x43,       0x83,       0x11b,      0x203,      0x409,      0x805,
      0x1009,     0x201b,     0x4021,     0x8003,     0x1002b,    0x20009,
      0x40009,    0x80027,    0x100009,   0x200005,   0x400003,   0x800021,
      0x100001b,  0x2000009,  0x400001b,  0x8000027,  0x10000003, 0x20000005,
      0x40000003, 0x80000009, 0x10000008dULL};
  DFRI_REQUIRE(n >= 1 && n <= 32, ErrorCode::kNOutOfRange,
               "extension degree must be in [1, 32], got " + std::to_string(n));
  return kTable[static_cast<size_t>(n)];
}

// GF(2^n) for 1 <= n <= 32, bit-packed. Elements are n-bit values read as
// polynomials over F2 modulo the field modulus; addition is XOR.
class Field {
 public:
  explicit Field(int n) : Field(n, builtin_modulus(n)) {}

  Field(int n, uint64_t modulus) : n_(n), modulus_(modulus) {
    DFRI_REQUIRE(n >= 1 && n <= 32, ErrorCode::kNOutOfRange,
                 "extension degree must be in [1, 32], got " + std::to_string(n));
    DFRI_REQUIRE(detail::poly_degree(modulus) == n, ErrorCode::kBadArgument,
                 "modulus degree does not match n");
    DFRI_REQUIRE(detail::is_irreducible(modulus, n), ErrorCode::kBadArgument,
                 "modulus is reducible over F2");
  }

  int n() const { return n_; }
  uint64_t modulus() const { return modulus_; }
  uint64_t size() const { return uint64_t{1} << n_; }
  uint32_t mask() const { return static_cast<uint32_t>(size() - 1); }

  bool operator==(const Field& other) const {
    return n_ == other.n_ && modulus_ == other.modulus_;
  }
  bool operator!=(const Field& other) const { return !(*this == other); }

  // Raw operations on bit-packed values; hot loops use these directly.
  uint32_t add_raw(uint32_t a, uint32_t b) const { return a ^ b; }

  uint32_t mul_raw(uint32_t a, uint32_t b) const {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b != 0) {
      if (b & 1) acc ^= aa;
      aa <<= 1;
      b >>= 1;
    }
    for (int i = 2 * n_ - 2; i >= n_; --i) {
      if ((acc >> i) & 1) acc ^= modulus_ << (i - n_);
    }
    return static_cast<uint32_t>(acc);
  }

  uint32_t pow_raw(uint32_t a, uint64_t k) const {
    uint32_t r = 1;
    while (k != 0) {
      if (k & 1) r = mul_raw(r, a);
      a = mul_raw(a, a);
      k >>= 1;
    }
    return r;
  }

  // a^(2^n - 2); no table memory, uniform for all n.
  uint32_t inv_raw(uint32_t a) const {
    DFRI_REQUIRE(a != 0, ErrorCode::kInversionOfZero, "inverse of zero");
    return pow_raw(a, size() - 2);
  }

  // Tr(a) = sum of a^(2^i) for i in [0, n); always 0 or 1.
  uint32_t trace_raw(uint32_t a) const {
    uint32_t s = 0;
    uint32_t t = a;
    for (int i = 0; i < n_; ++i) {
      s ^= t;
      t = mul_raw(t, t);
    }
    return s;
  }

  FieldElement element(uint64_t bits) const;
  FieldElement zero() const;
  FieldElement one() const;

 private:
  int n_;
  uint64_t modulus_;
};

class FieldElement {
 public:
  FieldElement(const Field& field, uint32_t bits) : field_(field), bits_(bits) {
    DFRI_REQUIRE(bits <= field.mask(), ErrorCode::kBadArgument,
                 "element bits exceed field size");
  }

  const Field& field() const { return field_; }
  uint32_t bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  FieldElement operator+(const FieldElement& o) const {
    check_same_field(o);
    return FieldElement(field_, bits_ ^ o.bits_);
  }
  FieldElement operator-(const FieldElement& o) const { return *this + o; }
  FieldElement operator*(const FieldElement& o) const {
    check_same_field(o);
    return FieldElement(field_, field_.mul_raw(bits_, o.bits_));
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inv() const { return FieldElement(field_, field_.inv_raw(bits_)); }
  FieldElement pow(uint64_t k) const { return FieldElement(field_, field_.pow_raw(bits_, k)); }
  FieldElement trace() const { return FieldElement(field_, field_.trace_raw(bits_)); }

  bool operator==(const FieldElement& o) const {
    return bits_ == o.bits_ && field_ == o.field_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Canonical order: by bit value. Used for deterministic tie-breaking.
  bool operator<(const FieldElement& o) const {
    check_same_field(o);
    return bits_ < o.bits_;
  }

  // Lowercase hex, ceil(n/4) digits; the transcript wire format.
  std::string to_hex() const {
    int digits = (field_.n() + 3) / 4;
    static const char* kHex = "0123456789abcdef";
    std::string s(static_cast<size_t>(digits), '0');
    uint32_t v = bits_;
    for (int i = digits - 1; i >= 0; --i) {
      s[static_cast<size_t>(i)] = kHex[v & 0xf];
      v >>= 4;
    }
    return s;
  }

  static FieldElement from_hex(const Field& field, const std::string& hex) {
    uint64_t v = 0;
    for (char c : hex) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw Error(ErrorCode::kBadArgument, "bad hex digit in field element");
      v = (v << 4) | static_cast<uint64_t>(d);
      DFRI_REQUIRE(v <= field.mask(), ErrorCode::kBadArgument, "hex value exceeds field size");
    }
    return FieldElement(field, static_cast<uint32_t>(v));
  }

 private:
  void check_same_field(const FieldElement& o) const {
    DFRI_REQUIRE(field_ == o.field_, ErrorCode::kFieldMismatch,
                 "operands from different fields");
  }

  Field field_;
  uint32_t bits_;
};

inline FieldElement Field::element(uint64_t bits) const {
  return FieldElement(*this, static_cast<uint32_t>(bits));
}
inline FieldElement Field::zero() const { return FieldElement(*this, 0); }
inline FieldElement Field::one() const { return FieldElement(*this, 1); }

// Factorization of the multiplicative group order, used when hunting for
// subgroup generators. Trial division is fine for q - 1 < 2^32.
inline std::vector<uint64_t> factor_u64(uint64_t v) {
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

// An element of exact multiplicative order `order`, or an error when
// order does not divide q - 1.
inline FieldElement subgroup_generator(const Field& field, uint64_t order) {
  uint64_t group = field.size() - 1;
  DFRI_REQUIRE(order >= 1 && group % order == 0, ErrorCode::kSubgroupUnavailable,
               "no multiplicative subgroup of order " + std::to_string(order));
  auto primes = factor_u64(order);
  for (uint64_t g = 2; g < field.size(); ++g) {
    uint32_t cand = field.pow_raw(static_cast<uint32_t>(g), group / order);
    if (cand == 1 && order > 1) continue;
    bool exact = true;
    for (uint64_t p : primes) {
      if (field.pow_raw(cand, order / p) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return field.element(cand);
  }
  throw Error(ErrorCode::kSubgroupUnavailable, "no generator found");
}

}  // namespace deepfri

#endif  // DEEPFRI_GF2N_HPP
