#ifndef DEEPFRI_POLY_HPP
#define DEEPFRI_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/subspace.hpp"

namespace deepfri {

// Dense univariate polynomial, coefficients ascending, trailing zeros trimmed.
// The zero polynomial has no coefficients and degree() == -1.
class Polynomial {
 public:
  explicit Polynomial(const Field& field) : field_(field) {}

  Polynomial(const Field& field, std::vector<FieldElement> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
      DFRI_REQUIRE(c.field() == field, ErrorCode::kFieldMismatch, "coefficient field mismatch");
    }
    trim();
  }

  static Polynomial from_bits(const Field& field, std::initializer_list<uint32_t> bits) {
    std::vector<FieldElement> c;
    for (uint32_t b : bits) c.push_back(field.element(b));
    return Polynomial(field, std::move(c));
  }

  static Polynomial monomial(const Field& field, uint64_t degree, FieldElement coeff) {
    std::vector<FieldElement> c(static_cast<size_t>(degree) + 1, field.zero());
    c.back() = coeff;
    return Polynomial(field, std::move(c));
  }

  const Field& field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int64_t degree() const { return static_cast<int64_t>(coeffs_.size()) - 1; }

  FieldElement coeff(size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : field_.zero();
  }

  FieldElement operator()(const FieldElement& x) const {
    FieldElement acc = field_.zero();
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_field(o);
    std::vector<FieldElement> c;
    size_t m = std::max(coeffs_.size(), o.coeffs_.size());
    c.reserve(m);
    for (size_t i = 0; i < m; ++i) c.push_back(coeff(i) + o.coeff(i));
    return Polynomial(field_, std::move(c));
  }
  Polynomial operator-(const Polynomial& o) const { return *this + o; }

  Polynomial operator*(const Polynomial& o) const {
    check_field(o);
    if (is_zero() || o.is_zero()) return Polynomial(field_);
    std::vector<FieldElement> c(coeffs_.size() + o.coeffs_.size() - 1, field_.zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < o.coeffs_.size(); ++j) {
        c[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    return Polynomial(field_, std::move(c));
  }

  Polynomial scale(const FieldElement& s) const {
    std::vector<FieldElement> c;
    c.reserve(coeffs_.size());
    for (const auto& v : coeffs_) c.push_back(v * s);
    return Polynomial(field_, std::move(c));
  }

  // Substitute X -> s*X (coefficient i gets multiplied by s^i).
  Polynomial compose_scale(const FieldElement& s) const {
    std::vector<FieldElement> c;
    c.reserve(coeffs_.size());
    FieldElement p = field_.one();
    for (const auto& v : coeffs_) {
      c.push_back(v * p);
      p = p * s;
    }
    return Polynomial(field_, std::move(c));
  }

  std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const {
    check_field(divisor);
    DFRI_REQUIRE(!divisor.is_zero(), ErrorCode::kBadArgument, "division by zero polynomial");
    std::vector<FieldElement> rem = coeffs_;
    std::vector<FieldElement> quo;
    int64_t dd = divisor.degree();
    FieldElement lead_inv = divisor.coeffs_.back().inv();
    if (degree() >= dd) quo.assign(static_cast<size_t>(degree() - dd) + 1, field_.zero());
    for (int64_t i = degree(); i >= dd; --i) {
      FieldElement c = rem[static_cast<size_t>(i)];
      if (c.is_zero()) continue;
      FieldElement q = c * lead_inv;
      quo[static_cast<size_t>(i - dd)] = q;
      for (int64_t j = 0; j <= dd; ++j) {
        rem[static_cast<size_t>(i - dd + j)] += q * divisor.coeffs_[static_cast<size_t>(j)];
      }
    }
    return {Polynomial(field_, std::move(quo)), Polynomial(field_, std::move(rem))};
  }

  bool operator==(const Polynomial& o) const {
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (size_t i = 0; i < coeffs_.size(); ++i)
      if (!(coeffs_[i] == o.coeffs_[i])) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  void check_field(const Polynomial& o) const {
    DFRI_REQUIRE(field_ == o.field_, ErrorCode::kFieldMismatch, "polynomial field mismatch");
  }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  Field field_;
  std::vector<FieldElement> coeffs_;
};

inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divrem(b).second;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a.scale(a.coeffs().back().inv());  // monic
  return a;
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field());
  Polynomial g = poly_gcd(a, b);
  auto [q, r] = (a * b).divrem(g);
  Polynomial lcm = q;
  return lcm.scale(lcm.coeffs().back().inv());
}

// A function from an enumerated coset domain to field elements; values are
// aligned with the domain's enumeration order.
class Evaluations {
 public:
  Evaluations(Subspace domain, std::vector<FieldElement> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    DFRI_REQUIRE(values_.size() == domain_.size(), ErrorCode::kDomainMismatch,
                 "value count does not match domain size");
  }

  const Subspace& domain() const { return domain_; }
  const std::vector<FieldElement>& values() const { return values_; }
  std::vector<FieldElement>& mutable_values() { return values_; }
  size_t size() const { return values_.size(); }
  const FieldElement& operator[](size_t i) const { return values_[i]; }

  bool operator==(const Evaluations& o) const {
    return domain_ == o.domain_ && values_ == o.values_;
  }

 private:
  Subspace domain_;
  std::vector<FieldElement> values_;
};

// Batch inversion (Montgomery's trick): one inversion plus 3(n-1) products.
inline std::vector<uint32_t> batch_inverse_raw(const Field& f, const std::vector<uint32_t>& xs) {
  std::vector<uint32_t> prefix(xs.size());
  uint32_t acc = 1;
  for (size_t i = 0; i < xs.size(); ++i) {
    DFRI_REQUIRE(xs[i] != 0, ErrorCode::kInversionOfZero, "batch inversion of zero");
    prefix[i] = acc;
    acc = f.mul_raw(acc, xs[i]);
  }
  uint32_t inv = f.inv_raw(acc);
  std::vector<uint32_t> out(xs.size());
  for (size_t i = xs.size(); i-- > 0;) {
    out[i] = f.mul_raw(inv, prefix[i]);
    inv = f.mul_raw(inv, xs[i]);
  }
  return out;
}

inline Evaluations encode(const Polynomial& p, const Subspace& domain) {
  std::vector<FieldElement> values;
  values.reserve(domain.size());
  for (uint64_t i = 0; i < domain.size(); ++i) values.push_back(p(domain.element(i)));
  return Evaluations(domain, std::move(values));
}

// Lagrange interpolation over arbitrary distinct points, O(m^2). Used for the
// small mask-point sets of quotient_multi.
inline Polynomial interpolate_points(const Field& field,
                                     const std::vector<FieldElement>& xs,
                                     const std::vector<FieldElement>& ys) {
  DFRI_REQUIRE(!xs.empty(), ErrorCode::kEmptyDomain, "no interpolation points");
  DFRI_REQUIRE(xs.size() == ys.size(), ErrorCode::kBadArgument, "point/value count mismatch");
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t j = i + 1; j < xs.size(); ++j) {
      DFRI_REQUIRE(xs[i] != xs[j], ErrorCode::kDuplicatePoint, "duplicate interpolation point");
    }
  }
  // Z(X) = prod (X - x_i)
  Polynomial z = Polynomial::from_bits(field, {1});
  for (const auto& x : xs) {
    z = z * Polynomial(field, {x, field.one()});
  }
  Polynomial acc(field);
  for (size_t i = 0; i < xs.size(); ++i) {
    auto [li, rem] = z.divrem(Polynomial(field, {xs[i], field.one()}));
    FieldElement w = li(xs[i]).inv();
    acc = acc + li.scale(w * ys[i]);
  }
  return acc;
}

// The unique polynomial of degree < |domain| matching the evaluations.
inline Polynomial interpolate(const Evaluations& e) {
  DFRI_REQUIRE(e.size() >= 1, ErrorCode::kEmptyDomain, "empty domain");
  if (e.domain().dim() == 0) {
    return Polynomial(e.domain().field(), {e[0]});
  }
  const Field& field = e.domain().field();
  // Affine domains have a single barycentric weight (see Subspace), so the
  // Lagrange basis is w * Z(X)/(X - x_i).
  Polynomial z = Polynomial::from_bits(field, {1});
  std::vector<FieldElement> xs = e.domain().elements();
  for (const auto& x : xs) z = z * Polynomial(field, {x, field.one()});
  FieldElement w = e.domain().nonzero_span_product().inv();
  Polynomial acc(field);
  for (size_t i = 0; i < xs.size(); ++i) {
    if (e[i].is_zero()) continue;
    auto [li, rem] = z.divrem(Polynomial(field, {xs[i], field.one()}));
    acc = acc + li.scale(w * e[i]);
  }
  return acc;
}

// Value at z of the interpolating polynomial, by the barycentric formula:
// O(|domain|) field operations (batch-inverted). Inside the domain this is
// just the stored value.
inline FieldElement out_of_domain_eval(const Evaluations& e, const FieldElement& z) {
  const Subspace& d = e.domain();
  const Field& field = d.field();
  DFRI_REQUIRE(z.field() == field, ErrorCode::kFieldMismatch, "evaluation point field mismatch");
  if (d.contains(z)) return e[d.index_of(z)];
  if (d.dim() == 0) return e[0];
  std::vector<uint32_t> diffs(e.size());
  uint32_t zprod = 1;  // Z(z) = prod (z - x_i)
  for (uint64_t i = 0; i < d.size(); ++i) {
    diffs[i] = z.bits() ^ d.element(i).bits();
    zprod = field.mul_raw(zprod, diffs[i]);
  }
  std::vector<uint32_t> invs = batch_inverse_raw(field, diffs);
  uint32_t sum = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    sum ^= field.mul_raw(e[i].bits(), invs[i]);
  }
  FieldElement w = d.nonzero_span_product().inv();
  return field.element(field.mul_raw(field.mul_raw(zprod, w.bits()), sum));
}

// QUOTIENT(f, z, b): g(y) = (f(y) - b) / (y - z), defined for z outside the
// domain. Maps "close to degree d and interpolant hits b at z" to "close to
// degree d-1".
inline Evaluations quotient_single(const Evaluations& f, const FieldElement& z,
                                   const FieldElement& b) {
  const Subspace& d = f.domain();
  const Field& field = d.field();
  DFRI_REQUIRE(!d.contains(z), ErrorCode::kQuotientPointInDomain,
               "quotient point lies in the evaluation domain");
  std::vector<uint32_t> diffs(f.size());
  for (uint64_t i = 0; i < d.size(); ++i) diffs[i] = d.element(i).bits() ^ z.bits();
  std::vector<uint32_t> invs = batch_inverse_raw(field, diffs);
  std::vector<FieldElement> out;
  out.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    out.push_back(field.element(field.mul_raw(f[i].bits() ^ b.bits(), invs[i])));
  }
  return Evaluations(d, std::move(out));
}

// Multi-point quotient: g = (f - U) / Z with U the interpolant of the answers
// and Z the vanishing polynomial of the answer points. Degree drops by the
// number of points in the honest case.
inline Evaluations quotient_multi(const Evaluations& f,
                                  const std::map<uint32_t, FieldElement>& answers) {
  const Subspace& d = f.domain();
  const Field& field = d.field();
  DFRI_REQUIRE(!answers.empty(), ErrorCode::kBadArgument, "no quotient points");
  std::vector<FieldElement> pts, vals;
  for (const auto& [bits, v] : answers) {
    FieldElement p = field.element(bits);
    DFRI_REQUIRE(!d.contains(p), ErrorCode::kQuotientPointInDomain,
                 "quotient point lies in the evaluation domain");
    pts.push_back(p);
    vals.push_back(v);
  }
  Polynomial u = interpolate_points(field, pts, vals);
  std::vector<uint32_t> zvals(f.size());
  for (uint64_t i = 0; i < d.size(); ++i) {
    uint32_t acc = 1;
    for (const auto& p : pts) acc = field.mul_raw(acc, d.element(i).bits() ^ p.bits());
    zvals[i] = acc;
  }
  std::vector<uint32_t> invs = batch_inverse_raw(field, zvals);
  std::vector<FieldElement> out;
  out.reserve(f.size());
  for (uint64_t i = 0; i < d.size(); ++i) {
    FieldElement num = f[i] + u(d.element(i));
    out.push_back(field.element(field.mul_raw(num.bits(), invs[i])));
  }
  return Evaluations(d, std::move(out));
}

}  // namespace deepfri

#endif  // DEEPFRI_POLY_HPP
