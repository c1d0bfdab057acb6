#ifndef DEEPFRI_CODES_HPP
#define DEEPFRI_CODES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/poly.hpp"
#include "deepfri/rational.hpp"
#include "deepfri/subspace.hpp"

namespace deepfri {

// Guard limits (log2 of enumeration size) for the brute-force searches.
inline constexpr double kRsScanGuardBits = 24.0;
inline constexpr double kGlScanGuardBits = 20.0;
inline constexpr size_t kSigmaSubsetGuard = 12;

struct RsParams {
  Field field;
  Subspace domain;
  uint64_t degree_bound;  // code = evaluations of degree < degree_bound

  RsParams(const Field& f, Subspace d, uint64_t db)
      : field(f), domain(std::move(d)), degree_bound(db) {
    DFRI_REQUIRE(degree_bound >= 1 && degree_bound <= domain.size(), ErrorCode::kBadArgument,
                 "degree bound must be in [1, |domain|]");
  }

  Rational rate() const {
    return Rational(static_cast<long long>(degree_bound), static_cast<long long>(domain.size()));
  }
};

inline Rational distance(const Evaluations& u, const Evaluations& v) {
  DFRI_REQUIRE(u.domain() == v.domain(), ErrorCode::kDomainMismatch,
               "distance needs a common domain");
  long long diff = 0;
  for (size_t i = 0; i < u.size(); ++i) diff += (u[i] == v[i]) ? 0 : 1;
  return Rational(diff, static_cast<long long>(u.size()));
}

// agree_eta(u, v) = (1/|D|) * sum of eta(i) over agreeing positions.
inline Rational weighted_agreement(const Evaluations& u, const Evaluations& v,
                                   const std::vector<Rational>& eta) {
  DFRI_REQUIRE(u.domain() == v.domain(), ErrorCode::kDomainMismatch,
               "agreement needs a common domain");
  DFRI_REQUIRE(eta.size() == u.size(), ErrorCode::kDomainMismatch,
               "weight vector length mismatch");
  Rational sum(0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] == v[i]) sum += eta[i];
  }
  return sum / Rational(static_cast<long long>(u.size()));
}

struct JohnsonBound {
  Rational radius;    // 1 - sqrt(rho) - eps
  Rational list_cap;  // 1 / (2 * eps * sqrt(rho))
  bool exact;         // false when sqrt(rho) is irrational; then radius is
                      // rounded down and list_cap up (the conservative sides)
};

inline JohnsonBound johnson_bound(const Rational& rho, const Rational& eps) {
  DFRI_REQUIRE(rho > 0 && rho < 1, ErrorCode::kBadArgument, "rate must be in (0, 1)");
  DFRI_REQUIRE(eps > 0, ErrorCode::kEpsOutOfRange, "eps must be positive");
  if (auto s = sqrt_exact(rho)) {
    DFRI_REQUIRE(eps < Rational(1) - *s, ErrorCode::kEpsOutOfRange,
                 "eps must be below 1 - sqrt(rho)");
    return JohnsonBound{Rational(1) - *s - eps, Rational(1) / (Rational(2) * eps * *s), true};
  }
  // Bracket sqrt(rho) between two rationals with denominator 10^6.
  const long long kScale = 1000000;
  long long num = rho.numerator() * kScale * kScale;
  // Round the integer division up so lo*lo <= rho*Scale^2 genuinely holds.
  long long scaled = num / rho.denominator();
  long long lo = isqrt_floor(scaled);
  Rational s_lo(lo, kScale), s_hi(lo + 1, kScale);
  DFRI_REQUIRE(eps < Rational(1) - s_hi, ErrorCode::kEpsOutOfRange,
               "eps must be below 1 - sqrt(rho)");
  return JohnsonBound{Rational(1) - s_hi - eps, Rational(1) / (Rational(2) * eps * s_lo), false};
}

// ---------------------------------------------------------------------------
// Brute-force scan engine.
//
// Everything below enumerates an entire linear (or affine) code given by
// value rows: codewords are offset + sum_j c_j * rows[j] with c in F_q^k.
// The odometer steps one coefficient at a time, so each step touches every
// position once with a precomputed XOR row; visitors keep their statistics
// incrementally. This is the ground-truth oracle the protocol experiments
// are measured against, which is why it stays exhaustive.
// ---------------------------------------------------------------------------

// Tiered multiplication for scan setup: dense table for q <= 256, log/antilog
// for q <= 2^16, plain shift-reduce above.
class ScanField {
 public:
  explicit ScanField(const Field& f) : field_(f), n_(f.n()) {
    if (n_ <= 8) {
      uint64_t q = f.size();
      dense_.resize(q * q);
      for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b)
          dense_[(a << n_) | b] =
              f.mul_raw(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
    } else if (n_ <= 16) {
      uint64_t q = f.size();
      exp_.resize(2 * q);
      log_.resize(q);
      uint32_t g = subgroup_generator(f, q - 1).bits();
      uint32_t acc = 1;
      for (uint64_t i = 0; i < q - 1; ++i) {
        exp_[i] = acc;
        log_[acc] = static_cast<uint32_t>(i);
        acc = f.mul_raw(acc, g);
      }
      for (uint64_t i = 0; i < q - 1; ++i) exp_[q - 1 + i] = exp_[i];
    }
  }

  const Field& field() const { return field_; }

  uint32_t mul(uint32_t a, uint32_t b) const {
    if (!dense_.empty()) return dense_[(static_cast<uint64_t>(a) << n_) | b];
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return field_.mul_raw(a, b);
  }

 private:
  Field field_;
  int n_;
  std::vector<uint32_t> dense_;
  std::vector<uint32_t> log_, exp_;
};

namespace scan {

// Visitor contract:
//   void init(const std::vector<uint32_t>& values);
//   void update(size_t pos, uint32_t old_value, uint32_t new_value);
//   void codeword(const std::vector<uint32_t>& digits);
// `digits` are the free coefficients in enumeration order (digit 0 cycles
// fastest); enumeration index m has digits equal to the base-q expansion of m.
template <typename Visitor>
void enumerate_span(const ScanField& sf, const std::vector<std::vector<uint32_t>>& rows,
                    const std::vector<uint32_t>& offset, Visitor& visitor) {
  const int n = sf.field().n();
  const uint64_t q = sf.field().size();
  const size_t k = rows.size();
  const size_t npos = offset.size();
  for (const auto& r : rows) {
    DFRI_REQUIRE(r.size() == npos, ErrorCode::kBadArgument, "row length mismatch");
  }

  // scaled[j][t] = (2^(t+1) - 1) * rows[j]; an odometer increment of digit j
  // always XORs one of these patterns into the value vector.
  std::vector<std::vector<std::vector<uint32_t>>> scaled(k);
  for (size_t j = 0; j < k; ++j) {
    scaled[j].resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
      uint32_t delta = static_cast<uint32_t>((uint64_t{1} << (t + 1)) - 1);
      auto& row = scaled[j][static_cast<size_t>(t)];
      row.resize(npos);
      for (size_t y = 0; y < npos; ++y) row[y] = sf.mul(delta, rows[j][y]);
    }
  }

  std::vector<uint32_t> values = offset;
  std::vector<uint32_t> digits(k, 0);
  visitor.init(values);
  visitor.codeword(digits);
  if (k == 0) return;

  for (;;) {
    size_t j = 0;
    for (;;) {
      uint32_t v = digits[j];
      bool wrap = (v == q - 1);
      int t = 0;
      while ((v >> t) & 1) ++t;  // trailing ones
      if (wrap) t = n - 1;
      const auto& row = scaled[j][static_cast<size_t>(t)];
      for (size_t y = 0; y < npos; ++y) {
        uint32_t old_v = values[y];
        uint32_t new_v = old_v ^ row[y];
        if (old_v != new_v) visitor.update(y, old_v, new_v);
        values[y] = new_v;
      }
      digits[j] = wrap ? 0 : v + 1;
      if (!wrap) break;
      if (++j == k) return;
    }
    visitor.codeword(digits);
  }
}

struct AgreementVisitor {
  const std::vector<uint32_t>* target;
  long long agree = 0;
  long long best = -1;
  std::vector<uint32_t> best_digits;

  void init(const std::vector<uint32_t>& values) {
    agree = 0;
    for (size_t y = 0; y < values.size(); ++y) agree += (values[y] == (*target)[y]);
  }
  void update(size_t y, uint32_t old_v, uint32_t new_v) {
    agree += (new_v == (*target)[y]) - (old_v == (*target)[y]);
  }
  void codeword(const std::vector<uint32_t>& digits) {
    if (agree > best) {
      best = agree;
      best_digits = digits;
    }
  }
};

struct ListVisitor {
  const std::vector<uint32_t>* target;
  long long min_agree = 0;  // record codewords with agree > threshold
  long long agree = 0;
  std::vector<std::vector<uint32_t>> hits;

  void init(const std::vector<uint32_t>& values) {
    agree = 0;
    for (size_t y = 0; y < values.size(); ++y) agree += (values[y] == (*target)[y]);
  }
  void update(size_t y, uint32_t old_v, uint32_t new_v) {
    agree += (new_v == (*target)[y]) - (old_v == (*target)[y]);
  }
  void codeword(const std::vector<uint32_t>& digits) {
    if (agree > min_agree) hits.push_back(digits);
  }
};

struct WeightedVisitor {
  const std::vector<uint32_t>* target;
  const std::vector<long long>* weights;  // integerized, common denominator
  long long agree = 0;
  long long best = -1;
  std::vector<uint32_t> best_digits;

  void init(const std::vector<uint32_t>& values) {
    agree = 0;
    for (size_t y = 0; y < values.size(); ++y) {
      if (values[y] == (*target)[y]) agree += (*weights)[y];
    }
  }
  void update(size_t y, uint32_t old_v, uint32_t new_v) {
    if (old_v == (*target)[y]) agree -= (*weights)[y];
    if (new_v == (*target)[y]) agree += (*weights)[y];
  }
  void codeword(const std::vector<uint32_t>& digits) {
    if (agree > best) {
      best = agree;
      best_digits = digits;
    }
  }
};

struct MinWeightVisitor {  // minimum Hamming weight over nonzero codewords
  long long weight = 0;
  long long best = -1;

  void init(const std::vector<uint32_t>& values) {
    weight = 0;
    for (uint32_t v : values) weight += (v != 0);
  }
  void update(size_t, uint32_t old_v, uint32_t new_v) {
    weight += (new_v != 0) - (old_v != 0);
  }
  void codeword(const std::vector<uint32_t>& digits) {
    bool zero = true;
    for (uint32_t d : digits) {
      if (d != 0) {
        zero = false;
        break;
      }
    }
    if (!zero && (best < 0 || weight < best)) best = weight;
  }
};

}  // namespace scan

// Optional linear constraint on the scanned code: RS codewords whose
// interpolant hits value `b` at point `z` (the sub-code V_{z,b}).
struct RsConstraint {
  FieldElement z;
  FieldElement b;
};

namespace detail_codes {

// Monomial value rows for RS[field, domain, degree < d], with the constraint
// (if any) eliminated into an offset: c_0 = b - sum_{j>=1} c_j z^j.
struct RsScanSetup {
  std::vector<std::vector<uint32_t>> rows;
  std::vector<uint32_t> offset;
  std::vector<uint32_t> z_powers;  // for reconstructing c_0 under a constraint
};

inline RsScanSetup rs_scan_setup(const ScanField& sf, const Subspace& domain, uint64_t d,
                                 const std::optional<RsConstraint>& constraint) {
  RsScanSetup setup;
  const size_t npos = domain.size();
  std::vector<uint32_t> xs(npos);
  for (size_t i = 0; i < npos; ++i) xs[i] = domain.element(i).bits();
  std::vector<std::vector<uint32_t>> monomials(static_cast<size_t>(d));
  for (uint64_t j = 0; j < d; ++j) {
    monomials[j].resize(npos);
    for (size_t i = 0; i < npos; ++i) {
      monomials[j][i] = (j == 0) ? 1 : sf.mul(monomials[j - 1][i], xs[i]);
    }
  }
  if (!constraint) {
    setup.rows = std::move(monomials);
    setup.offset.assign(npos, 0);
    return setup;
  }
  uint32_t z = constraint->z.bits();
  uint32_t b = constraint->b.bits();
  setup.z_powers.resize(static_cast<size_t>(d));
  uint32_t zp = 1;
  for (uint64_t j = 0; j < d; ++j) {
    setup.z_powers[j] = zp;
    zp = sf.mul(zp, z);
  }
  setup.offset.assign(npos, b);
  for (uint64_t j = 1; j < d; ++j) {
    auto row = monomials[j];
    for (size_t i = 0; i < npos; ++i) row[i] ^= setup.z_powers[j];
    setup.rows.push_back(std::move(row));
  }
  return setup;
}

inline Polynomial rs_digits_to_poly(const Field& field, const RsScanSetup& setup, uint64_t d,
                                    const std::optional<RsConstraint>& constraint,
                                    const std::vector<uint32_t>& digits) {
  std::vector<FieldElement> coeffs;
  if (!constraint) {
    for (uint32_t c : digits) coeffs.push_back(field.element(c));
  } else {
    uint32_t c0 = constraint->b.bits();
    for (size_t j = 1; j < d; ++j) {
      c0 ^= field.mul_raw(digits[j - 1], setup.z_powers[j]);
    }
    coeffs.push_back(field.element(c0));
    for (uint32_t c : digits) coeffs.push_back(field.element(c));
  }
  return Polynomial(field, std::move(coeffs));
}

inline void rs_guard(const RsParams& params, uint64_t free_coeffs, const char* what) {
  guards::check_search_space(static_cast<double>(free_coeffs) * params.field.n(),
                             kRsScanGuardBits, what);
}

inline std::vector<uint32_t> to_bits(const Evaluations& e) {
  std::vector<uint32_t> out(e.size());
  for (size_t i = 0; i < e.size(); ++i) out[i] = e[i].bits();
  return out;
}

}  // namespace detail_codes

// List(u, V, delta) = all codewords at relative distance STRICTLY below
// delta, by exhaustive enumeration; sorted canonically (ascending coefficient
// vectors, low coefficient least significant).
inline std::vector<Polynomial> list_decode_rs(const Evaluations& u, const RsParams& params,
                                              const Rational& delta,
                                              const std::optional<RsConstraint>& constraint = {}) {
  DFRI_REQUIRE(u.domain() == params.domain, ErrorCode::kDomainMismatch,
               "word domain does not match code domain");
  uint64_t free_coeffs = constraint ? params.degree_bound - 1 : params.degree_bound;
  detail_codes::rs_guard(params, free_coeffs, "list_decode_rs");
  ScanField sf(params.field);
  auto setup = detail_codes::rs_scan_setup(sf, params.domain, params.degree_bound, constraint);
  auto target = detail_codes::to_bits(u);
  long long npos = static_cast<long long>(u.size());
  scan::ListVisitor visitor;
  visitor.target = &target;
  // distance < delta  <=>  agreement > (1 - delta) * npos; with integral
  // agreement, "> rational threshold" equals "> floor(threshold)".
  Rational min_agree = (Rational(1) - delta) * npos;
  visitor.min_agree =
      min_agree.numerator() >= 0 ? min_agree.numerator() / min_agree.denominator() : -1;
  scan::enumerate_span(sf, setup.rows, setup.offset, visitor);
  std::vector<Polynomial> out;
  for (const auto& digits : visitor.hits) {
    Polynomial p = detail_codes::rs_digits_to_poly(params.field, setup, params.degree_bound,
                                                   constraint, digits);
    Evaluations ev = encode(p, params.domain);
    if (distance(u, ev) < delta) out.push_back(std::move(p));
  }
  return out;
}

struct NearestCodeword {
  Polynomial poly;
  long long agreement;
  Rational dist;
  bool empty;  // constrained sub-code can be empty only when it has no members
};

// Nearest codeword by exhaustive search (list decoding at radius 1 with a
// running best). Ties resolve to the first codeword in enumeration order.
inline NearestCodeword nearest_codeword_rs(const Evaluations& u, const RsParams& params,
                                           const std::optional<RsConstraint>& constraint = {}) {
  DFRI_REQUIRE(u.domain() == params.domain, ErrorCode::kDomainMismatch,
               "word domain does not match code domain");
  uint64_t free_coeffs = constraint ? params.degree_bound - 1 : params.degree_bound;
  detail_codes::rs_guard(params, free_coeffs, "nearest_codeword_rs");
  ScanField sf(params.field);
  auto setup = detail_codes::rs_scan_setup(sf, params.domain, params.degree_bound, constraint);
  auto target = detail_codes::to_bits(u);
  scan::AgreementVisitor visitor;
  visitor.target = &target;
  scan::enumerate_span(sf, setup.rows, setup.offset, visitor);
  Polynomial p = detail_codes::rs_digits_to_poly(params.field, setup, params.degree_bound,
                                                 constraint, visitor.best_digits);
  long long npos = static_cast<long long>(u.size());
  return NearestCodeword{p, visitor.best, Rational(npos - visitor.best, npos), false};
}

struct WeightedBest {
  Polynomial poly;
  Rational agreement;  // (1/|D|) * sum of weights over agreeing positions
};

// max over codewords of agree_eta(u, v); weights are rationals brought to a
// common denominator so the scan works in integers.
inline WeightedBest max_weighted_agreement_rs(const Evaluations& u, const RsParams& params,
                                              const std::vector<Rational>& eta,
                                              const std::optional<RsConstraint>& constraint = {}) {
  DFRI_REQUIRE(eta.size() == u.size(), ErrorCode::kDomainMismatch, "weight length mismatch");
  uint64_t free_coeffs = constraint ? params.degree_bound - 1 : params.degree_bound;
  detail_codes::rs_guard(params, free_coeffs, "max_weighted_agreement_rs");
  long long denom = 1;
  for (const auto& w : eta) denom = std::lcm(denom, w.denominator());
  std::vector<long long> weights(eta.size());
  for (size_t i = 0; i < eta.size(); ++i) {
    weights[i] = eta[i].numerator() * (denom / eta[i].denominator());
  }
  ScanField sf(params.field);
  auto setup = detail_codes::rs_scan_setup(sf, params.domain, params.degree_bound, constraint);
  auto target = detail_codes::to_bits(u);
  scan::WeightedVisitor visitor;
  visitor.target = &target;
  visitor.weights = &weights;
  scan::enumerate_span(sf, setup.rows, setup.offset, visitor);
  Polynomial p = detail_codes::rs_digits_to_poly(params.field, setup, params.degree_bound,
                                                 constraint, visitor.best_digits);
  long long npos = static_cast<long long>(u.size());
  return WeightedBest{p, Rational(visitor.best, denom * npos)};
}

// ---------------------------------------------------------------------------
// General linear codes.
// ---------------------------------------------------------------------------

struct GeneralLinearCode {
  Field field;
  // k generator rows of length n; codewords are l^T G for l in F_q^k.
  std::vector<std::vector<FieldElement>> generator;

  GeneralLinearCode(const Field& f, std::vector<std::vector<FieldElement>> g)
      : field(f), generator(std::move(g)) {
    DFRI_REQUIRE(!generator.empty() && !generator[0].empty(), ErrorCode::kBadArgument,
                 "empty generator");
    for (const auto& row : generator) {
      DFRI_REQUIRE(row.size() == generator[0].size(), ErrorCode::kBadArgument,
                   "ragged generator");
    }
    DFRI_REQUIRE(rank() == k(), ErrorCode::kBadArgument, "generator must have full rank");
  }

  size_t k() const { return generator.size(); }
  size_t n() const { return generator[0].size(); }

  size_t rank() const {
    // Gaussian elimination over F_q on a copy.
    std::vector<std::vector<uint32_t>> m(k(), std::vector<uint32_t>(n()));
    for (size_t i = 0; i < k(); ++i)
      for (size_t j = 0; j < n(); ++j) m[i][j] = generator[i][j].bits();
    size_t r = 0;
    for (size_t col = 0; col < n() && r < k(); ++col) {
      size_t pivot = r;
      while (pivot < k() && m[pivot][col] == 0) ++pivot;
      if (pivot == k()) continue;
      std::swap(m[pivot], m[r]);
      uint32_t inv = field.inv_raw(m[r][col]);
      for (size_t j = 0; j < n(); ++j) m[r][j] = field.mul_raw(m[r][j], inv);
      for (size_t i = 0; i < k(); ++i) {
        if (i == r || m[i][col] == 0) continue;
        uint32_t c = m[i][col];
        for (size_t j = 0; j < n(); ++j) m[i][j] ^= field.mul_raw(c, m[r][j]);
      }
      ++r;
    }
    return r;
  }
};

// sigma of a point set: the smallest s such that every s-subset spans F_q^k.
// Exhaustive over subsets up to kSigmaSubsetGuard points, else via the
// identity sigma = N - d_min + 1 for the code generated by the points as
// columns.
inline uint64_t sigma_of_columns(const Field& field,
                                 const std::vector<std::vector<FieldElement>>& columns);

struct GlMetrics {
  uint64_t min_distance;
  uint64_t sigma;
};

namespace detail_codes {

inline std::vector<std::vector<uint32_t>> columns_to_rows(
    const std::vector<std::vector<FieldElement>>& columns) {
  size_t k = columns[0].size();
  std::vector<std::vector<uint32_t>> rows(k, std::vector<uint32_t>(columns.size()));
  for (size_t j = 0; j < columns.size(); ++j) {
    DFRI_REQUIRE(columns[j].size() == k, ErrorCode::kBadArgument, "ragged column set");
    for (size_t i = 0; i < k; ++i) rows[i][j] = columns[j][i].bits();
  }
  return rows;
}

inline bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t s = idx.size();
  for (size_t i = s; i-- > 0;) {
    if (idx[i] != i + n - s) {
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline size_t rank_of_columns(const Field& field,
                              const std::vector<std::vector<uint32_t>>& cols, size_t k) {
  std::vector<std::vector<uint32_t>> m;
  for (const auto& c : cols) m.push_back(c);
  size_t r = 0;
  for (size_t coord = 0; coord < k && r < m.size(); ++coord) {
    size_t pivot = r;
    while (pivot < m.size() && m[pivot][coord] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[r]);
    uint32_t inv = field.inv_raw(m[r][coord]);
    for (size_t j = 0; j < k; ++j) m[r][j] = field.mul_raw(m[r][j], inv);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][coord] == 0) continue;
      uint32_t c = m[i][coord];
      for (size_t j = 0; j < k; ++j) m[i][j] ^= field.mul_raw(c, m[r][j]);
    }
    ++r;
  }
  return r;
}

inline uint64_t min_distance_of_rows(const Field& field,
                                     const std::vector<std::vector<uint32_t>>& rows) {
  guards::check_search_space(static_cast<double>(rows.size()) * field.n(), kGlScanGuardBits,
                             "gl min-distance scan");
  ScanField sf(field);
  std::vector<uint32_t> offset(rows[0].size(), 0);
  scan::MinWeightVisitor visitor;
  scan::enumerate_span(sf, rows, offset, visitor);
  return static_cast<uint64_t>(visitor.best);
}

}  // namespace detail_codes

inline uint64_t sigma_of_columns(const Field& field,
                                 const std::vector<std::vector<FieldElement>>& columns) {
  size_t n = columns.size();
  size_t k = columns[0].size();
  std::vector<std::vector<uint32_t>> cols(n);
  for (size_t j = 0; j < n; ++j) {
    cols[j].resize(k);
    for (size_t i = 0; i < k; ++i) cols[j][i] = columns[j][i].bits();
  }
  if (n <= kSigmaSubsetGuard) {
    // Exhaustive: for each s, check that every s-subset has full rank.
    for (size_t s = k; s <= n; ++s) {
      std::vector<size_t> idx(s);
      for (size_t i = 0; i < s; ++i) idx[i] = i;
      bool all_span = true;
      do {
        std::vector<std::vector<uint32_t>> sub;
        for (size_t i : idx) sub.push_back(cols[i]);
        if (detail_codes::rank_of_columns(field, sub, k) < k) {
          all_span = false;
          break;
        }
      } while (detail_codes::next_combination(idx, n));
      if (all_span) return s;
    }
    return n + 1;  // even the full set does not span
  }
  auto rows = detail_codes::columns_to_rows(columns);
  uint64_t dmin = detail_codes::min_distance_of_rows(field, rows);
  return static_cast<uint64_t>(n) - dmin + 1;
}

inline GlMetrics gl_metrics(const GeneralLinearCode& code) {
  std::vector<std::vector<uint32_t>> rows(code.k(), std::vector<uint32_t>(code.n()));
  for (size_t i = 0; i < code.k(); ++i)
    for (size_t j = 0; j < code.n(); ++j) rows[i][j] = code.generator[i][j].bits();
  uint64_t dmin = detail_codes::min_distance_of_rows(code.field, rows);
  std::vector<std::vector<FieldElement>> columns(code.n());
  for (size_t j = 0; j < code.n(); ++j) {
    for (size_t i = 0; i < code.k(); ++i) columns[j].push_back(code.generator[i][j]);
  }
  uint64_t sigma = sigma_of_columns(code.field, columns);
  return GlMetrics{dmin, sigma};
}

}  // namespace deepfri

#endif  // DEEPFRI_CODES_HPP
