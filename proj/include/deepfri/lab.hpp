#ifndef DEEPFRI_LAB_HPP
#define DEEPFRI_LAB_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "deepfri/channel.hpp"
#include "deepfri/codes.hpp"
#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/poly.hpp"
#include "deepfri/rational.hpp"

namespace deepfri {

// A reproducible experiment record: rows are a pure function of
// (name, params, seed). CSV is one row per measurement; the summary is a
// flat key/value list.
struct ExperimentReport {
  std::string name;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  bool pass = true;

  std::string default_filename(const std::string& ext) const {
    return name + "_seed" + std::to_string(seed) + "." + ext;
  }

  void write_csv(std::ostream& os) const {
    for (size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << columns[i];
    }
    os << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << row[i];
      }
      os << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// Worst-case-to-average profile: delta_x = distance of u* + x*u from the code
// for every x, by one exhaustive sweep. A codeword value change at position y
// moves the agreement of exactly one x when u(y) != 0 (solve for x), so the
// whole profile costs one scan instead of q nearest-codeword searches.
// ---------------------------------------------------------------------------

struct WtaProfile {
  std::vector<Rational> delta_x;  // indexed by the bit value of x
  Rational mean;
  Rational delta_max;             // max over the line; x = 0 is u* itself
  Rational slope_distance;        // distance of the slope word u
  // per requested threshold: |{x : delta_x < threshold}|
  std::vector<std::pair<Rational, uint64_t>> bad_counts;
};

namespace detail_lab {

struct WtaVisitor {
  const ScanField* sf;
  std::vector<uint32_t> ustar, u, inv_u;
  uint64_t q;
  std::vector<long long> counts;
  std::vector<long long> best;
  long long common = 0;
  long long slope_agree = 0;
  long long slope_best = -1;
  std::vector<uint32_t> dirty;
  std::vector<bool> dirty_mark;
  bool common_dirty = true;

  void mark(uint32_t x) {
    if (!dirty_mark[x]) {
      dirty_mark[x] = true;
      dirty.push_back(x);
    }
  }

  void init(const std::vector<uint32_t>& values) {
    counts.assign(q, 0);
    best.assign(q, -1);
    dirty_mark.assign(q, false);
    dirty.clear();
    common = 0;
    slope_agree = 0;
    slope_best = -1;
    common_dirty = true;
    for (size_t y = 0; y < values.size(); ++y) {
      if (u[y] != 0) {
        counts[sf->mul(values[y] ^ ustar[y], inv_u[y])]++;
      } else if (values[y] == ustar[y]) {
        ++common;
      }
      slope_agree += (values[y] == u[y]);
    }
  }

  void update(size_t y, uint32_t old_v, uint32_t new_v) {
    if (u[y] != 0) {
      uint32_t xo = sf->mul(old_v ^ ustar[y], inv_u[y]);
      uint32_t xn = sf->mul(new_v ^ ustar[y], inv_u[y]);
      counts[xo]--;
      counts[xn]++;
      mark(xo);
      mark(xn);
    } else {
      common += (new_v == ustar[y]) - (old_v == ustar[y]);
      common_dirty = true;
    }
    slope_agree += (new_v == u[y]) - (old_v == u[y]);
  }

  void codeword(const std::vector<uint32_t>&) {
    slope_best = std::max(slope_best, slope_agree);
    if (common_dirty) {
      for (uint64_t x = 0; x < q; ++x) {
        best[x] = std::max(best[x], counts[x] + common);
        dirty_mark[x] = false;
      }
      dirty.clear();
      common_dirty = false;
      return;
    }
    for (uint32_t x : dirty) {
      best[x] = std::max(best[x], counts[x] + common);
      dirty_mark[x] = false;
    }
    dirty.clear();
  }
};

}  // namespace detail_lab

inline WtaProfile wta_profile(const Evaluations& u_star, const Evaluations& u,
                              const RsParams& params,
                              const std::vector<Rational>& thresholds = {}) {
  DFRI_REQUIRE(u_star.domain() == params.domain && u.domain() == params.domain,
               ErrorCode::kDomainMismatch, "profile words must live on the code domain");
  guards::check_search_space(
      static_cast<double>(params.degree_bound) * params.field.n(), kRsScanGuardBits,
      "wta_profile scan");
  const Field& field = params.field;
  ScanField sf(field);
  detail_lab::WtaVisitor visitor;
  visitor.sf = &sf;
  visitor.q = field.size();
  size_t npos = params.domain.size();
  visitor.ustar.resize(npos);
  visitor.u.resize(npos);
  visitor.inv_u.assign(npos, 0);
  for (size_t y = 0; y < npos; ++y) {
    visitor.ustar[y] = u_star[y].bits();
    visitor.u[y] = u[y].bits();
    if (visitor.u[y] != 0) visitor.inv_u[y] = field.inv_raw(visitor.u[y]);
  }
  auto setup = detail_codes::rs_scan_setup(sf, params.domain, params.degree_bound, {});
  scan::enumerate_span(sf, setup.rows, setup.offset, visitor);

  WtaProfile out;
  long long n = static_cast<long long>(npos);
  Rational sum(0);
  out.delta_max = Rational(0);
  for (uint64_t x = 0; x < field.size(); ++x) {
    Rational d(n - visitor.best[x], n);
    out.delta_x.push_back(d);
    sum += d;
    out.delta_max = std::max(out.delta_max, d);
  }
  out.mean = sum / Rational(static_cast<long long>(field.size()));
  out.slope_distance = Rational(n - visitor.slope_best, n);
  for (const auto& th : thresholds) {
    uint64_t bad = 0;
    for (const auto& d : out.delta_x) {
      if (d < th) ++bad;
    }
    out.bad_counts.emplace_back(th, bad);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The one-and-a-half Johnson check. Under the preconditions
//   dist(u*, V) > delta + eps  and  delta < 1 - (1 - lambda + eps)^(1/3),
// the number of x with dist(u* + x u, V) < delta is at most 2/eps^2. When the
// count reaches the threshold, the positive form extracts a line (v*, v) and
// a common agreement set C with |C| >= (1 - delta - eps)|D|.
// ---------------------------------------------------------------------------

struct OneAndHalfResult {
  bool applicable = false;
  std::string skip_reason;
  bool eps_in_lemma_range = false;  // the proof wants eps < 1/3
  Rational dist_u_star;
  uint64_t bad_count = 0;
  Rational bound;  // 2/eps^2
  bool count_ok = true;
  bool extraction_ran = false;
  uint64_t best_common_agreement = 0;  // best |C| over candidate lines
  Rational c_threshold;                // (1 - delta - eps) * |D|
  bool extraction_ok = true;
};

inline OneAndHalfResult check_one_and_half(const Evaluations& u_star, const Evaluations& u,
                                           const RsParams& params, const Rational& delta,
                                           const Rational& eps) {
  OneAndHalfResult res;
  res.bound = Rational(2) / (eps * eps);
  res.eps_in_lemma_range = eps < Rational(1, 3);
  WtaProfile profile = wta_profile(u_star, u, params, {delta});
  res.dist_u_star = profile.delta_x[0];
  res.bad_count = profile.bad_counts[0].second;

  // lambda = 1 - rho (the MDS bound, conservative for the lemma's premise).
  double lambda = 1.0 - to_double(params.rate());
  double delta_cap = 1.0 - std::cbrt(1.0 - lambda + to_double(eps));
  if (!(to_double(delta) < delta_cap)) {
    res.skip_reason = "delta above the one-and-a-half Johnson range";
  } else if (!(res.dist_u_star > delta + eps)) {
    res.skip_reason = "u* is not far enough from the code";
  } else {
    res.applicable = true;
    res.count_ok = Rational(static_cast<long long>(res.bad_count)) <= res.bound;
  }

  // Positive form: extract the explaining line whenever the density
  // hypothesis holds (independent of how far u* is).
  long long npos = static_cast<long long>(params.domain.size());
  res.c_threshold = (Rational(1) - delta - eps) * npos;
  bool density = Rational(static_cast<long long>(res.bad_count)) >= res.bound;
  if (density && to_double(delta) < delta_cap && res.bad_count >= 2) {
    res.extraction_ran = true;
    const Field& field = params.field;
    std::vector<uint32_t> bad_xs;
    for (uint64_t x = 0; x < field.size(); ++x) {
      if (profile.delta_x[x] < delta) bad_xs.push_back(static_cast<uint32_t>(x));
    }
    std::vector<std::optional<Evaluations>> nearest(field.size());
    auto nearest_of = [&](uint32_t x) -> const Evaluations& {
      if (!nearest[x]) {
        std::vector<FieldElement> ux;
        for (size_t y = 0; y < u_star.size(); ++y) {
          ux.push_back(u_star[y] + field.element(x) * u[y]);
        }
        NearestCodeword nc =
            nearest_codeword_rs(Evaluations(params.domain, ux), params);
        nearest[x] = encode(nc.poly, params.domain);
      }
      return *nearest[x];
    };
    uint64_t best_c = 0;
    for (size_t i = 0; i < bad_xs.size(); ++i) {
      for (size_t j = i + 1; j < bad_xs.size(); ++j) {
        FieldElement x1 = field.element(bad_xs[i]), x2 = field.element(bad_xs[j]);
        const Evaluations& v1 = nearest_of(bad_xs[i]);
        const Evaluations& v2 = nearest_of(bad_xs[j]);
        FieldElement inv_dx = (x1 + x2).inv();
        uint64_t c = 0;
        for (size_t y = 0; y < u_star.size(); ++y) {
          FieldElement slope = (v1[y] + v2[y]) * inv_dx;
          FieldElement origin = v1[y] + x1 * slope;
          if (u[y] == slope && u_star[y] == origin) ++c;
        }
        best_c = std::max(best_c, c);
      }
    }
    res.best_common_agreement = best_c;
    res.extraction_ok = Rational(static_cast<long long>(best_c)) >= res.c_threshold;
  }
  return res;
}

// ---------------------------------------------------------------------------
// The tightness pair: u*(y) = y^(2^(n-1)), u(y) = y^(2^(n-2)) over the whole
// field, with the trace-construction witnesses v_x. The normalized trace
// polynomial beta^(-2^(n-1)) * Tr(beta*Y) with beta = x^(-4) has the form
// Y^(2^(n-1)) + x*Y^(2^(n-2)) + tail and 2^(n-1) distinct roots; its tail has
// degree exactly 2^(n-3), so the code takes degree bound 2^(n-3) + 1 (the
// nominal rate 1/8 shifted by one coefficient; with the bound at exactly
// 2^(n-3) the witnesses fall outside the code and the constants break).
// ---------------------------------------------------------------------------

struct TightnessPair {
  Field field;
  Evaluations u_star;
  Evaluations u;
  RsParams params;
  // per nonzero x (in bit order): the witness codeword v_x with
  // dist(u* + x*u, v_x) = 1/2 exactly
  std::vector<std::pair<FieldElement, Polynomial>> witnesses;
};

inline TightnessPair tightness_pair(int n) {
  DFRI_REQUIRE(n >= 4 && n <= 8, ErrorCode::kNOutOfRange,
               "tightness pair needs 4 <= n <= 8");
  Field field(n);
  Subspace domain = Subspace::full_field(field);
  uint64_t half = uint64_t{1} << (n - 1);
  uint64_t quarter = uint64_t{1} << (n - 2);
  std::vector<FieldElement> us, uu;
  for (uint64_t i = 0; i < domain.size(); ++i) {
    FieldElement y = domain.element(i);
    us.push_back(y.pow(half));
    uu.push_back(y.pow(quarter));
  }
  uint64_t d = (uint64_t{1} << (n - 3)) + 1;
  TightnessPair out{field, Evaluations(domain, std::move(us)),
                    Evaluations(domain, std::move(uu)), RsParams(field, domain, d), {}};
  for (uint64_t xb = 1; xb < field.size(); ++xb) {
    FieldElement x = field.element(xb);
    FieldElement beta = x.inv().pow(4);  // beta^(-2^(n-2)) = x
    FieldElement norm = beta.pow(half).inv();
    // tail coefficients: for i <= n-3, coeff of Y^(2^i) is beta^(2^i) / beta^(2^(n-1))
    std::vector<FieldElement> coeffs((uint64_t{1} << (n - 3)) + 1, field.zero());
    for (int i = 0; i <= n - 3; ++i) {
      coeffs[uint64_t{1} << i] = beta.pow(uint64_t{1} << i) * norm;
    }
    out.witnesses.emplace_back(x, Polynomial(field, std::move(coeffs)));
  }
  return out;
}

// Subspace variant: the same powers restricted to a (dim+1)-dimensional
// subspace D. Every dim-dimensional subspace U of D's span has subspace
// polynomial P_U = Y^(2^dim) + x_U * Y^(2^(dim-1)) + tail with tail degree
// 2^(dim-2), distinct x_U across subspaces; the bad set A collects the
// nonzero x_U, and u* + x_U*u agrees with the tail on exactly half of D.
struct SubspaceTightness {
  Field field;
  Subspace domain;
  Evaluations u_star;
  Evaluations u;
  RsParams params;
  std::vector<FieldElement> bad_set;  // A, sorted by bit value
  std::vector<std::pair<FieldElement, Polynomial>> witnesses;
};

inline SubspaceTightness subspace_tightness_pair(int n, int dim) {
  Field field(n);
  DFRI_REQUIRE(dim >= 2 && dim + 1 < n, ErrorCode::kNOutOfRange,
               "need 2 <= dim and dim + 1 < n");
  Subspace domain = Subspace::canonical(field, dim + 1, field.zero());
  uint64_t top = uint64_t{1} << dim;
  std::vector<FieldElement> us, uu;
  for (uint64_t i = 0; i < domain.size(); ++i) {
    FieldElement y = domain.element(i);
    us.push_back(y.pow(top));
    uu.push_back(y.pow(top / 2));
  }
  uint64_t d = (uint64_t{1} << (dim - 2)) + 1;
  SubspaceTightness out{field, domain, Evaluations(domain, std::move(us)),
                        Evaluations(domain, std::move(uu)), RsParams(field, domain, d),
                        {},    {}};

  // Hyperplanes of the span: kernels of the nonzero parity functionals on
  // the enumeration index.
  std::map<uint32_t, Polynomial> by_x;
  for (uint32_t m = 1; m < (uint32_t{1} << (dim + 1)); ++m) {
    std::vector<FieldElement> members;
    for (uint64_t idx = 0; idx < domain.size(); ++idx) {
      if (__builtin_parityll(idx & m) == 0) members.push_back(domain.element(idx));
    }
    // P_U = prod (Y - a) over the hyperplane
    Polynomial p = Polynomial::from_bits(field, {1});
    for (const auto& a : members) p = p * Polynomial(field, {a, field.one()});
    DFRI_REQUIRE(p.degree() == static_cast<int64_t>(top), ErrorCode::kBadArgument,
                 "hyperplane product has the wrong degree");
    FieldElement x_u = p.coeff(top / 2);
    std::vector<FieldElement> tail(p.coeffs().begin(),
                                   p.coeffs().begin() + static_cast<long>(top / 2));
    Polynomial tail_poly(field, std::move(tail));
    DFRI_REQUIRE(tail_poly.degree() < static_cast<int64_t>(d), ErrorCode::kBadArgument,
                 "tail escapes the code");
    if (!x_u.is_zero()) {
      DFRI_REQUIRE(by_x.emplace(x_u.bits(), tail_poly).second, ErrorCode::kBadArgument,
                   "x_U values collide across subspaces");
    }
  }
  for (const auto& [xb, tail] : by_x) {
    out.bad_set.push_back(field.element(xb));
    out.witnesses.emplace_back(field.element(xb), tail);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pretender elimination. For each out-of-domain z the scripted adversary
// commits to a line B_z; the measured quantity is the distance of u_x to the
// sub-code pinned to the claimed value b = B_z(x), averaged over (z, x), and
// compared against the unconditioned per-x distances.
// ---------------------------------------------------------------------------

enum class LineAdversary {
  kConstantPair,   // B_z from the nearest codewords to u* and u
  kPretenderPair,  // B_z through the out-of-domain values of the two
                   // pretenders with the smallest unconditioned distance
};

inline const char* adversary_name(LineAdversary a) {
  return a == LineAdversary::kConstantPair ? "constant-line" : "pretender-pair-line";
}

struct PretenderResult {
  LineAdversary adversary;
  Rational unconditioned_mean;  // E_x[delta_x]
  Rational conditioned_mean;    // E_{z,x}[dist(u_x, V_{z, B_z(x)})]
  Rational gap;                 // conditioned - unconditioned
  WtaProfile profile;
  // one row per (z, x): exact conditioned distance
  struct Row {
    FieldElement z;
    FieldElement x;
    Rational conditioned;
  };
  std::vector<Row> rows;
};

inline PretenderResult deep_pretender_experiment(const Evaluations& u_star,
                                                 const Evaluations& u,
                                                 const RsParams& params,
                                                 LineAdversary adversary,
                                                 const Subspace& z_domain) {
  const Field& field = params.field;
  for (uint64_t i = 0; i < z_domain.size(); ++i) {
    DFRI_REQUIRE(!params.domain.contains(z_domain.element(i)), ErrorCode::kDomainOverlap,
                 "z domain must be disjoint from the evaluation domain");
  }
  PretenderResult out;
  out.adversary = adversary;
  out.profile = wta_profile(u_star, u, params);
  out.unconditioned_mean = out.profile.mean;

  // The adversary's two reference polynomials, fixed before seeing z.
  Polynomial ref1(field), ref2(field);
  FieldElement x1 = field.zero(), x2 = field.zero();
  bool pair_mode = adversary == LineAdversary::kPretenderPair;
  if (!pair_mode) {
    ref1 = nearest_codeword_rs(u_star, params).poly;  // claimed interpolant of u*
    ref2 = nearest_codeword_rs(u, params).poly;       // claimed interpolant of u
  } else {
    // the two x values whose words sit closest to the code, canonically tied
    std::vector<uint32_t> order(field.size());
    for (uint32_t i = 0; i < field.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return out.profile.delta_x[a] < out.profile.delta_x[b];
    });
    x1 = field.element(order[0]);
    x2 = field.element(order[1]);
    auto word_at = [&](const FieldElement& x) {
      std::vector<FieldElement> v;
      for (size_t y = 0; y < u_star.size(); ++y) v.push_back(u_star[y] + x * u[y]);
      return Evaluations(params.domain, std::move(v));
    };
    ref1 = nearest_codeword_rs(word_at(x1), params).poly;
    ref2 = nearest_codeword_rs(word_at(x2), params).poly;
  }

  Rational sum(0);
  for (uint64_t zi = 0; zi < z_domain.size(); ++zi) {
    FieldElement z = z_domain.element(zi);
    FieldElement b0 = field.zero(), b1 = field.zero();
    if (!pair_mode) {
      b0 = ref1(z);
      b1 = ref2(z);
    } else {
      FieldElement v1 = ref1(z), v2 = ref2(z);
      b1 = (v1 + v2) * (x1 + x2).inv();
      b0 = v1 + x1 * b1;
    }
    for (uint64_t xb = 0; xb < field.size(); ++xb) {
      FieldElement x = field.element(xb);
      std::vector<FieldElement> vx;
      for (size_t y = 0; y < u_star.size(); ++y) vx.push_back(u_star[y] + x * u[y]);
      Evaluations ux(params.domain, std::move(vx));
      FieldElement b = b0 + x * b1;
      NearestCodeword nc = nearest_codeword_rs(ux, params, RsConstraint{z, b});
      out.rows.push_back(PretenderResult::Row{z, x, nc.dist});
      sum += nc.dist;
    }
  }
  out.conditioned_mean =
      sum / Rational(static_cast<long long>(z_domain.size() * field.size()));
  out.gap = out.conditioned_mean - out.unconditioned_mean;
  return out;
}

// General-linear-code variant: codewords are linear forms evaluated on the
// generator columns; the out-of-domain samples come from a sigma-robust point
// set S in F_q^k.
struct GlDeepResult {
  LineAdversary adversary;
  uint64_t sigma;      // robustness of S
  bool s_degenerate;   // no proper subset of S spans (sigma >= |S|)
  Rational unconditioned_mean;
  Rational conditioned_mean;
  Rational gap;
  std::vector<Rational> delta_x;
  struct Row {
    size_t z_index;
    FieldElement x;
    Rational conditioned;
    bool empty_subcode;
  };
  std::vector<Row> rows;
};

inline GlDeepResult gl_deep_experiment(const GeneralLinearCode& code,
                                       const std::vector<std::vector<FieldElement>>& s_points,
                                       const std::vector<FieldElement>& u_star,
                                       const std::vector<FieldElement>& u,
                                       LineAdversary adversary) {
  const Field& field = code.field;
  size_t k = code.k(), npos = code.n();
  DFRI_REQUIRE(u_star.size() == npos && u.size() == npos, ErrorCode::kDomainMismatch,
               "word length must match the code length");
  guards::check_search_space(static_cast<double>(k) * field.n(), kGlScanGuardBits,
                             "gl_deep_experiment scan");
  for (const auto& p : s_points) {
    DFRI_REQUIRE(p.size() == k, ErrorCode::kBadArgument, "S points live in F_q^k");
  }

  GlDeepResult out;
  out.adversary = adversary;
  out.sigma = sigma_of_columns(field, s_points);
  out.s_degenerate = out.sigma >= s_points.size();

  ScanField sf(field);
  std::vector<std::vector<uint32_t>> rows(k, std::vector<uint32_t>(npos));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < npos; ++j) rows[i][j] = code.generator[i][j].bits();
  std::vector<uint32_t> zero_offset(npos, 0);

  auto best_agreement = [&](const std::vector<uint32_t>& target,
                            const std::vector<std::vector<uint32_t>>& rws,
                            const std::vector<uint32_t>& off,
                            std::vector<uint32_t>* argbits) -> long long {
    scan::AgreementVisitor visitor;
    visitor.target = &target;
    scan::enumerate_span(sf, rws, off, visitor);
    if (argbits) *argbits = visitor.best_digits;
    return visitor.best;
  };

  // unconditioned per-x distances and the adversary's reference forms
  std::vector<long long> best_x(field.size(), -1);
  std::vector<std::vector<uint32_t>> form_x(field.size());
  for (uint64_t xb = 0; xb < field.size(); ++xb) {
    std::vector<uint32_t> target(npos);
    for (size_t y = 0; y < npos; ++y) {
      target[y] = u_star[y].bits() ^ field.mul_raw(static_cast<uint32_t>(xb), u[y].bits());
    }
    best_x[xb] = best_agreement(target, rows, zero_offset, &form_x[xb]);
    out.delta_x.push_back(
        Rational(static_cast<long long>(npos) - best_x[xb], static_cast<long long>(npos)));
  }
  Rational mean(0);
  for (const auto& d : out.delta_x) mean += d;
  out.unconditioned_mean = mean / Rational(static_cast<long long>(field.size()));

  std::vector<uint32_t> ref1(k), ref2(k);
  FieldElement x1 = field.zero(), x2 = field.zero();
  if (adversary == LineAdversary::kConstantPair) {
    std::vector<uint32_t> t1(npos), t2(npos);
    for (size_t y = 0; y < npos; ++y) {
      t1[y] = u_star[y].bits();
      t2[y] = u[y].bits();
    }
    best_agreement(t1, rows, zero_offset, &ref1);
    best_agreement(t2, rows, zero_offset, &ref2);
  } else {
    std::vector<uint32_t> order(field.size());
    for (uint32_t i = 0; i < field.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return out.delta_x[a] < out.delta_x[b];
    });
    x1 = field.element(order[0]);
    x2 = field.element(order[1]);
    ref1 = form_x[order[0]];
    ref2 = form_x[order[1]];
  }

  auto form_at = [&](const std::vector<uint32_t>& form,
                     const std::vector<FieldElement>& point) {
    uint32_t acc = 0;
    for (size_t i = 0; i < k; ++i) acc ^= field.mul_raw(form[i], point[i].bits());
    return field.element(acc);
  };

  Rational sum(0);
  size_t measured = 0;
  for (size_t zi = 0; zi < s_points.size(); ++zi) {
    const auto& z = s_points[zi];
    FieldElement b0 = field.zero(), b1 = field.zero();
    if (adversary == LineAdversary::kConstantPair) {
      b0 = form_at(ref1, z);
      b1 = form_at(ref2, z);
    } else {
      FieldElement v1 = form_at(ref1, z), v2 = form_at(ref2, z);
      b1 = (v1 + v2) * (x1 + x2).inv();
      b0 = v1 + x1 * b1;
    }
    // eliminate one coordinate with z_pivot != 0
    size_t pivot = k;
    for (size_t i = 0; i < k; ++i) {
      if (!z[i].is_zero()) {
        pivot = i;
        break;
      }
    }
    for (uint64_t xb = 0; xb < field.size(); ++xb) {
      FieldElement x = field.element(xb);
      FieldElement b = b0 + x * b1;
      GlDeepResult::Row row{zi, x, Rational(1), false};
      if (pivot == k) {
        // z = 0: the constraint is "0 = b"; the sub-code is V or empty
        if (b.is_zero()) {
          std::vector<uint32_t> target(npos);
          for (size_t y = 0; y < npos; ++y)
            target[y] = u_star[y].bits() ^ field.mul_raw(x.bits(), u[y].bits());
          long long bb = best_agreement(target, rows, zero_offset, nullptr);
          row.conditioned =
              Rational(static_cast<long long>(npos) - bb, static_cast<long long>(npos));
        } else {
          row.empty_subcode = true;  // distance reported as 1
        }
      } else {
        // l_pivot = (b - sum_{i != pivot} l_i z_i) / z_pivot
        uint32_t zp_inv = field.inv_raw(z[pivot].bits());
        std::vector<std::vector<uint32_t>> rws;
        std::vector<uint32_t> off(npos);
        uint32_t scale = field.mul_raw(b.bits(), zp_inv);
        for (size_t y = 0; y < npos; ++y) off[y] = field.mul_raw(scale, rows[pivot][y]);
        for (size_t i = 0; i < k; ++i) {
          if (i == pivot) continue;
          std::vector<uint32_t> r(npos);
          uint32_t c = field.mul_raw(z[i].bits(), zp_inv);
          for (size_t y = 0; y < npos; ++y) {
            r[y] = rows[i][y] ^ field.mul_raw(c, rows[pivot][y]);
          }
          rws.push_back(std::move(r));
        }
        std::vector<uint32_t> target(npos);
        for (size_t y = 0; y < npos; ++y)
          target[y] = u_star[y].bits() ^ field.mul_raw(x.bits(), u[y].bits());
        long long bb = best_agreement(target, rws, off, nullptr);
        row.conditioned =
            Rational(static_cast<long long>(npos) - bb, static_cast<long long>(npos));
      }
      sum += row.conditioned;
      ++measured;
      out.rows.push_back(std::move(row));
    }
  }
  out.conditioned_mean = sum / Rational(static_cast<long long>(measured));
  out.gap = out.conditioned_mean - out.unconditioned_mean;
  return out;
}

// ---------------------------------------------------------------------------
// Soundness-threshold curves: delta_0 as a function of the rate, one row per
// rho. Negative values (the initial FRI bound past rho = 1/3) are clamped at
// zero and flagged.
// ---------------------------------------------------------------------------

struct CurveTable {
  static constexpr std::array<const char*, 5> kLabels = {
      "upper bound + DEEP-FRI conjectured lower bound",
      "DEEP-FRI lower bound",
      "FRI lower bound (one-and-a-half Johnson)",
      "FRI previous lower bound",
      "FRI initial lower bound",
  };
  struct Row {
    double rho;
    std::array<double, 5> values;
    std::array<bool, 5> clamped;
  };
  std::vector<Row> rows;
};

inline CurveTable soundness_curves(const std::vector<double>& rhos) {
  CurveTable out;
  for (double rho : rhos) {
    DFRI_REQUIRE(rho > 0 && rho < 1, ErrorCode::kBadArgument, "rate must be in (0,1)");
    std::array<double, 5> raw = {
        1.0 - rho,
        1.0 - std::sqrt(rho),
        1.0 - std::cbrt(rho),
        1.0 - std::pow(rho, 0.25),
        (1.0 - 3.0 * rho) / 4.0,
    };
    CurveTable::Row row;
    row.rho = rho;
    for (size_t i = 0; i < raw.size(); ++i) {
      row.clamped[i] = raw[i] < 0;
      row.values[i] = row.clamped[i] ? 0.0 : raw[i];
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace deepfri

#endif  // DEEPFRI_LAB_HPP
