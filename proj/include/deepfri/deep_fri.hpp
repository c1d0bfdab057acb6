#ifndef DEEPFRI_DEEP_FRI_HPP
#define DEEPFRI_DEEP_FRI_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "deepfri/channel.hpp"
#include "deepfri/codes.hpp"
#include "deepfri/errors.hpp"
#include "deepfri/fri.hpp"
#include "deepfri/poly.hpp"
#include "deepfri/rational.hpp"

namespace deepfri {

// Degree schedule d^(i+1) = ceil(d^(i)/2) - 1, stopping at d <= 1. For the
// preset family d^(0) = 3*2^r - 2 this reproduces (..., 22, 10, 4, 1); the
// general rule also covers bounds like d - |M| that the constraint reduction
// produces.
inline std::vector<uint64_t> degree_schedule(uint64_t d0) {
  DFRI_REQUIRE(d0 >= 1, ErrorCode::kBadArgument, "degree bound must be at least 1");
  std::vector<uint64_t> out = {d0};
  while (out.back() > 1) {
    out.push_back((out.back() + 1) / 2 - 1);
  }
  return out;
}

struct DeepFriParams {
  Field field;
  Subspace base_domain;
  uint64_t degree0;
  std::vector<uint64_t> schedule;
  DomainChain chain;

  DeepFriParams(const Field& f, const Subspace& base, uint64_t d0)
      : field(f),
        base_domain(base),
        degree0(d0),
        schedule(degree_schedule(d0)),
        chain(base, schedule.size() - 1) {
    DFRI_REQUIRE(base.field() == f, ErrorCode::kFieldMismatch, "domain field mismatch");
    for (size_t i = 0; i < schedule.size(); ++i) {
      DFRI_REQUIRE(schedule[i] <= chain.domains[i].size(), ErrorCode::kBadDomainSize,
                   "degree bound exceeds layer domain size");
    }
  }

  size_t rounds() const { return chain.folds.size(); }

  bool operator==(const DeepFriParams& o) const {
    return field == o.field && base_domain == o.base_domain && degree0 == o.degree0;
  }
};

struct DeepRound {
  FieldElement z;
  FieldElement line_b0, line_b1;  // B(X) = b0 + b1*X
  uint32_t retries;               // z re-draws forced by z in L^(i+1)
  FieldElement x;

  FieldElement line_at(const FieldElement& x_val) const { return line_b0 + line_b1 * x_val; }
};

struct DeepFriTranscript {
  DeepFriParams params;
  uint64_t commit_seed;
  // layers[0] is absent when the base oracle lives outside the transcript
  // (the constraint-system protocol derives it from its own oracles).
  bool has_layer0;
  std::vector<Evaluations> layers;  // f^(0..r) or f^(1..r)
  std::vector<DeepRound> rounds;
  FieldElement final_constant;

  const Evaluations& layer(size_t i) const {
    DFRI_REQUIRE(has_layer0 || i >= 1, ErrorCode::kMalformedTranscript,
                 "layer 0 is external to this transcript");
    return layers[has_layer0 ? i : i - 1];
  }
  Evaluations& mutable_layer(size_t i) {
    DFRI_REQUIRE(has_layer0 || i >= 1, ErrorCode::kMalformedTranscript,
                 "layer 0 is external to this transcript");
    return layers[has_layer0 ? i : i - 1];
  }
};

// Prover strategies. The base class is the honest prover; scripted
// adversaries override the messages they control. Soundness statements bound
// every prover, so each concrete strategy yields a testable inequality.
class DeepProver {
 public:
  virtual ~DeepProver() = default;
  virtual void begin(const Evaluations& /*f0*/, const DeepFriParams& /*params*/) {}
  // The degree-1 polynomial written after seeing z (and before x is drawn).
  virtual std::pair<FieldElement, FieldElement> choose_line(
      size_t /*round*/, const FieldElement& /*z*/,
      const std::pair<FieldElement, FieldElement>& honest) {
    return honest;
  }
  // The next-layer oracle written after seeing x.
  virtual Evaluations choose_layer(size_t /*round*/, const FieldElement& /*z*/,
                                   const FieldElement& /*x*/, const Evaluations& honest) {
    return honest;
  }
  virtual FieldElement choose_constant(const Evaluations& final_layer) {
    return majority_value(final_layer);
  }
};

namespace detail_deep {

inline FieldElement draw_z(Channel& channel, const Field& field, const Subspace& next_domain,
                           uint32_t* retries) {
  // The quotient needs z outside the target layer's domain.
  for (;;) {
    FieldElement z = channel.field_element(field);
    if (!next_domain.contains(z)) return z;
    ++(*retries);
  }
}

inline std::pair<FieldElement, FieldElement> honest_line(const HashDecomposition& dec,
                                                         const FieldElement& z) {
  return {out_of_domain_eval(dec.u_star, z), out_of_domain_eval(dec.u, z)};
}

inline Evaluations honest_quotient(const HashDecomposition& dec, const Subspace& folded,
                                   const FieldElement& z, const FieldElement& x,
                                   const std::pair<FieldElement, FieldElement>& line) {
  const Field& field = folded.field();
  FieldElement b_at_x = line.first + line.second * x;
  std::vector<uint32_t> diffs(folded.size());
  for (uint64_t t = 0; t < folded.size(); ++t) diffs[t] = folded.element(t).bits() ^ z.bits();
  std::vector<uint32_t> invs = batch_inverse_raw(field, diffs);
  std::vector<FieldElement> out;
  out.reserve(folded.size());
  for (uint64_t t = 0; t < folded.size(); ++t) {
    FieldElement h = dec.u_star[t] + x * dec.u[t];
    out.push_back(field.element(field.mul_raw(h.bits() ^ b_at_x.bits(), invs[t])));
  }
  return Evaluations(folded, std::move(out));
}

}  // namespace detail_deep

// COMMIT phase. Per round: the verifier samples z (resampled out of
// L^(i+1)), the prover writes the line B, the verifier samples x, the prover
// writes f^(i+1) = QUOTIENT(H_x[f^(i)], z, B(x)).
inline DeepFriTranscript deep_commit(const Evaluations& f0, const DeepFriParams& params,
                                     Channel& channel, DeepProver* prover = nullptr) {
  DFRI_REQUIRE(f0.domain() == params.base_domain, ErrorCode::kBadDomainSize,
               "input domain does not match parameters");
  DeepProver honest;
  if (prover == nullptr) prover = &honest;
  prover->begin(f0, params);

  uint64_t seed = channel.seed();
  std::vector<Evaluations> layers = {f0};
  std::vector<DeepRound> rounds;
  for (size_t i = 0; i < params.rounds(); ++i) {
    const Subspace& folded = params.chain.domains[i + 1];
    uint32_t retries = 0;
    FieldElement z = detail_deep::draw_z(channel, params.field, folded, &retries);
    HashDecomposition dec =
        fri_hash_decompose(layers.back(), params.chain.folds[i], folded);
    auto line = prover->choose_line(i, z, detail_deep::honest_line(dec, z));
    FieldElement x = channel.field_element(params.field);
    Evaluations honest_next = detail_deep::honest_quotient(dec, folded, z, x, line);
    layers.push_back(prover->choose_layer(i, z, x, honest_next));
    DFRI_REQUIRE(layers.back().domain() == folded, ErrorCode::kBadDomainSize,
                 "prover wrote a layer on the wrong domain");
    rounds.push_back(DeepRound{z, line.first, line.second, retries, x});
  }
  FieldElement c = prover->choose_constant(layers.back());
  return DeepFriTranscript{params, seed,         true, std::move(layers),
                           std::move(rounds), c};
}

// Read-only oracle access with query counting; the constraint-system
// verifier derives its base layer from other oracles through this interface.
class OracleView {
 public:
  virtual ~OracleView() = default;
  virtual FieldElement at(uint64_t index) const = 0;
  virtual const Subspace& domain() const = 0;
  uint64_t queries() const { return queries_; }

 protected:
  void count() const { ++queries_; }

 private:
  mutable uint64_t queries_ = 0;
};

class VectorOracle : public OracleView {
 public:
  explicit VectorOracle(const Evaluations& e) : evals_(e) {}
  FieldElement at(uint64_t index) const override {
    count();
    return evals_[index];
  }
  const Subspace& domain() const override { return evals_.domain(); }

 private:
  const Evaluations& evals_;
};

namespace detail_deep {

inline void validate_deep(const DeepFriTranscript& t) {
  const DeepFriParams& p = t.params;
  size_t expected = p.rounds() + 1 - (t.has_layer0 ? 0 : 1);
  DFRI_REQUIRE(t.layers.size() == expected, ErrorCode::kMalformedTranscript,
               "layer count mismatch");
  DFRI_REQUIRE(t.rounds.size() == p.rounds(), ErrorCode::kMalformedTranscript,
               "round record count mismatch");
  for (size_t i = t.has_layer0 ? 0 : 1; i <= p.rounds(); ++i) {
    DFRI_REQUIRE(t.layer(i).domain() == p.chain.domains[i], ErrorCode::kMalformedTranscript,
                 "layer domain mismatch");
  }
  Channel replay(t.commit_seed);
  for (size_t i = 0; i < p.rounds(); ++i) {
    uint32_t retries = 0;
    FieldElement z = draw_z(replay, p.field, p.chain.domains[i + 1], &retries);
    DFRI_REQUIRE(z == t.rounds[i].z && retries == t.rounds[i].retries,
                 ErrorCode::kMalformedTranscript, "z challenges do not replay from the seed");
    DFRI_REQUIRE(replay.field_element(p.field) == t.rounds[i].x,
                 ErrorCode::kMalformedTranscript, "x challenges do not replay from the seed");
  }
}

struct DeepPathResult {
  bool accepted;
  int failed_round;  // rounds() means the final constant check
};

// The QUERY identity at round i and point s = s^(i+1):
//   H_x[f^(i)](s) == f^(i+1)(s) * (s - z^(i)) + B^(i)(x^(i)).
// The value read from f^(i+1) is cached and reused as half of the next
// round's coset pair, so each repetition makes exactly 2 queries per folded
// round plus the single final read.
inline DeepPathResult follow_deep_path(const DeepFriTranscript& t, uint64_t leaf,
                                       const OracleView* layer0,
                                       std::vector<uint64_t>* reads) {
  const DeepFriParams& p = t.params;
  size_t r = p.rounds();
  auto read = [&](size_t layer, uint64_t idx) -> FieldElement {
    if (layer == 0 && layer0 != nullptr) {
      if (reads) (*reads)[0] += 1;
      return layer0->at(idx);
    }
    if (reads) (*reads)[layer] += 1;
    return t.layer(layer)[idx];
  };
  if (r == 0) {
    FieldElement v = read(0, leaf);
    return {v == t.final_constant, v == t.final_constant ? -1 : 0};
  }
  std::optional<FieldElement> carry;  // value of f^(i) at position leaf >> i
  for (size_t i = 0; i < r; ++i) {
    uint64_t tt = leaf >> (i + 1);
    uint64_t own = leaf >> i;
    FieldElement f_s0 = (carry && own == 2 * tt) ? *carry : read(i, 2 * tt);
    FieldElement f_s1 = (carry && own == 2 * tt + 1) ? *carry : read(i, 2 * tt + 1);
    FieldElement s0 = p.chain.domains[i].element(2 * tt);
    FieldElement h = fri_hash_at(f_s0, f_s1, s0, p.chain.folds[i].kernel_root(),
                                 t.rounds[i].x);
    FieldElement s_next = p.chain.domains[i + 1].element(tt);
    FieldElement next = read(i + 1, tt);
    carry = next;
    FieldElement rhs = next * (s_next + t.rounds[i].z) + t.rounds[i].line_at(t.rounds[i].x);
    if (h != rhs) return {false, static_cast<int>(i)};
    if (i + 1 == r) {
      if (next != t.final_constant) return {false, static_cast<int>(r)};
    }
  }
  return {true, -1};
}

}  // namespace detail_deep

struct DeepVerdict {
  bool accepted;
  std::vector<QueryTrace> repetitions;
};

inline DeepVerdict deep_verify(const DeepFriTranscript& t, size_t ell, Channel& channel,
                               const OracleView* layer0 = nullptr) {
  detail_deep::validate_deep(t);
  DFRI_REQUIRE(t.has_layer0 || layer0 != nullptr, ErrorCode::kMalformedTranscript,
               "layer 0 must be supplied when not in the transcript");
  DeepVerdict verdict{true, {}};
  for (size_t rep = 0; rep < ell; ++rep) {
    uint64_t leaf = channel.index(t.params.base_domain.size());
    QueryTrace trace;
    trace.leaf = leaf;
    trace.layer_reads.assign(t.params.rounds() + 1, 0);
    auto res = detail_deep::follow_deep_path(t, leaf, layer0, &trace.layer_reads);
    trace.accepted = res.accepted;
    trace.failed_round = res.failed_round;
    verdict.accepted = verdict.accepted && trace.accepted;
    verdict.repetitions.push_back(std::move(trace));
  }
  return verdict;
}

inline Rational deep_exact_accept(const DeepFriTranscript& t,
                                  const OracleView* layer0 = nullptr) {
  detail_deep::validate_deep(t);
  DFRI_REQUIRE(t.has_layer0 || layer0 != nullptr, ErrorCode::kMalformedTranscript,
               "layer 0 must be supplied when not in the transcript");
  uint64_t accepted = 0;
  uint64_t total = t.params.base_domain.size();
  for (uint64_t leaf = 0; leaf < total; ++leaf) {
    if (detail_deep::follow_deep_path(t, leaf, layer0, nullptr).accepted) ++accepted;
  }
  return Rational(static_cast<long long>(accepted), static_cast<long long>(total));
}

// ---------------------------------------------------------------------------
// Analysis instrumentation: GREEN/RED coloring, the eta/theta weights through
// AVG and ZERO, and the tracked agreements alpha (of f^(i) with its code
// under eta) and beta (of H_x[f^(i-1)] with the value-constrained code under
// theta). alpha^(i) <= beta^(i) holds deterministically round by round.
// ---------------------------------------------------------------------------

struct RoundInstrumentation {
  // eta[i], theta[i] live on L^(i); theta[0] is unused. edge_fail[i][t] marks
  // the set E^(i) where the round-(i-1) test fails.
  std::vector<std::vector<Rational>> eta;
  std::vector<std::vector<Rational>> theta;
  std::vector<std::vector<bool>> edge_fail;
  // alpha[i]/beta[i] are exhaustive maximizations, so they are only filled in
  // where the enumeration fits the brute-force guard (see the _known masks).
  std::vector<Rational> alpha;  // alpha[0..r]
  std::vector<Rational> beta;   // beta[1..r]; beta[0] unused
  std::vector<bool> alpha_known;
  std::vector<bool> beta_known;
  Rational p_accept_formula;    // E_s[eta^(r)(s) * 1{f^(r)(s) = C}]
};

inline RoundInstrumentation round_instrumentation(const DeepFriTranscript& t,
                                                  const OracleView* layer0 = nullptr,
                                                  bool compute_agreements = true) {
  detail_deep::validate_deep(t);
  const DeepFriParams& p = t.params;
  size_t r = p.rounds();

  // Materialize layer values (prover-side analysis, not verification).
  std::vector<Evaluations> layers;
  for (size_t i = 0; i <= r; ++i) {
    if (i == 0 && !t.has_layer0) {
      DFRI_REQUIRE(layer0 != nullptr, ErrorCode::kMalformedTranscript, "layer 0 missing");
      std::vector<FieldElement> vals;
      for (uint64_t j = 0; j < layer0->domain().size(); ++j) vals.push_back(layer0->at(j));
      layers.emplace_back(p.chain.domains[0], std::move(vals));
    } else {
      layers.push_back(t.layer(i));
    }
  }

  RoundInstrumentation out;
  out.eta.resize(r + 1);
  out.theta.resize(r + 1);
  out.edge_fail.resize(r + 1);
  out.eta[0].assign(p.chain.domains[0].size(), Rational(1));

  for (size_t i = 1; i <= r; ++i) {
    const Subspace& dom = p.chain.domains[i];
    const DeepRound& round = t.rounds[i - 1];
    Evaluations hash =
        fri_hash(layers[i - 1], round.x, p.chain.folds[i - 1], dom);
    out.theta[i].resize(dom.size());
    out.edge_fail[i].resize(dom.size());
    out.eta[i].resize(dom.size());
    for (uint64_t s = 0; s < dom.size(); ++s) {
      out.theta[i][s] = (out.eta[i - 1][2 * s] + out.eta[i - 1][2 * s + 1]) / 2;
      FieldElement rhs =
          layers[i][s] * (dom.element(s) + round.z) + round.line_at(round.x);
      out.edge_fail[i][s] = (hash[s] != rhs);
      out.eta[i][s] = out.edge_fail[i][s] ? Rational(0) : out.theta[i][s];
    }
  }

  // p_accept by the formula, for cross-checking against leaf enumeration.
  {
    const Evaluations& last = layers[r];
    Rational sum(0);
    for (uint64_t s = 0; s < last.size(); ++s) {
      if (last[s] == t.final_constant) sum += out.eta[r][s];
    }
    out.p_accept_formula = sum / Rational(static_cast<long long>(last.size()));
  }

  if (!compute_agreements) return out;

  auto fits_guard = [&](uint64_t free_coeffs) {
    return guards::override_flag() ||
           static_cast<double>(free_coeffs) * p.field.n() <= kRsScanGuardBits;
  };
  out.alpha.resize(r + 1, Rational(0));
  out.beta.resize(r + 1, Rational(0));
  out.alpha_known.assign(r + 1, false);
  out.beta_known.assign(r + 1, false);
  for (size_t i = 0; i <= r; ++i) {
    uint64_t d = p.schedule[i];
    const Subspace& dom = p.chain.domains[i];
    if (d == 0) {
      // the code is just the zero function
      Rational sum(0);
      for (uint64_t s = 0; s < dom.size(); ++s) {
        if (layers[i][s].is_zero()) sum += out.eta[i][s];
      }
      out.alpha[i] = sum / Rational(static_cast<long long>(dom.size()));
      out.alpha_known[i] = true;
    } else if (fits_guard(d)) {
      out.alpha[i] =
          max_weighted_agreement_rs(layers[i], RsParams(p.field, dom, d), out.eta[i])
              .agreement;
      out.alpha_known[i] = true;
    }
    if (i >= 1 && fits_guard(d)) {
      const DeepRound& round = t.rounds[i - 1];
      Evaluations hash =
          fri_hash(layers[i - 1], round.x, p.chain.folds[i - 1], dom);
      // constrained code: deg <= d^(i) (bound d^(i)+1) with P(z) = B(x)
      out.beta[i] = max_weighted_agreement_rs(
                        hash, RsParams(p.field, dom, d + 1), out.theta[i],
                        RsConstraint{round.z, round.line_at(round.x)})
                        .agreement;
      out.beta_known[i] = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scripted adversaries.
// ---------------------------------------------------------------------------

// Folds a far word with the honest algorithm (the weakest cheating prover:
// every round identity holds, only the final constant check can fail).
// deep_commit with no prover does exactly this; the alias is for readability.
inline DeepFriTranscript deep_commit_honest_fold(const Evaluations& f0,
                                                 const DeepFriParams& params,
                                                 Channel& channel) {
  return deep_commit(f0, params, channel);
}

// Commits to a chosen pretender codeword: every written message follows the
// honest algorithm applied to the pretender's encoding, while the real input
// oracle stays in place. Round-0 checks fail exactly where the input strays
// from the pretender.
class PretenderProver : public DeepProver {
 public:
  explicit PretenderProver(Polynomial pretender) : pretender_(std::move(pretender)) {}

  void begin(const Evaluations& /*f0*/, const DeepFriParams& params) override {
    params_ = std::make_unique<DeepFriParams>(params);
    chain_ = {encode(pretender_, params.base_domain)};
  }
  std::pair<FieldElement, FieldElement> choose_line(
      size_t round, const FieldElement& z,
      const std::pair<FieldElement, FieldElement>& /*honest*/) override {
    HashDecomposition dec = fri_hash_decompose(chain_.back(), params_->chain.folds[round],
                                               params_->chain.domains[round + 1]);
    return detail_deep::honest_line(dec, z);
  }
  Evaluations choose_layer(size_t round, const FieldElement& z, const FieldElement& x,
                           const Evaluations& /*honest*/) override {
    HashDecomposition dec = fri_hash_decompose(chain_.back(), params_->chain.folds[round],
                                               params_->chain.domains[round + 1]);
    auto line = detail_deep::honest_line(dec, z);
    chain_.push_back(detail_deep::honest_quotient(dec, params_->chain.domains[round + 1], z,
                                                  x, line));
    return chain_.back();
  }

 private:
  Polynomial pretender_;
  std::unique_ptr<DeepFriParams> params_;
  std::vector<Evaluations> chain_;
};

// Snaps every written layer to its nearest codeword (brute force, so tiny
// parameters only). After the first snap the chain is a codeword and folding
// keeps it one, so later snaps are identities.
class NearestCodewordProver : public DeepProver {
 public:
  void begin(const Evaluations& /*f0*/, const DeepFriParams& params) override {
    params_ = std::make_unique<DeepFriParams>(params);
  }
  Evaluations choose_layer(size_t round, const FieldElement& /*z*/,
                           const FieldElement& /*x*/, const Evaluations& honest) override {
    uint64_t d = params_->schedule[round + 1];
    if (d == 0) {
      return encode(Polynomial(params_->field), honest.domain());
    }
    NearestCodeword nc =
        nearest_codeword_rs(honest, RsParams(params_->field, honest.domain(), d));
    return encode(nc.poly, honest.domain());
  }

 private:
  std::unique_ptr<DeepFriParams> params_;
};

}  // namespace deepfri

#endif  // DEEPFRI_DEEP_FRI_HPP
