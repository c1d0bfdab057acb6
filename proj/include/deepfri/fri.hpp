#ifndef DEEPFRI_FRI_HPP
#define DEEPFRI_FRI_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "deepfri/channel.hpp"
#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"
#include "deepfri/poly.hpp"
#include "deepfri/rational.hpp"
#include "deepfri/subspace.hpp"

namespace deepfri {

// Shared by FRI and DEEP-FRI: the fold chain L^(0) -> L^(1) -> ... where
// L^(i+1) = q^(i)(L^(i)) and q^(i) is the subspace polynomial of
// span{basis[0] of L^(i)}.
struct DomainChain {
  std::vector<Subspace> domains;
  std::vector<FoldMap> folds;

  DomainChain(const Subspace& base, size_t rounds) {
    DFRI_REQUIRE(static_cast<size_t>(base.dim()) >= rounds, ErrorCode::kBadDomainSize,
                 "domain too small for the requested number of rounds");
    domains.push_back(base);
    for (size_t i = 0; i < rounds; ++i) {
      FoldMap q(domains.back().basis()[0]);
      domains.push_back(fold_domain(domains.back(), q));
      folds.push_back(q);
    }
  }
};

// The two-point algebraic hash: H_x[f](s) = P_{f,s}(x) where P_{f,s} is the
// line through (s0, f(s0)) and (s1, f(s1)), {s0, s1} the coset pair of s.
// Written as u*(s) + x * u(s); this decomposition is also what the DEEP round
// evaluates out of domain.
struct HashDecomposition {
  Evaluations u_star;  // P_{f,s}(0)
  Evaluations u;       // slope in x
};

inline HashDecomposition fri_hash_decompose(const Evaluations& f, const FoldMap& q,
                                            const Subspace& folded) {
  const Field& field = f.domain().field();
  DFRI_REQUIRE(f.domain().basis()[0] == q.kernel_root(), ErrorCode::kDomainMismatch,
               "fold map does not match the layer domain");
  FieldElement alpha_inv = q.kernel_root().inv();
  std::vector<FieldElement> ustar, slope;
  ustar.reserve(folded.size());
  slope.reserve(folded.size());
  for (uint64_t t = 0; t < folded.size(); ++t) {
    FieldElement f0 = f[2 * t], f1 = f[2 * t + 1];
    FieldElement s0 = f.domain().element(2 * t);
    FieldElement u = (f0 + f1) * alpha_inv;
    ustar.push_back(f0 + u * s0);
    slope.push_back(u);
  }
  return HashDecomposition{Evaluations(folded, std::move(ustar)),
                           Evaluations(folded, std::move(slope))};
}

inline Evaluations fri_hash(const Evaluations& f, const FieldElement& x, const FoldMap& q,
                            const Subspace& folded) {
  HashDecomposition d = fri_hash_decompose(f, q, folded);
  std::vector<FieldElement> out;
  out.reserve(folded.size());
  for (uint64_t t = 0; t < folded.size(); ++t) out.push_back(d.u_star[t] + x * d.u[t]);
  return Evaluations(folded, std::move(out));
}

// One output point from exactly the two coset-pair input points.
inline FieldElement fri_hash_at(const FieldElement& f_s0, const FieldElement& f_s1,
                                const FieldElement& s0, const FieldElement& alpha,
                                const FieldElement& x) {
  FieldElement u = (f_s0 + f_s1) * alpha.inv();
  return f_s0 + u * (x + s0);
}

// Majority value; ties break toward the smallest bit pattern.
inline FieldElement majority_value(const Evaluations& e) {
  std::map<uint32_t, uint64_t> counts;
  for (const auto& v : e.values()) counts[v.bits()]++;
  uint32_t best = 0;
  uint64_t best_count = 0;
  for (const auto& [bits, count] : counts) {
    if (count > best_count) {
      best = bits;
      best_count = count;
    }
  }
  return e.domain().field().element(best);
}

struct FriParams {
  Field field;
  Subspace base_domain;
  int rate_log;  // rho = 2^-rate_log
  DomainChain chain;

  FriParams(const Field& f, const Subspace& base, int rate_log_)
      : field(f),
        base_domain(base),
        rate_log(rate_log_),
        chain(base, checked_rounds(base, rate_log_)) {
    DFRI_REQUIRE(base.field() == f, ErrorCode::kFieldMismatch, "domain field mismatch");
  }

  static size_t checked_rounds(const Subspace& base, int rate_log) {
    DFRI_REQUIRE(rate_log >= 1, ErrorCode::kBadDomainSize, "rate must be at most 1/2");
    DFRI_REQUIRE(base.dim() > rate_log, ErrorCode::kBadDomainSize,
                 "domain size must exceed 1/rate");
    return static_cast<size_t>(base.dim() - rate_log);
  }

  size_t rounds() const { return chain.folds.size(); }
  uint64_t degree(size_t i) const { return chain.domains[i].size() >> rate_log; }
  uint64_t degree0() const { return degree(0); }
  Rational rho() const { return Rational(1, int64_t{1} << rate_log); }

  bool operator==(const FriParams& o) const {
    return field == o.field && base_domain == o.base_domain && rate_log == o.rate_log;
  }
};

struct FriTranscript {
  FriParams params;
  uint64_t commit_seed;
  std::vector<Evaluations> layers;       // f^(0..r)
  std::vector<FieldElement> challenges;  // x^(0..r-1)
  FieldElement final_constant;
};

// COMMIT phase. A dishonest input is folded honestly all the same (the
// honest-fold prover); other provers mutate the transcript afterwards.
inline FriTranscript fri_commit(const Evaluations& f0, const FriParams& params,
                                Channel& channel) {
  DFRI_REQUIRE(f0.domain() == params.base_domain, ErrorCode::kBadDomainSize,
               "input domain does not match parameters");
  uint64_t seed = channel.seed();
  std::vector<Evaluations> layers = {f0};
  std::vector<FieldElement> challenges;
  for (size_t i = 0; i < params.rounds(); ++i) {
    FieldElement x = channel.field_element(params.field);
    challenges.push_back(x);
    layers.push_back(
        fri_hash(layers.back(), x, params.chain.folds[i], params.chain.domains[i + 1]));
  }
  FieldElement c = majority_value(layers.back());
  return FriTranscript{params, seed, std::move(layers), std::move(challenges), c};
}

struct QueryTrace {
  uint64_t leaf;
  bool accepted;
  int failed_round;                 // -1 if accepted; rounds() means the final check
  std::vector<uint64_t> layer_reads;  // oracle reads per layer
};

struct FriVerdict {
  bool accepted;
  std::vector<QueryTrace> repetitions;
};

namespace detail_fri {

inline void validate_fri(const FriTranscript& t) {
  const FriParams& p = t.params;
  DFRI_REQUIRE(t.layers.size() == p.rounds() + 1, ErrorCode::kMalformedTranscript,
               "layer count mismatch");
  DFRI_REQUIRE(t.challenges.size() == p.rounds(), ErrorCode::kMalformedTranscript,
               "challenge count mismatch");
  for (size_t i = 0; i < t.layers.size(); ++i) {
    DFRI_REQUIRE(t.layers[i].domain() == p.chain.domains[i], ErrorCode::kMalformedTranscript,
                 "layer domain mismatch");
  }
  Channel replay(t.commit_seed);
  for (size_t i = 0; i < p.rounds(); ++i) {
    DFRI_REQUIRE(replay.field_element(p.field) == t.challenges[i],
                 ErrorCode::kMalformedTranscript, "challenges do not replay from the seed");
  }
}

// Follows one leaf-to-root path; reads count distinct oracle positions
// touched per layer (2 per folded round since the round-i consistency value
// is re-read as part of round i+1's coset pair, and 1 at the final layer).
inline bool follow_path(const FriTranscript& t, uint64_t leaf, int* failed_round,
                        std::vector<uint64_t>* reads) {
  const FriParams& p = t.params;
  size_t r = p.rounds();
  if (r == 0 && reads) (*reads)[0] += 1;
  for (size_t i = 0; i < r; ++i) {
    uint64_t tt = leaf >> (i + 1);
    const Evaluations& layer = t.layers[i];
    FieldElement f_s0 = layer[2 * tt];
    FieldElement f_s1 = layer[2 * tt + 1];
    if (reads) (*reads)[i] += 2;
    if (reads && i + 1 == r) (*reads)[r] += 1;
    FieldElement s0 = p.chain.domains[i].element(2 * tt);
    FieldElement h = fri_hash_at(f_s0, f_s1, s0, p.chain.folds[i].kernel_root(),
                                 t.challenges[i]);
    FieldElement next = t.layers[i + 1][tt];
    if (h != next) {
      if (reads && i + 1 < r) (*reads)[i + 1] += 1;
      *failed_round = static_cast<int>(i);
      return false;
    }
  }
  uint64_t tail = leaf >> r;
  if (t.layers[r][tail] != t.final_constant) {
    *failed_round = static_cast<int>(r);
    return false;
  }
  *failed_round = -1;
  return true;
}

}  // namespace detail_fri

inline FriVerdict fri_verify(const FriTranscript& t, size_t ell, Channel& channel) {
  detail_fri::validate_fri(t);
  FriVerdict verdict{true, {}};
  for (size_t rep = 0; rep < ell; ++rep) {
    uint64_t leaf = channel.index(t.params.base_domain.size());
    QueryTrace trace;
    trace.leaf = leaf;
    trace.layer_reads.assign(t.layers.size(), 0);
    trace.accepted = detail_fri::follow_path(t, leaf, &trace.failed_round, &trace.layer_reads);
    verdict.accepted = verdict.accepted && trace.accepted;
    verdict.repetitions.push_back(std::move(trace));
  }
  return verdict;
}

// Exact single-repetition acceptance probability: enumerate every leaf.
inline Rational fri_exact_accept(const FriTranscript& t) {
  detail_fri::validate_fri(t);
  uint64_t accepted = 0;
  uint64_t total = t.params.base_domain.size();
  for (uint64_t leaf = 0; leaf < total; ++leaf) {
    int failed;
    if (detail_fri::follow_path(t, leaf, &failed, nullptr)) ++accepted;
  }
  return Rational(static_cast<long long>(accepted), static_cast<long long>(total));
}

}  // namespace deepfri

#endif  // DEEPFRI_FRI_HPP
