#ifndef DEEPFRI_PRESETS_HPP
#define DEEPFRI_PRESETS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "deepfri/deep_ali.hpp"
#include "deepfri/deep_fri.hpp"
#include "deepfri/fri.hpp"

namespace deepfri {

// Named parameter sets: rX-qY fixes X folding rounds over GF(2^Y).
// The proximity-test presets use the degree family d^(0) = 3*2^r - 2 whose
// schedule ends at exactly 1, at rates 4/16, 10/32, 22/64; the plain-fold
// presets use rate 1/4. ali-fib-q16 is the squaring-chain toy trace.
struct PresetName {
  int rounds;
  int field_bits;
};

inline PresetName parse_preset(const std::string& name) {
  if (name == "r1-q8") return {1, 8};
  if (name == "r2-q8") return {2, 8};
  if (name == "r3-q8") return {3, 8};
  if (name == "r1-q16") return {1, 16};
  if (name == "r2-q16") return {2, 16};
  if (name == "r3-q16") return {3, 16};
  throw Error(ErrorCode::kBadArgument, "unknown preset '" + name + "'");
}

inline FriParams fri_preset(const std::string& name) {
  PresetName p = parse_preset(name);
  Field field(p.field_bits);
  return FriParams(field, Subspace::canonical(field, p.rounds + 2, field.zero()), 2);
}

inline DeepFriParams deep_preset(const std::string& name) {
  PresetName p = parse_preset(name);
  Field field(p.field_bits);
  uint64_t d0 = 3 * (uint64_t{1} << p.rounds) - 2;
  int dim = p.rounds + 3;
  return DeepFriParams(field, Subspace::canonical(field, dim, field.zero()), d0);
}

// Default distance parameter: min(delta0, 1 - sqrt(rho) - q^(-1/13)).
inline double preset_delta(double delta0, double rho, double q) {
  return std::min(delta0, 1.0 - std::sqrt(rho) - std::pow(q, -1.0 / 13.0));
}

// Squaring-chain toy: width 1, 15 steps over GF(2^16) (15 divides 2^16 - 1),
// transition v2 - v1^2 = 0 on the shift mask {1, gamma}, boundary pins on the
// first and last cells. A valid trace is c, c^2, c^4, ....
struct AliFibPreset {
  AirInstance air;
  std::vector<std::vector<FieldElement>> valid_trace;
  int rate_log;
};

inline AliFibPreset ali_fib_preset() {
  Field field(16);
  uint64_t T = 15, w = 1;
  FieldElement c = field.element(0x03);
  std::vector<std::vector<FieldElement>> trace;
  FieldElement cur = c;
  for (uint64_t t = 0; t < T; ++t) {
    trace.push_back({cur});
    cur = cur * cur;
  }
  ConstraintExpr transition = ConstraintExpr::sum(
      {ConstraintExpr::variable(2),
       ConstraintExpr::product({ConstraintExpr::variable(1), ConstraintExpr::variable(1)})});
  std::vector<BoundaryConstraint> boundary = {
      {0, 0, trace[0][0]},
      {T - 1, 0, trace[T - 1][0]},
  };
  AirInstance air = AirInstance::make(field, T, w, {transition}, boundary);
  return AliFibPreset{std::move(air), std::move(trace), 2};
}

}  // namespace deepfri

#endif  // DEEPFRI_PRESETS_HPP
