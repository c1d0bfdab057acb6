#ifndef DEEPFRI_SERIALIZE_HPP
#define DEEPFRI_SERIALIZE_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "deepfri/deep_ali.hpp"
#include "deepfri/deep_fri.hpp"
#include "deepfri/fri.hpp"
#include "deepfri/lab.hpp"

// Transcripts and instances travel as JSON with field elements as lowercase
// hex strings of ceil(n/4) digits. nlohmann::json keeps object keys sorted,
// so identical inputs dump byte-identically.

namespace deepfri {

using Json = nlohmann::json;

inline Json to_json(const FieldElement& e) { return e.to_hex(); }

inline FieldElement element_from_json(const Field& field, const Json& j) {
  return FieldElement::from_hex(field, j.get<std::string>());
}

inline Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& b : s.basis()) basis.push_back(b.to_hex());
  return Json{{"basis", basis}, {"shift", s.shift().to_hex()}};
}

inline Subspace subspace_from_json(const Field& field, const Json& j) {
  std::vector<FieldElement> basis;
  for (const auto& b : j.at("basis")) basis.push_back(element_from_json(field, b));
  return Subspace(field, std::move(basis), element_from_json(field, j.at("shift")));
}

inline Json to_json(const Evaluations& e) {
  Json values = Json::array();
  for (const auto& v : e.values()) values.push_back(v.to_hex());
  return Json{{"domain", to_json(e.domain())}, {"values", values}};
}

inline Evaluations evaluations_from_json(const Field& field, const Json& j) {
  Subspace d = subspace_from_json(field, j.at("domain"));
  std::vector<FieldElement> values;
  for (const auto& v : j.at("values")) values.push_back(element_from_json(field, v));
  return Evaluations(std::move(d), std::move(values));
}

inline Json to_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.to_hex());
  return coeffs;
}

inline Polynomial polynomial_from_json(const Field& field, const Json& j) {
  std::vector<FieldElement> coeffs;
  for (const auto& c : j) coeffs.push_back(element_from_json(field, c));
  return Polynomial(field, std::move(coeffs));
}

// ---- FRI ----

inline Json to_json(const FriTranscript& t) {
  Json layers = Json::array();
  for (const auto& l : t.layers) layers.push_back(to_json(l));
  Json challenges = Json::array();
  for (const auto& x : t.challenges) challenges.push_back(x.to_hex());
  return Json{{"challenges", challenges},
              {"field_n", t.params.field.n()},
              {"final", t.final_constant.to_hex()},
              {"layers", layers},
              {"rate_log", t.params.rate_log},
              {"seed", t.commit_seed}};
}

inline FriTranscript fri_transcript_from_json(const Json& j) {
  Field field(j.at("field_n").get<int>());
  Json layers = j.at("layers");
  DFRI_REQUIRE(layers.is_array() && !layers.empty(), ErrorCode::kMalformedTranscript,
               "transcript has no layers");
  Subspace base = subspace_from_json(field, layers[0].at("domain"));
  FriParams params(field, base, j.at("rate_log").get<int>());
  std::vector<Evaluations> ls;
  for (const auto& l : layers) ls.push_back(evaluations_from_json(field, l));
  std::vector<FieldElement> xs;
  for (const auto& x : j.at("challenges")) xs.push_back(element_from_json(field, x));
  return FriTranscript{params, j.at("seed").get<uint64_t>(), std::move(ls), std::move(xs),
                       element_from_json(field, j.at("final"))};
}

// ---- DEEP-FRI ----

inline Json to_json(const DeepFriTranscript& t) {
  Json layers = Json::array();
  for (const auto& l : t.layers) layers.push_back(to_json(l));
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back(Json{{"line", Json::array({r.line_b0.to_hex(), r.line_b1.to_hex()})},
                          {"retries", r.retries},
                          {"x", r.x.to_hex()},
                          {"z", r.z.to_hex()}});
  }
  return Json{{"degree0", t.params.degree0},
              {"domain", to_json(t.params.base_domain)},
              {"field_n", t.params.field.n()},
              {"final", t.final_constant.to_hex()},
              {"has_layer0", t.has_layer0},
              {"layers", layers},
              {"rounds", rounds},
              {"seed", t.commit_seed}};
}

inline DeepFriTranscript deep_transcript_from_json(const Json& j) {
  Field field(j.at("field_n").get<int>());
  Subspace base = subspace_from_json(field, j.at("domain"));
  DeepFriParams params(field, base, j.at("degree0").get<uint64_t>());
  std::vector<Evaluations> ls;
  for (const auto& l : j.at("layers")) ls.push_back(evaluations_from_json(field, l));
  std::vector<DeepRound> rounds;
  for (const auto& r : j.at("rounds")) {
    rounds.push_back(DeepRound{element_from_json(field, r.at("z")),
                               element_from_json(field, r.at("line")[0]),
                               element_from_json(field, r.at("line")[1]),
                               r.at("retries").get<uint32_t>(),
                               element_from_json(field, r.at("x"))});
  }
  return DeepFriTranscript{params,
                           j.at("seed").get<uint64_t>(),
                           j.at("has_layer0").get<bool>(),
                           std::move(ls),
                           std::move(rounds),
                           element_from_json(field, j.at("final"))};
}

// ---- APR / AIR instances ----

inline Json to_json(const AprInstance& inst) {
  Json constraints = Json::array();
  for (const auto& c : inst.constraints) {
    Json mask = Json::array();
    for (const auto& m : c.mask) mask.push_back(m.to_hex());
    constraints.push_back(Json{{"condition", c.condition.to_string()},
                               {"domain_poly", to_json(c.domain_poly)},
                               {"mask", mask}});
  }
  return Json{{"constraints", constraints},
              {"d", inst.degree_bound},
              {"field_n", inst.field.n()}};
}

inline AprInstance apr_instance_from_json(const Json& j) {
  Field field(j.at("field_n").get<int>());
  AprInstance inst{field, j.at("d").get<uint64_t>(), {}};
  for (const auto& c : j.at("constraints")) {
    std::vector<FieldElement> mask;
    for (const auto& m : c.at("mask")) mask.push_back(element_from_json(field, m));
    inst.constraints.push_back(
        AprConstraint{std::move(mask),
                      ConstraintExpr::parse(c.at("condition").get<std::string>(), field),
                      polynomial_from_json(field, c.at("domain_poly"))});
  }
  return inst;
}

inline Json to_json(const AirInstance& air) {
  Json transitions = Json::array();
  for (const auto& t : air.transitions) transitions.push_back(t.to_string());
  Json boundary = Json::array();
  for (const auto& b : air.boundary) {
    boundary.push_back(Json{{"col", b.col}, {"row", b.row}, {"value", b.value.to_hex()}});
  }
  return Json{{"T", air.trace_length},
              {"boundary", boundary},
              {"field_n", air.field.n()},
              {"gamma", air.gamma.to_hex()},
              {"transitions", transitions},
              {"w", air.width}};
}

inline AirInstance air_instance_from_json(const Json& j) {
  Field field(j.at("field_n").get<int>());
  std::vector<ConstraintExpr> transitions;
  for (const auto& t : j.at("transitions")) {
    transitions.push_back(ConstraintExpr::parse(t.get<std::string>(), field));
  }
  std::vector<BoundaryConstraint> boundary;
  for (const auto& b : j.at("boundary")) {
    boundary.push_back(BoundaryConstraint{b.at("row").get<uint64_t>(),
                                          b.at("col").get<uint64_t>(),
                                          element_from_json(field, b.at("value"))});
  }
  AirInstance air = AirInstance::make(field, j.at("T").get<uint64_t>(),
                                      j.at("w").get<uint64_t>(), std::move(transitions),
                                      std::move(boundary));
  if (j.contains("gamma")) {
    DFRI_REQUIRE(air.gamma == element_from_json(field, j.at("gamma")),
                 ErrorCode::kBadArgument, "recorded gamma is not the canonical generator");
  }
  return air;
}

// ---- full constraint-protocol transcript ----

inline Json to_json(const AliTranscript& t) {
  Json answers = Json::array();
  for (const auto& [p, v] : t.answers) {
    answers.push_back(Json{{"point", p.to_hex()}, {"value", v.to_hex()}});
  }
  Json alpha = Json::array();
  for (const auto& a : t.alpha) alpha.push_back(a.to_hex());
  return Json{{"alpha", alpha},
              {"answers", answers},
              {"f", to_json(t.f)},
              {"g", to_json(t.g)},
              {"h1", to_json(t.h1)},
              {"h2", to_json(t.h2)},
              {"instance", to_json(t.instance)},
              {"retries", t.z_retries},
              {"seed", t.commit_seed},
              {"z", t.z.to_hex()}};
}

inline AliTranscript ali_transcript_from_json(const Json& j) {
  AprInstance inst = apr_instance_from_json(j.at("instance"));
  const Field& field = inst.field;
  std::vector<FieldElement> alpha;
  for (const auto& a : j.at("alpha")) alpha.push_back(element_from_json(field, a));
  std::vector<std::pair<FieldElement, FieldElement>> answers;
  for (const auto& a : j.at("answers")) {
    answers.emplace_back(element_from_json(field, a.at("point")),
                         element_from_json(field, a.at("value")));
  }
  return AliTranscript{std::move(inst),
                       j.at("seed").get<uint64_t>(),
                       evaluations_from_json(field, j.at("f")),
                       std::move(alpha),
                       evaluations_from_json(field, j.at("g")),
                       element_from_json(field, j.at("z")),
                       j.at("retries").get<uint32_t>(),
                       std::move(answers),
                       deep_transcript_from_json(j.at("h1")),
                       deep_transcript_from_json(j.at("h2"))};
}

// ---- experiment reports ----

inline Json summary_json(const ExperimentReport& rep) {
  Json params = Json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  Json summary = Json::object();
  for (const auto& [k, v] : rep.summary) summary[k] = v;
  return Json{{"name", rep.name},
              {"params", params},
              {"pass", rep.pass},
              {"rows", rep.rows.size()},
              {"seed", rep.seed},
              {"summary", summary}};
}

}  // namespace deepfri

#endif  // DEEPFRI_SERIALIZE_HPP
