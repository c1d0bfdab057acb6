#include <catch2/catch_amalgamated.hpp>

#include "deepfri/presets.hpp"
#include "deepfri/serialize.hpp"

using namespace deepfri;

namespace {

Evaluations random_word(const Subspace& d, Channel& ch) {
  std::vector<FieldElement> v;
  for (uint64_t i = 0; i < d.size(); ++i) v.push_back(ch.field_element(d.field()));
  return Evaluations(d, std::move(v));
}

}  // namespace

TEST_CASE("subspace and evaluations round trip through JSON") {
  Field f(16);
  Channel ch(3);
  Subspace d(f, {f.element(0x1), f.element(0x10), f.element(0x0100)}, f.element(0x8000));
  Evaluations e = random_word(d, ch);
  Json j = to_json(e);
  REQUIRE(j.at("domain").at("shift") == "8000");
  REQUIRE(evaluations_from_json(f, j) == e);
  // property: dumping twice is byte-identical
  REQUIRE(j.dump() == to_json(evaluations_from_json(f, j)).dump());
}

TEST_CASE("fri transcript round trip preserves verification") {
  FriParams params = fri_preset("r2-q8");
  Channel ch(4);
  std::vector<FieldElement> coeffs;
  for (uint64_t i = 0; i < params.degree0(); ++i) coeffs.push_back(ch.field_element(params.field));
  Channel commit_ch(5);
  FriTranscript t = fri_commit(encode(Polynomial(params.field, coeffs), params.base_domain),
                               params, commit_ch);
  Json j = to_json(t);
  FriTranscript back = fri_transcript_from_json(j);
  REQUIRE(back.layers == t.layers);
  REQUIRE(back.final_constant == t.final_constant);
  REQUIRE(fri_exact_accept(back) == Rational(1));
  REQUIRE(to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("deep transcript round trip preserves verification") {
  DeepFriParams params = deep_preset("r2-q16");
  Channel ch(6);
  std::vector<FieldElement> coeffs;
  for (uint64_t i = 0; i < params.degree0; ++i) coeffs.push_back(ch.field_element(params.field));
  Channel commit_ch(7);
  DeepFriTranscript t = deep_commit(
      encode(Polynomial(params.field, coeffs), params.base_domain), params, commit_ch);
  Json j = to_json(t);
  DeepFriTranscript back = deep_transcript_from_json(j);
  REQUIRE(deep_exact_accept(back) == Rational(1));
  REQUIRE(to_json(back).dump() == j.dump());
  // wire format carries the per-round records
  REQUIRE(j.at("rounds").size() == params.rounds());
  REQUIRE(j.at("rounds")[0].contains("z"));
  REQUIRE(j.at("rounds")[0].at("line").size() == 2);
}

TEST_CASE("apr instance and ali transcript round trip") {
  AliFibPreset preset = ali_fib_preset();
  auto [inst, wit] = air_to_apr(preset.air, preset.valid_trace);
  auto [df, dg] = make_ali_domains(inst, preset.rate_log);
  SECTION("instance alone") {
    Json j = to_json(inst);
    AprInstance back = apr_instance_from_json(j);
    REQUIRE(back.degree_bound == inst.degree_bound);
    REQUIRE(back.constraints.size() == inst.constraints.size());
    REQUIRE(back.full_mask() == inst.full_mask());
    REQUIRE(back.max_condition_degree() == inst.max_condition_degree());
    REQUIRE(to_json(back).dump() == j.dump());
    REQUIRE(apr_check(back, wit));
  }
  SECTION("air instance") {
    Json j = to_json(preset.air);
    AirInstance back = air_instance_from_json(j);
    REQUIRE(back.gamma == preset.air.gamma);
    REQUIRE(to_json(back).dump() == j.dump());
  }
  SECTION("full transcript") {
    Channel ch(9);
    AliTranscript t = deep_ali_prove(inst, wit, df, dg, ch);
    Json j = to_json(t);
    AliTranscript back = ali_transcript_from_json(j);
    Channel vch(10);
    REQUIRE(deep_ali_verify(back, 4, vch).accepted);
    REQUIRE(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("report summary JSON is stable") {
  ExperimentReport rep;
  rep.name = "curves";
  rep.seed = 0;
  rep.params = {{"rho", "0.25"}};
  rep.summary = {{"rows", "4"}};
  Json j = summary_json(rep);
  REQUIRE(j.at("name") == "curves");
  REQUIRE(j.dump() == summary_json(rep).dump());
}
