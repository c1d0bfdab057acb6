#include <catch2/catch_amalgamated.hpp>

#include "deepfri/deep_ali.hpp"
#include "deepfri/presets.hpp"

using namespace deepfri;

namespace {

struct ToySetup {
  AprInstance inst;
  AprWitness wit;
  Subspace domain_f;
  Subspace domain_g;
};

ToySetup toy() {
  AliFibPreset preset = ali_fib_preset();
  auto [inst, wit] = air_to_apr(preset.air, preset.valid_trace);
  auto [df, dg] = make_ali_domains(inst, preset.rate_log);
  return ToySetup{std::move(inst), std::move(wit), std::move(df), std::move(dg)};
}

}  // namespace

TEST_CASE("constraint expression parsing, printing, evaluation") {
  Field f(16);
  ConstraintExpr e = ConstraintExpr::parse("(+ v2 (* v1 v1))", f);
  REQUIRE(e.to_string() == "(+ v2 (* v1 v1))");
  REQUIRE(e.arity() == 2);
  REQUIRE(e.total_degree() == 2);
  FieldElement a = f.element(0x1234), b = f.element(0x0042);
  REQUIRE(e.eval(f, {a, b}) == b + a * a);
  ConstraintExpr pw = ConstraintExpr::parse("(pow (+ v1 0x0003) 3)", f);
  REQUIRE(pw.total_degree() == 3);
  FieldElement base = a + f.element(3);
  REQUIRE(pw.eval(f, {a}) == base * base * base);
  REQUIRE(ConstraintExpr::parse(pw.to_string(), f).to_string() == pw.to_string());
  REQUIRE_THROWS_AS(ConstraintExpr::parse("(- v1 v2)", f), Error);
  REQUIRE_THROWS_AS(ConstraintExpr::parse("(+ v1", f), Error);
}

TEST_CASE("structural degree equals expanded degree on small trees") {
  Field f(4);
  // single variable: expand by substituting X for v1 and comparing degrees
  std::vector<std::string> exprs = {
      "(* v1 v1)", "(+ (* v1 v1 v1) v1 0x5)", "(pow (+ v1 0x2) 4)",
      "(* (+ v1 0x1) (+ v1 0x2) (+ v1 0x3))"};
  Polynomial x = Polynomial::from_bits(f, {0, 1});
  for (const auto& s : exprs) {
    ConstraintExpr e = ConstraintExpr::parse(s, f);
    Polynomial expanded = e.eval_poly(f, {x});
    REQUIRE(expanded.degree() == static_cast<int64_t>(e.total_degree()));
  }
}

TEST_CASE("air_to_apr shapes: boundary and transition constraints") {
  AliFibPreset preset = ali_fib_preset();
  const Field& f = preset.air.field;
  auto [inst, wit] = air_to_apr(preset.air, preset.valid_trace);
  REQUIRE(inst.degree_bound == 16);  // 15 rounded up to a subspace size
  REQUIRE(inst.constraints.size() == 3);
  REQUIRE(inst.max_condition_degree() == 2);
  REQUIRE(inst.full_mask().size() == 2);  // {1, gamma}

  SECTION("transition: mask {1, gamma}, domain (x^T - 1)/(x - gamma^-1)") {
    const AprConstraint& tr = inst.constraints[0];
    REQUIRE(tr.mask.size() == 2);
    REQUIRE(tr.mask[0] == f.one());
    REQUIRE(tr.mask[1] == preset.air.gamma);
    REQUIRE(tr.domain_poly.degree() == 14);
    // roots are gamma^0 .. gamma^13 and not gamma^14
    for (uint64_t t = 0; t < 14; ++t) {
      REQUIRE(tr.domain_poly(preset.air.gamma.pow(t)).is_zero());
    }
    REQUIRE(!tr.domain_poly(preset.air.gamma.pow(14)).is_zero());
  }
  SECTION("boundary (0,0,c): mask {1}, P = v - c, Q = x - 1") {
    const AprConstraint& bc = inst.constraints[1];
    REQUIRE(bc.mask.size() == 1);
    REQUIRE(bc.mask[0] == f.one());
    REQUIRE(bc.domain_poly.degree() == 1);
    REQUIRE(bc.domain_poly(f.one()).is_zero());  // root at gamma^0 = 1
    REQUIRE(bc.condition.eval(f, {preset.valid_trace[0][0]}).is_zero());
  }
  SECTION("witness interpolates the trace over the subgroup") {
    for (uint64_t t = 0; t < 15; ++t) {
      REQUIRE(wit.f_tilde(preset.air.gamma.pow(t)) == preset.valid_trace[t][0]);
    }
    REQUIRE(wit.f_tilde.degree() < 15);
  }
  SECTION("q_lcm of the toy is x^15 - 1") {
    Polynomial qlcm = inst.q_lcm();
    REQUIRE(qlcm.degree() == 15);
    Polynomial expect = Polynomial::monomial(f, 15, f.one()) + Polynomial(f, {f.one()});
    REQUIRE(qlcm == expect);
  }
}

TEST_CASE("apr_check accepts the valid trace and rejects corruptions") {
  AliFibPreset preset = ali_fib_preset();
  auto [inst, wit] = air_to_apr(preset.air, preset.valid_trace);
  REQUIRE(apr_check(inst, wit));

  SECTION("corrupt one interior cell") {
    auto bad_trace = preset.valid_trace;
    bad_trace[7][0] += preset.air.field.one();
    auto [inst2, wit2] = air_to_apr(preset.air, bad_trace);
    REQUIRE(!apr_check(inst2, wit2));
  }
  SECTION("degree clause: an oversized witness fails even with no violations") {
    AprWitness big{Polynomial::monomial(inst.field, inst.degree_bound, inst.field.one())};
    AprInstance vacuous = inst;
    vacuous.constraints.clear();
    vacuous.constraints.push_back(AprConstraint{
        {inst.field.one()}, ConstraintExpr::parse("(* v1 0x0000)", inst.field),
        Polynomial(inst.field, {inst.field.one(), inst.field.one()})});
    REQUIRE(!apr_check(vacuous, big));
  }
  SECTION("zero witness satisfies the identity condition P(v) = v") {
    AprInstance simple = inst;
    simple.constraints.clear();
    simple.constraints.push_back(
        AprConstraint{{inst.field.one()}, ConstraintExpr::parse("v1", inst.field),
                      inst.constraints[0].domain_poly});
    AprWitness zero{Polynomial(inst.field)};
    REQUIRE(apr_check(simple, zero));
  }
}

TEST_CASE("compose_constraints: linearity, exact division, NonDivisible") {
  ToySetup s = toy();
  const Field& f = s.inst.field;
  size_t nc = s.inst.constraints.size();
  SECTION("all-zero coefficients give the zero polynomial") {
    std::vector<FieldElement> zeros(nc, f.zero());
    REQUIRE(compose_constraints(s.wit.f_tilde, zeros, s.inst).is_zero());
  }
  SECTION("unit coefficients divide exactly, degree < d * d_C") {
    for (size_t i = 0; i < nc; ++i) {
      std::vector<FieldElement> unit(nc, f.zero());
      unit[i] = f.one();
      Polynomial g = compose_constraints(s.wit.f_tilde, unit, s.inst);
      REQUIRE(g.degree() <
              static_cast<int64_t>(s.inst.degree_bound * s.inst.max_condition_degree()));
    }
  }
  SECTION("an invalid witness trips NonDivisible on some unit coefficient") {
    AliFibPreset preset = ali_fib_preset();
    auto bad_trace = preset.valid_trace;
    bad_trace[3][0] += f.one();
    auto [inst2, wit2] = air_to_apr(preset.air, bad_trace);
    bool tripped = false;
    for (size_t i = 0; i < inst2.constraints.size() && !tripped; ++i) {
      std::vector<FieldElement> unit(inst2.constraints.size(), f.zero());
      unit[i] = f.one();
      try {
        compose_constraints(wit2.f_tilde, unit, inst2);
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::kNonDivisible);
        tripped = true;
      }
    }
    REQUIRE(tripped);
  }
}

TEST_CASE("domains avoid the trace subgroup and size correctly") {
  ToySetup s = toy();
  REQUIRE(s.domain_f.size() == 64);    // d / rho = 16 * 4
  REQUIRE(s.domain_g.size() == 128);   // d * d_C / rho = 32 * 4
  Polynomial qlcm = s.inst.q_lcm();
  for (uint64_t i = 0; i < s.domain_f.size(); ++i) {
    REQUIRE(!qlcm(s.domain_f.element(i)).is_zero());
  }
  for (uint64_t i = 0; i < s.domain_g.size(); ++i) {
    REQUIRE(!qlcm(s.domain_g.element(i)).is_zero());
  }
}

TEST_CASE("deep_ali completeness on the toy witness") {
  ToySetup s = toy();
  for (uint64_t seed : {1ull, 7ull, 42ull, 1234567ull}) {
    Channel ch(seed);
    AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
    Channel vch(seed + 1000);
    AliVerdict v = deep_ali_verify(t, 8, vch);
    REQUIRE(v.accepted);
  }
}

TEST_CASE("verifier-side b equals the prover-side composition value at z") {
  ToySetup s = toy();
  Channel ch(99);
  AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
  Polynomial g_tilde = compose_constraints(s.wit.f_tilde, t.alpha, s.inst);
  std::map<uint32_t, FieldElement> amap;
  for (const auto& [p, v] : t.answers) amap.emplace(p.bits(), v);
  FieldElement b = detail_ali::deduce_b(s.inst, t.alpha, t.z, amap);
  REQUIRE(b == g_tilde(t.z));
  // and the committed g oracle is the encoding of g_tilde
  REQUIRE(t.g == encode(g_tilde, s.domain_g));
}

TEST_CASE("honest quotients meet their reduced degree bounds") {
  ToySetup s = toy();
  Channel ch(7);
  AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
  std::map<uint32_t, FieldElement> amap;
  for (const auto& [p, v] : t.answers) amap.emplace(p.bits(), v);
  Evaluations h1 = quotient_multi(t.f, amap);
  FieldElement b = detail_ali::deduce_b(s.inst, t.alpha, t.z, amap);
  Evaluations h2 = quotient_single(t.g, t.z, b);
  uint64_t msize = s.inst.full_mask().size();
  REQUIRE(interpolate(h1).degree() <
          static_cast<int64_t>(s.inst.degree_bound - msize));
  REQUIRE(interpolate(h2).degree() <
          static_cast<int64_t>(s.inst.degree_bound * s.inst.max_condition_degree() - 1));
}

TEST_CASE("each h query costs exactly one base-oracle query") {
  ToySetup s = toy();
  Channel ch(11);
  AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
  Channel vch(12);
  AliVerdict v = deep_ali_verify(t, 5, vch);
  REQUIRE(v.accepted);
  uint64_t h1_queries = 0, h2_queries = 0;
  for (const auto& rep : v.h1.repetitions) h1_queries += rep.layer_reads[0];
  for (const auto& rep : v.h2.repetitions) h2_queries += rep.layer_reads[0];
  REQUIRE(v.f_queries == h1_queries);
  REQUIRE(v.g_queries == h2_queries);
}

TEST_CASE("pointwise-ratio prover matches the honest prover on a valid witness") {
  ToySetup s = toy();
  Channel c1(5), c2(5);
  AliTranscript honest = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, c1);
  AliTranscript ratio = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, c2,
                                       AliProverMode::kPointwiseRatio);
  REQUIRE(honest.g == ratio.g);
  REQUIRE(honest.z == ratio.z);
  REQUIRE(honest.h2.final_constant == ratio.h2.final_constant);
}

TEST_CASE("honest prover refuses an invalid witness; scripted prover is rejected") {
  AliFibPreset preset = ali_fib_preset();
  auto bad_trace = preset.valid_trace;
  bad_trace[5][0] += preset.air.field.one();
  auto [inst, wit] = air_to_apr(preset.air, bad_trace);
  auto [df, dg] = make_ali_domains(inst, preset.rate_log);
  REQUIRE(!apr_check(inst, wit));
  Channel c1(3);
  REQUIRE_THROWS_AS(deep_ali_prove(inst, wit, df, dg, c1), Error);
  size_t rejected = 0, seeds = 10;
  for (uint64_t seed = 0; seed < seeds; ++seed) {
    Channel pc(seed);
    AliTranscript t =
        deep_ali_prove(inst, wit, df, dg, pc, AliProverMode::kPointwiseRatio);
    Channel vc(seed + 500);
    if (!deep_ali_verify(t, 8, vc).accepted) ++rejected;
  }
  REQUIRE(rejected >= 9);
}

TEST_CASE("tampered transcript fields are rejected as malformed") {
  ToySetup s = toy();
  Channel ch(21);
  AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
  SECTION("alpha") {
    AliTranscript bad = t;
    bad.alpha[0] += s.inst.field.one();
    Channel vch(1);
    REQUIRE_THROWS_AS(deep_ali_verify(bad, 2, vch), Error);
  }
  SECTION("z") {
    AliTranscript bad = t;
    bad.z += s.inst.field.one();
    Channel vch(1);
    REQUIRE_THROWS_AS(deep_ali_verify(bad, 2, vch), Error);
  }
  SECTION("answer point set") {
    AliTranscript bad = t;
    bad.answers.pop_back();
    Channel vch(1);
    REQUIRE_THROWS_AS(deep_ali_verify(bad, 2, vch), Error);
  }
}

TEST_CASE("tampered mask answer drives h1 far and gets rejected") {
  ToySetup s = toy();
  size_t rejected = 0, seeds = 10;
  for (uint64_t seed = 0; seed < seeds; ++seed) {
    Channel ch(100 + seed);
    AliTranscript t = deep_ali_prove(s.inst, s.wit, s.domain_f, s.domain_g, ch);
    // rebuild the sub-proofs as the cheating prover would after corrupting
    // one mask answer, keeping the channel messages intact
    std::map<uint32_t, FieldElement> amap;
    for (const auto& [p, v] : t.answers) amap.emplace(p.bits(), v);
    amap.begin()->second += s.inst.field.one();
    Evaluations h1 = quotient_multi(t.f, amap);
    FieldElement b = detail_ali::deduce_b(s.inst, t.alpha, t.z, amap);
    Evaluations h2 = quotient_single(t.g, t.z, b);
    DeepFriParams p1(s.inst.field, s.domain_f,
                     s.inst.degree_bound - s.inst.full_mask().size());
    DeepFriParams p2(s.inst.field, s.domain_g,
                     s.inst.degree_bound * s.inst.max_condition_degree() - 1);
    Channel ch1 = Channel(t.commit_seed).child("h1");
    Channel ch2 = Channel(t.commit_seed).child("h2");
    AliTranscript bad = t;
    bad.h1 = deep_commit(h1, p1, ch1);
    bad.h1.layers.erase(bad.h1.layers.begin());
    bad.h1.has_layer0 = false;
    bad.h2 = deep_commit(h2, p2, ch2);
    bad.h2.layers.erase(bad.h2.layers.begin());
    bad.h2.has_layer0 = false;
    size_t i = 0;
    for (auto& [p, v] : bad.answers) {
      (void)p;
      if (i++ == 0) v += s.inst.field.one();
    }
    Channel vch(700 + seed);
    if (!deep_ali_verify(bad, 8, vch).accepted) ++rejected;
  }
  REQUIRE(rejected >= 9);
}

TEST_CASE("soundness bound formula") {
  SECTION("hand substitution") {
    double got = ali_soundness_bound(10, 8, 2, 8, 65536, 0.01, 0.01);
    double expect = 0.02 + 2.0 * 100 * (16 + 8) / 65536.0;
    REQUIRE(std::abs(got - expect) <= 1e-15 * expect);
  }
  SECTION("no list term") {
    REQUIRE(ali_soundness_bound(0, 8, 2, 8, 65536, 0.03, 0.04) == 0.07);
  }
  SECTION("large field limit") {
    double got = ali_soundness_bound(10, 8, 2, 8, 1e18, 0.01, 0.02);
    REQUIRE(std::abs(got - 0.03) < 1e-9);
  }
}
