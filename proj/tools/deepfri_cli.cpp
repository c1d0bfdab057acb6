// Command-line frontend: proving and verifying transcripts from JSON files,
// running the soundness-lab experiments, and emitting the threshold curves.
//
// Exit codes: 0 accept/success, 1 reject, 2 usage or configuration error,
// 3 brute-force guard tripped (DEEPFRI_GUARD_OVERRIDE=1 lifts the guards).

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "deepfri/deepfri.hpp"

namespace {

using namespace deepfri;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadArgument, "cannot open input file " + path);
  Json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kBadArgument, "cannot open output file " + path);
  out << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Evaluations read_or_generate_input(const std::optional<std::string>& input_path,
                                   const Field& field, const Subspace& domain,
                                   uint64_t degree_bound, uint64_t seed) {
  if (input_path) {
    Json j = read_json(*input_path);
    Field file_field(j.at("field_n").get<int>());
    DFRI_REQUIRE(file_field == field, ErrorCode::kBadArgument,
                 "input file field does not match the preset");
    Evaluations e = evaluations_from_json(field, j);
    DFRI_REQUIRE(e.domain() == domain, ErrorCode::kBadArgument,
                 "input domain does not match the preset");
    return e;
  }
  // No input file: commit to a random codeword derived from the seed.
  Channel gen(detail::splitmix64(seed ^ 0x696e707574ULL));
  std::vector<FieldElement> coeffs;
  for (uint64_t i = 0; i < degree_bound; ++i) coeffs.push_back(gen.field_element(field));
  std::cerr << "no --input given; committing to a random degree-" << (degree_bound - 1)
            << " codeword derived from seed " << seed << "\n";
  return encode(Polynomial(field, coeffs), domain);
}

int run_fri_prove(const std::string& preset, const std::optional<std::string>& input,
                  const std::string& out, uint64_t seed) {
  FriParams params = fri_preset(preset);
  Evaluations f0 = read_or_generate_input(input, params.field, params.base_domain,
                                          params.degree0(), seed);
  Channel ch(seed);
  FriTranscript t = fri_commit(f0, params, ch);
  write_text(out, to_json(t).dump(2) + "\n");
  std::cerr << "wrote transcript with " << t.layers.size() << " layers to " << out << "\n";
  return 0;
}

int run_fri_verify(const std::string& in, size_t ell, uint64_t seed) {
  FriTranscript t = fri_transcript_from_json(read_json(in));
  Channel ch(seed);
  FriVerdict v = fri_verify(t, ell, ch);
  Rational exact = fri_exact_accept(t);
  std::cout << (v.accepted ? "accept" : "reject") << " (" << ell
            << " repetitions; exact single-repetition acceptance " << to_string(exact)
            << ")\n";
  return v.accepted ? 0 : 1;
}

int run_deep_prove(const std::string& preset, const std::optional<std::string>& input,
                   const std::string& out, uint64_t seed) {
  DeepFriParams params = deep_preset(preset);
  Evaluations f0 = read_or_generate_input(input, params.field, params.base_domain,
                                          params.degree0, seed);
  Channel ch(seed);
  DeepFriTranscript t = deep_commit(f0, params, ch);
  write_text(out, to_json(t).dump(2) + "\n");
  std::cerr << "wrote transcript with " << params.rounds() << " rounds to " << out << "\n";
  return 0;
}

int run_deep_verify(const std::string& in, size_t ell, uint64_t seed) {
  DeepFriTranscript t = deep_transcript_from_json(read_json(in));
  Channel ch(seed);
  DeepVerdict v = deep_verify(t, ell, ch);
  Rational exact = deep_exact_accept(t);
  std::cout << (v.accepted ? "accept" : "reject") << " (" << ell
            << " repetitions; exact single-repetition acceptance " << to_string(exact)
            << ")\n";
  return v.accepted ? 0 : 1;
}

int run_ali_prove(const std::string& input, const std::string& out, uint64_t seed,
                  int rate_log, bool pointwise) {
  Json j = read_json(input);
  std::optional<AprInstance> inst;
  std::optional<AprWitness> wit;
  if (j.contains("apr")) {
    inst = apr_instance_from_json(j.at("apr"));
    wit = AprWitness{polynomial_from_json(inst->field, j.at("witness"))};
  } else {
    DFRI_REQUIRE(j.contains("air"), ErrorCode::kBadArgument,
                 "instance file needs an 'air' or 'apr' object");
    AirInstance air = air_instance_from_json(j.at("air"));
    std::vector<std::vector<FieldElement>> trace;
    for (const auto& row : j.at("trace")) {
      std::vector<FieldElement> r;
      for (const auto& cell : row) r.push_back(element_from_json(air.field, cell));
      trace.push_back(std::move(r));
    }
    auto [i2, w2] = air_to_apr(air, trace);
    inst = std::move(i2);
    wit = std::move(w2);
  }
  auto [df, dg] = make_ali_domains(*inst, rate_log);
  Channel ch(seed);
  AliTranscript t = deep_ali_prove(*inst, *wit, df, dg, ch,
                                   pointwise ? AliProverMode::kPointwiseRatio
                                             : AliProverMode::kHonest);
  write_text(out, to_json(t).dump(2) + "\n");
  std::cerr << "wrote constraint-protocol transcript to " << out << "\n";
  return 0;
}

int run_ali_verify(const std::string& in, size_t ell, uint64_t seed) {
  AliTranscript t = ali_transcript_from_json(read_json(in));
  Channel ch(seed);
  AliVerdict v = deep_ali_verify(t, ell, ch);
  std::cout << (v.accepted ? "accept" : "reject") << " (" << ell << " repetitions)\n";
  return v.accepted ? 0 : 1;
}

int run_curves(std::vector<double> rhos, const std::string& out,
               const std::optional<std::string>& summary_path) {
  if (rhos.empty()) rhos = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2};
  CurveTable table = soundness_curves(rhos);
  ExperimentReport rep;
  rep.name = "curves";
  rep.columns = {"rho"};
  for (const char* label : CurveTable::kLabels) rep.columns.push_back(label);
  rep.columns.push_back("clamped");
  for (const auto& row : table.rows) {
    std::vector<std::string> cells = {fmt_double(row.rho)};
    std::string clamped;
    for (size_t i = 0; i < row.values.size(); ++i) {
      cells.push_back(fmt_double(row.values[i]));
      if (row.clamped[i]) {
        if (!clamped.empty()) clamped += ";";
        clamped += CurveTable::kLabels[i];
      }
    }
    cells.push_back(clamped);
    rep.rows.push_back(std::move(cells));
  }
  rep.summary = {{"rows", std::to_string(table.rows.size())}};
  std::ostringstream os;
  rep.write_csv(os);
  write_text(out.empty() ? rep.default_filename("csv") : out, os.str());
  if (summary_path) write_text(*summary_path, summary_json(rep).dump(2) + "\n");
  return 0;
}

ExperimentReport tightness_report(int n, uint64_t seed) {
  TightnessPair tp = tightness_pair(n);
  ExperimentReport rep;
  rep.name = "tightness";
  rep.seed = seed;
  rep.params = {{"n", std::to_string(n)},
                {"degree_bound", std::to_string(tp.params.degree_bound)}};
  rep.columns = {"x", "witness_distance", "witness_roots", "measured_delta_x"};
  bool measurable = n <= 5;  // the q^d sweep is 2^25 already at n = 5
  std::optional<WtaProfile> profile;
  if (measurable) {
    // deliberate exhaustive measurement; a shade over the accident guard at n=5
    guards::ScopedOverride lift;
    profile = wta_profile(tp.u_star, tp.u, tp.params);
  }
  bool pass = true;
  for (const auto& [x, vx] : tp.witnesses) {
    Evaluations wx = encode(vx, tp.params.domain);
    uint64_t roots = 0;
    for (size_t y = 0; y < wx.size(); ++y) {
      FieldElement uxy = tp.u_star[y] + x * tp.u[y];
      roots += (uxy == wx[y]) ? 1 : 0;
    }
    Rational wd(static_cast<long long>(wx.size() - roots),
                static_cast<long long>(wx.size()));
    pass = pass && wd == Rational(1, 2) && roots == (uint64_t{1} << (n - 1));
    rep.rows.push_back({x.to_hex(), to_string(wd), std::to_string(roots),
                        profile ? to_string(profile->delta_x[x.bits()]) : "-"});
  }
  if (profile) {
    pass = pass && profile->delta_x[0] == Rational(3, 4) &&
           profile->slope_distance == Rational(3, 4) &&
           profile->delta_max == Rational(3, 4);
    rep.summary = {{"delta_max", to_string(profile->delta_max)},
                   {"dist_u_star", to_string(profile->delta_x[0])},
                   {"dist_u", to_string(profile->slope_distance)}};
  } else {
    rep.summary = {{"delta_max", "not measured (enumeration too large)"}};
  }
  rep.pass = pass;
  return rep;
}

ExperimentReport subspace_tightness_report(int n, int dim, uint64_t seed) {
  SubspaceTightness st = subspace_tightness_pair(n, dim);
  WtaProfile profile = wta_profile(st.u_star, st.u, st.params);
  ExperimentReport rep;
  rep.name = "subspace_tightness";
  rep.seed = seed;
  rep.params = {{"n", std::to_string(n)}, {"dim", std::to_string(dim)}};
  rep.columns = {"x", "in_bad_set", "measured_delta_x"};
  bool pass = true;
  for (uint64_t xb = 0; xb < st.field.size(); ++xb) {
    bool in_a = false;
    for (const auto& a : st.bad_set) in_a = in_a || a.bits() == xb;
    if (in_a) pass = pass && profile.delta_x[xb] <= Rational(1, 2);
    rep.rows.push_back({st.field.element(xb).to_hex(), in_a ? "1" : "0",
                        to_string(profile.delta_x[xb])});
  }
  rep.summary = {
      {"bad_set_size", std::to_string(st.bad_set.size())},
      {"bad_fraction", to_string(Rational(static_cast<long long>(st.bad_set.size()),
                                          static_cast<long long>(st.field.size())))},
      {"delta_max", to_string(profile.delta_max)},
      {"mean_delta", to_string(profile.mean)}};
  rep.pass = pass;
  return rep;
}

ExperimentReport pretender_report(int n, int dim, const std::string& adversary,
                                  uint64_t seed) {
  SubspaceTightness st = subspace_tightness_pair(n, dim);
  // a z coset clear of the evaluation domain
  Field f = st.field;
  std::vector<FieldElement> basis = {f.element(1), f.element(2)};
  FieldElement shift = f.element(uint32_t{1} << (dim + 1));
  Subspace z_domain(f, basis, shift);
  LineAdversary adv = adversary == "pretender-pair-line" ? LineAdversary::kPretenderPair
                                                         : LineAdversary::kConstantPair;
  PretenderResult r = deep_pretender_experiment(st.u_star, st.u, st.params, adv, z_domain);
  ExperimentReport rep;
  rep.name = "pretender";
  rep.seed = seed;
  rep.params = {{"n", std::to_string(n)},
                {"dim", std::to_string(dim)},
                {"adversary", adversary_name(adv)}};
  rep.columns = {"z", "x", "conditioned_distance", "unconditioned_distance"};
  for (const auto& row : r.rows) {
    rep.rows.push_back({row.z.to_hex(), row.x.to_hex(), to_string(row.conditioned),
                        to_string(r.profile.delta_x[row.x.bits()])});
  }
  rep.summary = {{"conditioned_mean", to_string(r.conditioned_mean)},
                 {"unconditioned_mean", to_string(r.unconditioned_mean)},
                 {"gap", to_string(r.gap)}};
  rep.pass = r.conditioned_mean > r.unconditioned_mean;
  return rep;
}

ExperimentReport gl_deep_report(uint64_t seed, const std::string& adversary) {
  Field f(4);
  size_t k = 2, n = 4;
  std::vector<std::vector<FieldElement>> gen(k, std::vector<FieldElement>(n, f.zero()));
  for (size_t j = 0; j < n; ++j) {
    gen[0][j] = f.one();
    gen[1][j] = f.element(static_cast<uint32_t>(j + 1));
  }
  GeneralLinearCode code(f, gen);
  Channel ch(seed);
  std::vector<std::vector<FieldElement>> s_points;
  for (int i = 0; i < 6; ++i) {
    std::vector<FieldElement> p = {ch.field_element(f), ch.field_element(f)};
    if (p[0].is_zero() && p[1].is_zero()) p[0] = f.one();
    s_points.push_back(p);
  }
  std::vector<FieldElement> us, u;
  for (size_t j = 0; j < n; ++j) {
    us.push_back(ch.field_element(f));
    u.push_back(ch.field_element(f));
  }
  LineAdversary adv = adversary == "pretender-pair-line" ? LineAdversary::kPretenderPair
                                                         : LineAdversary::kConstantPair;
  GlDeepResult r = gl_deep_experiment(code, s_points, us, u, adv);
  ExperimentReport rep;
  rep.name = "gl_deep";
  rep.seed = seed;
  rep.params = {{"k", "2"},
                {"n", "4"},
                {"adversary", adversary_name(adv)},
                {"sigma_S", std::to_string(r.sigma)},
                {"S_degenerate", r.s_degenerate ? "1" : "0"}};
  rep.columns = {"z_index", "x", "conditioned_distance", "empty_subcode"};
  for (const auto& row : r.rows) {
    rep.rows.push_back({std::to_string(row.z_index), row.x.to_hex(),
                        to_string(row.conditioned), row.empty_subcode ? "1" : "0"});
  }
  rep.summary = {{"conditioned_mean", to_string(r.conditioned_mean)},
                 {"unconditioned_mean", to_string(r.unconditioned_mean)},
                 {"gap", to_string(r.gap)},
                 {"sigma_S", std::to_string(r.sigma)}};
  rep.pass = r.conditioned_mean >= r.unconditioned_mean;
  return rep;
}

ExperimentReport one_and_half_report(uint64_t seed, size_t trials, double delta_d,
                                     double eps_d) {
  Field f(4);
  Subspace d = Subspace::full_field(f);
  RsParams code(f, d, 2);
  Rational delta(static_cast<long long>(delta_d * 1024), 1024);
  Rational eps(static_cast<long long>(eps_d * 1024), 1024);
  ExperimentReport rep;
  rep.name = "one_and_half";
  rep.seed = seed;
  rep.params = {{"q", "16"},
                {"domain", "16"},
                {"d", "2"},
                {"delta", to_string(delta)},
                {"eps", to_string(eps)}};
  rep.columns = {"trial", "applicable", "bad_count", "bound", "ok", "note"};
  Channel ch(seed);
  size_t applicable = 0;
  bool pass = true;
  for (size_t trial = 0; trial < trials; ++trial) {
    std::vector<FieldElement> a, b;
    for (uint64_t i = 0; i < d.size(); ++i) {
      a.push_back(ch.field_element(f));
      b.push_back(ch.field_element(f));
    }
    OneAndHalfResult r =
        check_one_and_half(Evaluations(d, a), Evaluations(d, b), code, delta, eps);
    if (r.applicable) {
      ++applicable;
      pass = pass && r.count_ok;
    }
    rep.rows.push_back({std::to_string(trial), r.applicable ? "1" : "0",
                        std::to_string(r.bad_count), to_string(r.bound),
                        r.applicable ? (r.count_ok ? "1" : "0") : "-",
                        r.applicable ? "" : r.skip_reason});
  }
  rep.summary = {{"applicable", std::to_string(applicable)},
                 {"violations", pass ? "0" : ">0"}};
  rep.pass = pass;
  return rep;
}

int emit_report(const ExperimentReport& rep, std::string out,
                const std::optional<std::string>& summary_path) {
  if (out.empty()) out = rep.default_filename("csv");
  std::ostringstream os;
  rep.write_csv(os);
  write_text(out, os.str());
  if (summary_path) write_text(*summary_path, summary_json(rep).dump(2) + "\n");
  std::cout << rep.name << ": " << (rep.pass ? "pass" : "FAIL") << "; " << rep.rows.size()
            << " rows -> " << out << "\n";
  for (const auto& [k, v] : rep.summary) std::cout << "  " << k << " = " << v << "\n";
  return rep.pass ? 0 : 1;
}

int real_main(int argc, char** argv) {
  CLI::App app{"proximity-testing toolkit: folding-based low-degree tests with "
               "out-of-domain sampling, a constraint-system IOP, and a brute-force "
               "soundness lab"};
  app.require_subcommand(1);

  std::string preset = "r2-q16";
  std::optional<std::string> input;
  std::string in_file, out_file;
  std::optional<std::string> summary_path;
  uint64_t seed = 0;
  size_t ell = 8;
  int rate_log = 2;
  bool pointwise = false;

  auto* fri_prove = app.add_subcommand("fri-prove", "commit a word under plain folding");
  fri_prove->add_option("--preset", preset, "parameter preset (rX-qY)");
  fri_prove->add_option("--input", input, "input oracle JSON (random codeword if absent)");
  fri_prove->add_option("--out", out_file, "transcript output path")->required();
  fri_prove->add_option("--seed", seed, "channel seed");

  auto* fri_ver = app.add_subcommand("fri-verify", "verify a plain-folding transcript");
  fri_ver->add_option("--in", in_file, "transcript path")->required();
  fri_ver->add_option("--ell", ell, "query repetitions");
  fri_ver->add_option("--seed", seed, "query channel seed");

  auto* deep_prove =
      app.add_subcommand("deep-prove", "commit a word with out-of-domain rounds");
  deep_prove->add_option("--preset", preset, "parameter preset (rX-qY)");
  deep_prove->add_option("--input", input, "input oracle JSON (random codeword if absent)");
  deep_prove->add_option("--out", out_file, "transcript output path")->required();
  deep_prove->add_option("--seed", seed, "channel seed");

  auto* deep_ver = app.add_subcommand("deep-verify", "verify an out-of-domain transcript");
  deep_ver->add_option("--in", in_file, "transcript path")->required();
  deep_ver->add_option("--ell", ell, "query repetitions");
  deep_ver->add_option("--seed", seed, "query channel seed");

  auto* ali_prove = app.add_subcommand("ali-prove", "run the constraint-system prover");
  ali_prove->add_option("--input", in_file, "instance JSON ({air,trace} or {apr,witness})")
      ->required();
  ali_prove->add_option("--out", out_file, "transcript output path")->required();
  ali_prove->add_option("--seed", seed, "channel seed");
  ali_prove->add_option("--rate-log", rate_log, "log2 of 1/rate (default 2)");
  ali_prove->add_flag("--pointwise", pointwise,
                      "evaluate the composition pointwise (scripted cheating prover)");

  auto* ali_ver = app.add_subcommand("ali-verify", "verify a constraint-system transcript");
  ali_ver->add_option("--in", in_file, "transcript path")->required();
  ali_ver->add_option("--ell", ell, "query repetitions");
  ali_ver->add_option("--seed", seed, "query channel seed");

  std::vector<double> rhos;
  auto* curves = app.add_subcommand("curves", "emit the soundness-threshold curves");
  curves->add_option("--rho", rhos, "rate values (repeatable; default the standard grid)");
  curves->add_option("--out", out_file, "CSV output path");
  curves->add_option("--json-summary", summary_path, "summary JSON path");

  auto* lab = app.add_subcommand("lab", "soundness-lab experiments");
  lab->require_subcommand(1);
  int n = 4, dim = 3;
  size_t trials = 200;
  double delta_opt = 1.0 / 16, eps_opt = 0.5;
  std::string adversary = "constant-line";

  auto* lab_tightness = lab->add_subcommand("tightness", "worst-to-average tight pair");
  lab_tightness->add_option("--n", n, "field bits (4..8)");
  lab_tightness->add_option("--out", out_file, "CSV output path");
  lab_tightness->add_option("--json-summary", summary_path, "summary JSON path");
  lab_tightness->add_option("--seed", seed, "report seed tag");

  auto* lab_sub = lab->add_subcommand("subspace-tightness", "subspace-domain variant");
  lab_sub->add_option("--n", n, "field bits");
  lab_sub->add_option("--dim", dim, "domain dimension minus one");
  lab_sub->add_option("--out", out_file, "CSV output path");
  lab_sub->add_option("--json-summary", summary_path, "summary JSON path");
  lab_sub->add_option("--seed", seed, "report seed tag");

  auto* lab_pret = lab->add_subcommand("pretender", "out-of-domain pretender elimination");
  lab_pret->add_option("--n", n, "field bits");
  lab_pret->add_option("--dim", dim, "domain dimension minus one");
  lab_pret->add_option("--adversary", adversary, "constant-line | pretender-pair-line");
  lab_pret->add_option("--out", out_file, "CSV output path");
  lab_pret->add_option("--json-summary", summary_path, "summary JSON path");
  lab_pret->add_option("--seed", seed, "report seed tag");

  auto* lab_gl = lab->add_subcommand("gl-deep", "general-linear-code variant");
  lab_gl->add_option("--adversary", adversary, "constant-line | pretender-pair-line");
  lab_gl->add_option("--seed", seed, "point-set seed");
  lab_gl->add_option("--out", out_file, "CSV output path");
  lab_gl->add_option("--json-summary", summary_path, "summary JSON path");

  auto* lab_oah = lab->add_subcommand("one-and-half", "bad-x counting suite");
  lab_oah->add_option("--trials", trials, "number of random instances");
  lab_oah->add_option("--delta", delta_opt, "distance threshold");
  lab_oah->add_option("--eps", eps_opt, "epsilon");
  lab_oah->add_option("--seed", seed, "instance seed");
  lab_oah->add_option("--out", out_file, "CSV output path");
  lab_oah->add_option("--json-summary", summary_path, "summary JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage/config errors map to exit code 2
  }

  if (fri_prove->parsed()) return run_fri_prove(preset, input, out_file, seed);
  if (fri_ver->parsed()) return run_fri_verify(in_file, ell, seed);
  if (deep_prove->parsed()) return run_deep_prove(preset, input, out_file, seed);
  if (deep_ver->parsed()) return run_deep_verify(in_file, ell, seed);
  if (ali_prove->parsed()) return run_ali_prove(in_file, out_file, seed, rate_log, pointwise);
  if (ali_ver->parsed()) return run_ali_verify(in_file, ell, seed);
  if (curves->parsed()) return run_curves(rhos, out_file, summary_path);
  if (lab_tightness->parsed())
    return emit_report(tightness_report(n, seed), out_file, summary_path);
  if (lab_sub->parsed())
    return emit_report(subspace_tightness_report(n, dim, seed), out_file, summary_path);
  if (lab_pret->parsed())
    return emit_report(pretender_report(n, dim, adversary, seed), out_file, summary_path);
  if (lab_gl->parsed())
    return emit_report(gl_deep_report(seed, adversary), out_file, summary_path);
  if (lab_oah->parsed())
    return emit_report(one_and_half_report(seed, trials, delta_opt, eps_opt), out_file,
                       summary_path);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return real_main(argc, argv);
  } catch (const deepfri::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == deepfri::ErrorCode::kSearchSpaceTooLarge ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
