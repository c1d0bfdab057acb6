#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "deepfri/presets.hpp"
#include "deepfri/serialize.hpp"

using namespace deepfri;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return DEEPFRI_CLI_PATH; }

int run_cli(const std::string& args) {
  std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("deepfri_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cli: deep prove/verify round trip accepts honest input") {
  TempDir tmp;
  // build an honest input file for the r2-q16 preset
  DeepFriParams params = deep_preset("r2-q16");
  Channel gen(17);
  std::vector<FieldElement> coeffs;
  for (uint64_t i = 0; i < params.degree0; ++i) coeffs.push_back(gen.field_element(params.field));
  Evaluations f0 = encode(Polynomial(params.field, coeffs), params.base_domain);
  Json j = to_json(f0);
  j["field_n"] = params.field.n();
  std::ofstream(tmp.path / "f0.json") << j.dump(2);

  fs::path transcript = tmp.path / "t.json";
  REQUIRE(run_cli("deep-prove --preset r2-q16 --input " + (tmp.path / "f0.json").string() +
                  " --out " + transcript.string()) == 0);
  REQUIRE(run_cli("deep-verify --in " + transcript.string() + " --ell 8 --seed 7") == 0);

  SECTION("tampered transcript is rejected with exit 1") {
    Json tj;
    std::ifstream(transcript) >> tj;
    std::string final = tj.at("final").get<std::string>();
    final[0] = final[0] == '0' ? '1' : '0';
    tj["final"] = final;
    std::ofstream(tmp.path / "bad.json") << tj.dump(2);
    REQUIRE(run_cli("deep-verify --in " + (tmp.path / "bad.json").string() +
                    " --ell 4 --seed 7") == 1);
  }
}

TEST_CASE("cli: fri prove/verify with generated input") {
  TempDir tmp;
  fs::path transcript = tmp.path / "fri.json";
  REQUIRE(run_cli("fri-prove --preset r1-q8 --out " + transcript.string() + " --seed 5") == 0);
  REQUIRE(run_cli("fri-verify --in " + transcript.string() + " --ell 4 --seed 3") == 0);
}

TEST_CASE("cli: ali prove/verify on the squaring-chain instance") {
  TempDir tmp;
  AliFibPreset preset = ali_fib_preset();
  Json j;
  j["air"] = to_json(preset.air);
  Json trace = Json::array();
  for (const auto& row : preset.valid_trace) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell.to_hex());
    trace.push_back(r);
  }
  j["trace"] = trace;
  std::ofstream(tmp.path / "air.json") << j.dump(2);
  fs::path transcript = tmp.path / "ali.json";
  REQUIRE(run_cli("ali-prove --input " + (tmp.path / "air.json").string() + " --out " +
                  transcript.string() + " --seed 11") == 0);
  REQUIRE(run_cli("ali-verify --in " + transcript.string() + " --ell 8 --seed 13") == 0);
}

TEST_CASE("cli: identical invocations produce byte-identical outputs") {
  TempDir tmp;
  fs::path a = tmp.path / "a.json", b = tmp.path / "b.json";
  REQUIRE(run_cli("deep-prove --preset r1-q8 --out " + a.string() + " --seed 9") == 0);
  REQUIRE(run_cli("deep-prove --preset r1-q8 --out " + b.string() + " --seed 9") == 0);
  REQUIRE(slurp(a) == slurp(b));
  fs::path c1 = tmp.path / "c1.csv", c2 = tmp.path / "c2.csv";
  REQUIRE(run_cli("curves --rho 0.25 --rho 0.0625 --out " + c1.string()) == 0);
  REQUIRE(run_cli("curves --rho 0.25 --rho 0.0625 --out " + c2.string()) == 0);
  REQUIRE(slurp(c1) == slurp(c2));
}

TEST_CASE("cli: curves CSV carries the five labeled columns") {
  TempDir tmp;
  fs::path out = tmp.path / "curves.csv";
  REQUIRE(run_cli("curves --rho 0.25 --out " + out.string()) == 0);
  std::string text = slurp(out);
  REQUIRE(text.find("DEEP-FRI lower bound") != std::string::npos);
  REQUIRE(text.find("FRI initial lower bound") != std::string::npos);
  REQUIRE(text.find("0.75") != std::string::npos);
  REQUIRE(text.find("0.5") != std::string::npos);
}

TEST_CASE("cli: lab tightness emits the expected constants") {
  TempDir tmp;
  fs::path out = tmp.path / "report.csv";
  fs::path summary = tmp.path / "summary.json";
  REQUIRE(run_cli("lab tightness --n 4 --out " + out.string() + " --json-summary " +
                  summary.string()) == 0);
  std::string text = slurp(out);
  REQUIRE(text.find("1/2") != std::string::npos);
  Json sj;
  std::ifstream(summary) >> sj;
  REQUIRE(sj.at("summary").at("delta_max") == "3/4");
  REQUIRE(sj.at("pass") == true);
}

TEST_CASE("cli: exit codes for usage errors and guard trips") {
  REQUIRE(run_cli("no-such-subcommand") == 2);
  REQUIRE(run_cli("deep-verify") == 2);              // missing --in
  REQUIRE(run_cli("deep-prove --preset bogus --out /tmp/x.json") == 2);
  // dim 5 makes the sweep 2^(9*8) at n = 8: the guard refuses
  REQUIRE(run_cli("lab pretender --n 8 --dim 5 --out /tmp/x.csv") == 3);
}
