// End-to-end checks of the installed CLI binary via subprocesses.

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef CASIPOL_CLI_PATH
#error "CASIPOL_CLI_PATH must point at the casipol binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CASIPOL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

const char* kWallArgs =
    "wall-scan --var d --min 1e-3 --max 1e3 --count 7 --spacing log";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("identical specs produce byte-identical csv and json") {
  const RunResult a = run_cli(kWallArgs);
  const RunResult b = run_cli(kWallArgs);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.substr(0, 8) == "# spec: ");

  const std::string json_args = std::string(kWallArgs) + " --format json";
  const RunResult ja = run_cli(json_args);
  const RunResult jb = run_cli(json_args);
  CHECK(ja.exit_code == 0);
  CHECK(ja.out == jb.out);
  const nlohmann::json doc = nlohmann::json::parse(ja.out);
  CHECK(doc.at("schema_version") == "1");
  CHECK(doc.at("rows").size() == 7);
  for (const auto& row : doc.at("rows")) CHECK(row.at("force").get<double>() < 0.0);
}

TEST_CASE("echoed spec replays to identical bytes") {
  const RunResult first = run_cli(kWallArgs);
  REQUIRE(first.exit_code == 0);
  const std::string line = first.out.substr(0, first.out.find('\n'));
  const std::string spec_json = line.substr(std::string("# spec: ").size());
  const std::string cfg_path = "/tmp/casipol_replay_spec.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << spec_json;
  }
  const RunResult second = run_cli("wall-scan --config " + cfg_path);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
  std::remove(cfg_path.c_str());
}

TEST_CASE("command-line flags override config entries") {
  const std::string cfg_path = "/tmp/casipol_override_spec.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"quantity":"wall_force_ground","var":"d","min":1.0,"max":2.0,)"
        << R"("count":3,"spacing":"linear"})";
  }
  const RunResult r = run_cli("wall-scan --config " + cfg_path + " --count 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"count\":5") != std::string::npos);
  std::remove(cfg_path.c_str());
}

TEST_CASE("pair scan in the plate-removed limit") {
  const RunResult r = run_cli(
      "pair-scan --var rho --min 1 --max 10 --count 5 --spacing linear "
      "--fix z_a=1000 --fix z_b=1000 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  for (const auto& row : doc.at("rows")) {
    const double ratio =
        row.at("total").get<double>() / row.at("term_free").get<double>();
    CHECK(std::fabs(ratio - 1.0) < 1e-6);
  }
}

TEST_CASE("invalid specs exit with code 2") {
  CHECK(run_cli("wall-scan --count 1").exit_code == 2);
  CHECK(run_cli("wall-scan --var bogus").exit_code == 2);
  CHECK(run_cli("wall-scan --min 5 --max 1").exit_code == 2);
  CHECK(run_cli("wall-scan --fix d=oops").exit_code == 2);
  CHECK(run_cli("energy-scan --fix state=superposition").exit_code == 2);
  CHECK(run_cli("wall-scan --config /nonexistent/path.json").exit_code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli("").exit_code == 2);                // missing subcommand
  CHECK(run_cli("frobnicate").exit_code == 2);      // unknown subcommand
  const RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("wall-scan") != std::string::npos);
}

TEST_CASE("all grid points failing exits with code 3") {
  const RunResult r =
      run_cli("wall-scan --var d --min -2 --max -1 --count 3 --spacing linear");
  CHECK(r.exit_code == 3);
}

TEST_CASE("fluctuation report: experiment-scale scenario") {
  // T = 1e-5 s in reduced time units
  const RunResult text = run_cli("fluctuation-report --fix d=1 --fix T=2.99792458e9");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("regime: long_measurement") != std::string::npos);
  CHECK(text.out.find("not observable") != std::string::npos);

  const RunResult j =
      run_cli("fluctuation-report --fix d=1 --fix T=2.99792458e9 --format json");
  CHECK(j.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("regime") == "long_measurement");
  CHECK(doc.at("observable") == false);
  CHECK(doc.at("crossover_time").at("si_s").get<double>() ==
        doctest::Approx(3.33564095e-15).epsilon(1e-8));

  // short-measurement side: T = 1e-16 s
  const RunResult fast =
      run_cli("fluctuation-report --fix d=1 --fix T=0.0299792458 --format json");
  const nlohmann::json fdoc = nlohmann::json::parse(fast.out);
  CHECK(fdoc.at("regime") == "short_measurement");
  CHECK(fdoc.at("relative_fluctuation").at("lo").get<double>() > 1.0);

  // boundary: T = d/c exactly
  const RunResult mid = run_cli("fluctuation-report --fix d=1 --fix T=1 --format json");
  const nlohmann::json mdoc = nlohmann::json::parse(mid.out);
  CHECK(mdoc.at("regime") == "crossover");
}

TEST_CASE("selftest passes on a fresh build") {
  const RunResult r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("selftest catches a perturbed coefficient") {
  const RunResult r = run_cli("selftest --perturb \"on-plate coefficient\"");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL  on-plate coefficient") != std::string::npos);
}

TEST_CASE("energy scan with excited state") {
  const RunResult r = run_cli(
      "energy-scan --var d --min 0.5 --max 2 --count 3 --fix state=excited "
      "--format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("spec").at("state") == "excited");
  CHECK(doc.at("rows").size() == 3);
}

TEST_CASE("output bytes are independent of the kernel backend") {
  const std::string base = std::string(CASIPOL_CLI_PATH) + " " + kWallArgs + " 2>&1";
  const auto run_env = [&](const char* env) {
    FILE* pipe = popen((std::string(env) + " " + base).c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
    return out;
  };
  const std::string scalar_out = run_env("CASIPOL_BACKEND=scalar");
  const std::string avx2_out = run_env("CASIPOL_BACKEND=avx2");
  // if avx2 is unavailable the env override falls back to auto-detection,
  // which is scalar on such hosts, so equality must hold either way
  CHECK(scalar_out == avx2_out);
}

TEST_CASE("quantity override on a scan subcommand") {
  // fluctuation sweep through wall-scan, overriding the default quantity
  const RunResult r = run_cli(
      "wall-scan --quantity fluctuation --var T --min 0.1 --max 10 --count 5 "
      "--spacing log --fix d=1 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("spec").at("quantity") == "fluctuation");
  CHECK(doc.at("rows").front().at("regime") == "short_measurement");  // T << d
  CHECK(doc.at("rows").back().at("regime") == "long_measurement");

  // pair-force sweep with an explicit direction
  const RunResult pf = run_cli(
      "pair-scan --quantity pair_force --var rho --min 1 --max 2 --count 3 "
      "--fix z_a=1000 --fix z_b=1000 --fix dir_x=1 --format json");
  CHECK(pf.exit_code == 0);
  const nlohmann::json pdoc = nlohmann::json::parse(pf.out);
  for (const auto& row : pdoc.at("rows")) CHECK(row.at("force").get<double>() < 0.0);
}

TEST_CASE("output goes to --out path when given") {
  const std::string out_path = "/tmp/casipol_out_test.csv";
  const RunResult r = run_cli(std::string(kWallArgs) + " --out " + out_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line.substr(0, 8) == "# spec: ");
  in.close();
  std::remove(out_path.c_str());
}

}  // TEST_SUITE
