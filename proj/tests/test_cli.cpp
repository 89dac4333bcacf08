#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FRACLYAP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// canonical serialization rules of the eigen report, mirrored for the
// round-trip check
std::string canonical_report(const nlohmann::json& j) {
  std::string s = "{";
  s += "\"alpha\":" + fmt17(j.at("alpha").get<double>());
  s += ",\"beta\":" + fmt17(j.at("beta").get<double>());
  s += ",\"a\":" + fmt17(j.at("a").get<double>());
  s += ",\"b\":" + fmt17(j.at("b").get<double>());
  s += ",\"n\":" + std::to_string(j.at("n").get<long long>());
  s += ",\"mu_max\":" + fmt17(j.at("mu_max").get<double>());
  s += ",\"lambda_min\":" + fmt17(j.at("lambda_min").get<double>());
  s += ",\"eigen_bound\":" + fmt17(j.at("eigen_bound").get<double>());
  s += ",\"lyap_bound\":" + fmt17(j.at("lyap_bound").get<double>());
  s += std::string(",\"bound_satisfied\":") + (j.at("bound_satisfied").get<bool>() ? "true" : "false");
  s += ",\"refinement_gap\":" + fmt17(j.at("refinement_gap").get<double>());
  s += "}";
  return s;
}

}  // namespace

TEST_CASE("bound: classical values and exit code") {
  const CmdResult r = run_cli("bound --alpha 1 --beta 1 --a 0 --b 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lyapunov_bound    = 1\n") != std::string::npos);
  CHECK(r.out.find("eigen_lower_bound = 1\n") != std::string::npos);

  const CmdResult r2 = run_cli("bound --alpha 1 --beta 1 --a 0 --b 2");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("lyapunov_bound    = 0.5\n") != std::string::npos);
  CHECK(r2.out.find("eigen_lower_bound = 0.25\n") != std::string::npos);
}

TEST_CASE("bound: fractional value") {
  const CmdResult r = run_cli("bound --alpha 0.75 --beta 0.75 --a 0 --b 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.750823") != std::string::npos);
}

TEST_CASE("bound: inadmissible orders exit 2 naming the constraint") {
  const CmdResult r = run_cli("bound --alpha 0.5 --beta 0.5 --a 0 --b 1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("alpha+beta must exceed 1") != std::string::npos);
}

TEST_CASE("eigen: classical oracle through the JSON surface") {
  const CmdResult r = run_cli("eigen --alpha 1 --beta 1 --a 0 --b 1 --n 64 --json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j.at("lambda_min").get<double>() - 2.4674011002723397) <= 1e-6);
  CHECK(j.at("eigen_bound").get<double>() == 1.0);
  CHECK(j.at("bound_satisfied").get<bool>());
  CHECK(j.at("n").get<int>() == 64);
}

TEST_CASE("eigen: JSON round-trips byte for byte") {
  const CmdResult r = run_cli("eigen --alpha 0.9 --beta 0.95 --a 0 --b 1 --n 12 --json");
  std::string line = r.out;
  if (!line.empty() && line.back() == '\n') line.pop_back();
  const auto j = nlohmann::json::parse(line);
  CHECK(canonical_report(j) == line);
}

TEST_CASE("eigen: invalid orders exit 2") {
  const CmdResult r = run_cli("eigen --alpha 0.2 --beta 0.5 --a 0 --b 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("eigen: low-confidence corner exits 3") {
  const CmdResult r = run_cli("eigen --alpha 0.55 --beta 0.6 --a 0 --b 1 --n 16 --json");
  CHECK(r.exit_code == 3);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("refinement_gap").get<double>() > 1e-4);
  CHECK(j.at("bound_satisfied").get<bool>());
}

TEST_CASE("green: classical value, diagonal note, domain error") {
  const CmdResult r = run_cli("green --t 1 --r 0.3 --alpha 1 --beta 1 --a 0 --b 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("= 0.3") != std::string::npos);

  const CmdResult diag = run_cli("green --t 0.5 --r 0.5 --alpha 0.75 --beta 0.75 --a 0 --b 1");
  CHECK(diag.exit_code == 0);
  CHECK(diag.out.find("0.9417755") != std::string::npos);
  CHECK(diag.out.find("diagonal closed form") != std::string::npos);

  const CmdResult bad = run_cli("green --t 1.5 --r 0.3 --alpha 1 --beta 1 --a 0 --b 1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("sweep: header, order, footer and determinism") {
  const std::string flags =
      "sweep --alpha-min 0.9 --alpha-max 1.0 --alpha-step 0.05 "
      "--beta-min 0.9 --beta-max 1.0 --beta-step 0.05 --a 0 --b 1 --n 12";
  const CmdResult r = run_cli(flags);
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("alpha,beta,a,b,n,lambda_min,eigen_bound,ratio,refinement_gap,satisfied\n",
                    0) == 0);
  CHECK(r.out.find("# skipped=0\n") != std::string::npos);
  // 3x3 admissible rows, alpha-major ascending
  int rows = 0;
  std::size_t pos = r.out.find('\n') + 1;
  double prev_alpha = -1.0;
  while (pos < r.out.size()) {
    const std::size_t eol = r.out.find('\n', pos);
    const std::string line = r.out.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.rfind("#", 0) == 0) break;
    ++rows;
    const double alpha = std::strtod(line.c_str(), nullptr);
    CHECK(alpha >= prev_alpha);
    prev_alpha = alpha;
    CHECK(line.find(",true") != std::string::npos);
  }
  CHECK(rows == 9);

  const CmdResult again = run_cli(flags);
  CHECK(again.out == r.out);
}

TEST_CASE("sweep: empty admissible set exits 5") {
  const CmdResult r = run_cli(
      "sweep --alpha-min 0.3 --alpha-max 0.4 --alpha-step 0.05 "
      "--beta-min 0.3 --beta-max 0.4 --beta-step 0.05 --a 0 --b 1 --n 8");
  CHECK(r.exit_code == 5);
}

TEST_CASE("sweep: unwritable output path exits 4") {
  const CmdResult r = run_cli(
      "sweep --alpha-min 0.9 --alpha-max 0.95 --alpha-step 0.05 "
      "--beta-min 0.9 --beta-max 0.95 --beta-step 0.05 --a 0 --b 1 --n 8 "
      "--out /nonexistent-dir/rows.csv");
  CHECK(r.exit_code == 4);
}

TEST_CASE("sweep: file output matches stdout output") {
  const std::string flags =
      "sweep --alpha-min 0.95 --alpha-max 1.0 --alpha-step 0.05 "
      "--beta-min 0.95 --beta-max 1.0 --beta-step 0.05 --a 0 --b 1 --n 8";
  const CmdResult direct = run_cli(flags);
  REQUIRE(direct.exit_code == 0);
  const std::string path = "/tmp/fraclyap_sweep_test.csv";
  const CmdResult filed = run_cli(flags + " --out " + path);
  REQUIRE(filed.exit_code == 0);
  FILE* f = fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string content;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, f)) > 0) content.append(buf, got);
  fclose(f);
  std::remove(path.c_str());
  CHECK(content == direct.out);
}

TEST_CASE("missing subcommand or bad flags exit nonzero") {
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("bound --alpha 1").exit_code == 2);
  CHECK(run_cli("bogus --alpha 1").exit_code == 2);
}

TEST_CASE("sweep rows reuse the eigen code path verbatim") {
  const CmdResult eig = run_cli("eigen --alpha 1 --beta 1 --a 0 --b 1 --n 64 --json");
  REQUIRE(eig.exit_code == 0);
  const auto j = nlohmann::json::parse(eig.out);
  const std::string lambda17 = fmt17(j.at("lambda_min").get<double>());
  const CmdResult sw = run_cli(
      "sweep --alpha-min 1 --alpha-max 1 --alpha-step 0.05 "
      "--beta-min 1 --beta-max 1 --beta-step 0.05 --a 0 --b 1 --n 64");
  REQUIRE(sw.exit_code == 0);
  CHECK(sw.out.find("," + lambda17 + ",") != std::string::npos);
}

TEST_CASE("FRACLYAP_TOL is honored and validated") {
  const std::string tail =
      std::string(" green --t 0.7 --r 0.2 --alpha 0.7 --beta 0.8 --a 0 --b 1 2>&1");
  auto run_env = [&](const std::string& env) {
    const std::string cmd = env + " " + FRACLYAP_CLI_PATH + tail;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (fread(buf, 1, sizeof buf, pipe) > 0) {
    }
    return WEXITSTATUS(pclose(pipe));
  };
  CHECK(run_env("FRACLYAP_TOL=1e-6") == 0);
  CHECK(run_env("FRACLYAP_TOL=zzz") == 2);
  CHECK(run_env("FRACLYAP_TOL=1e-20") == 2);
}
