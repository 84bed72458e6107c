// End-to-end tests for the installed binary.  argv[1] is the binary path,
// argv[2] the fixtures directory; both are captured before doctest runs.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "logcurve/cli.hpp"
#include "logcurve/theta.hpp"

namespace {

std::string g_binary;
std::string g_fixtures;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

// Runs through /bin/sh; stderr is dropped so usage noise cannot leak into
// the captured report.
CliRun run_cli(const std::string& args) {
  CliRun r;
  std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

CliRun run_env(const std::string& env, const std::string& args) {
  CliRun r;
  std::string cmd = env + " " + g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

logcurve::jsonio::Json report_of(const CliRun& r) {
  return logcurve::jsonio::load_json_text(r.out);
}

}  // namespace

using logcurve::jsonio::Json;

TEST_CASE("every dispatch entry is a known command") {
  const std::vector<std::string> expected = {
      "cohomology",   "hom-sym",    "lfactor-kernel", "monodromy",
      "pairing",      "pole-order", "sl2",            "tate-group",
      "tate-isogeny", "tate-model", "theta-eval",     "theta-verify",
      "wm-check",
  };
  CHECK(logcurve::cli::command_names() == expected);
}

TEST_CASE("wm-check on the triangle curve passes") {
  CliRun r = run_cli("wm-check --input " + fixture("triangle.json"));
  CHECK(r.exit_code == 0);
  Json rep = report_of(r);
  CHECK(rep["command"] == "wm-check");
  CHECK(rep["verdict"] == "PASS");
  CHECK(rep["results"]["gr_dims"]["0"] == 1);
  CHECK(rep["results"]["gr_dims"]["2"] == 1);
  CHECK(rep["results"]["average_weight"] == "1");
  CHECK(rep["results"]["failures"].empty());
  CHECK(rep["input_digest"].get<std::string>().rfind("fnv1a:", 0) == 0);
}

TEST_CASE("wm-check accepts a bare filtered space") {
  CliRun r = run_cli("wm-check --input " + fixture("space_pass.json"));
  CHECK(r.exit_code == 0);
  CHECK(report_of(r)["verdict"] == "PASS");
}

TEST_CASE("a failing verdict exits 1 and names the graded piece") {
  CliRun r = run_cli("wm-check --input " + fixture("space_fail.json"));
  CHECK(r.exit_code == 1);
  Json rep = report_of(r);
  CHECK(rep["verdict"] == "FAIL");
  REQUIRE(!rep["results"]["failures"].empty());
  std::string first = rep["results"]["failures"][0];
  CHECK(first.find("gr_") != std::string::npos);
}

TEST_CASE("cohomology reports rank, divisors and the cycle pairing") {
  CliRun r = run_cli("cohomology --input " + fixture("square_rotated.json"));
  CHECK(r.exit_code == 0);
  Json res = report_of(r)["results"];
  CHECK(res["components"] == 4);
  CHECK(res["nodes"] == 4);
  CHECK(res["rank"] == 1);
  CHECK(res["gram"] == Json::parse(R"([["4"]])"));
  CHECK(res["gram_det"] == "4");
  CHECK(res["positive_definite"] == true);
  CHECK(res["log_pic_rank"] == 0);
}

TEST_CASE("monodromy on a curve includes the graded assembly") {
  CliRun r = run_cli("monodromy --input " + fixture("triangle.json"));
  CHECK(r.exit_code == 0);
  Json res = report_of(r)["results"];
  CHECK(res["dim"] == 2);
  CHECK(res["filtration"]["lo"] == -1);
  CHECK(res["filtration"]["hi"] == 2);
  CHECK(res["filtration"]["dims"] == Json::parse("[0,1,1,2]"));
  CHECK(res["frobenius_weights"]["0"] == 1);
  CHECK(res["frobenius_weights"]["2"] == 1);
  REQUIRE(res.contains("graded"));
  CHECK(res["graded"]["cycle_rank"] == 1);
  CHECK(res["graded"]["gram"] == Json::parse(R"([["3"]])"));
}

TEST_CASE("malformed node input exits 2 with the offending path") {
  CliRun r = run_cli("wm-check --input " + fixture("bad_node.json"));
  CHECK(r.exit_code == 2);
  Json rep = report_of(r);
  CHECK(!rep.contains("results"));
  CHECK(rep["error"]["type"] == "input_error");
  std::string msg = rep["error"]["message"];
  CHECK(msg.find("/nodes/1/head") != std::string::npos);
}

TEST_CASE("a missing input file exits 2") {
  CliRun r = run_cli("wm-check --input " + fixture("no_such_file.json"));
  CHECK(r.exit_code == 2);
  CHECK(report_of(r)["error"]["type"] == "input_error");
}

TEST_CASE("a missing required option names its path") {
  CliRun r = run_cli("pole-order --input " + fixture("space_pass.json"));
  CHECK(r.exit_code == 2);
  std::string msg = report_of(r)["error"]["message"];
  CHECK(msg.find("/options/r") != std::string::npos);
}

TEST_CASE("pole-order and lfactor-kernel agree on the fixture space") {
  CliRun r =
      run_cli("pole-order --input " + fixture("space_pass.json") + " --r 0");
  CHECK(r.exit_code == 0);
  CHECK(report_of(r)["results"]["order"] == 1);
  CliRun k = run_cli("lfactor-kernel --input " + fixture("space_pass.json"));
  CHECK(k.exit_code == 0);
  Json res = report_of(k)["results"];
  CHECK(res["degree"] == 1);
  CHECK(res["poly"] == Json::parse(R"(["1","-1"])"));
}

TEST_CASE("sl2 emits the completed triple with a PASS verdict") {
  CliRun r = run_cli("sl2 --input " + fixture("space_pass.json"));
  CHECK(r.exit_code == 0);
  Json rep = report_of(r);
  CHECK(rep["verdict"] == "PASS");
  CHECK(rep["results"]["h"] == Json::parse(R"([["-1","0"],["0","1"]])"));
}

TEST_CASE("theta-verify runs the exact identities") {
  CliRun fun = run_cli("theta-verify --identity functional --prec 9");
  CHECK(fun.exit_code == 0);
  CHECK(report_of(fun)["verdict"] == "PASS");
  CliRun tri = run_cli("theta-verify --identity triple --prec 9");
  CHECK(tri.exit_code == 0);
  CHECK(report_of(tri)["results"]["failures"].empty());
}

TEST_CASE("theta-verify numeric identities carry an approximate error") {
  CliRun r = run_cli(
      "theta-verify --identity cross --q 1/10 --a 2 --b 3 --t 5 --trunc 60");
  CHECK(r.exit_code == 0);
  Json rep = report_of(r);
  CHECK(rep["verdict"] == "PASS");
  CHECK(rep["results"]["approximate"] == true);
  CHECK(rep["results"]["max_error_approx"].get<double>() < 1e-20);

  CliRun m = run_cli(
      "theta-verify --identity multi --bases 2,3,6,1 --exponents=-1,-1,1,1 "
      "--q 1/7 --trunc 60");
  CHECK(m.exit_code == 0);
  CHECK(report_of(m)["results"]["c"] == 0);
}

TEST_CASE("theta-eval matches the library evaluation byte for byte") {
  CliRun r = run_cli("theta-eval --q 1/10 --t 2 --prec 60");
  CHECK(r.exit_code == 0);
  Json res = report_of(r)["results"];
  CHECK(res["approximate"] == true);
  logcurve::Flt direct = logcurve::theta::theta_numeric(
      logcurve::Rat(1, 10), logcurve::Rat(2), 60);
  CHECK(res["value_approx"] == logcurve::jsonio::flt_str(direct));
}

TEST_CASE("tate commands expose group, model and isogeny data") {
  CliRun g = run_cli("tate-group --k 5 --e 3 --a 2");
  CHECK(g.exit_code == 0);
  Json gres = report_of(g)["results"];
  CHECK(gres["order"] == 12);
  CHECK(gres["invariant_factors"] == Json::parse("[12]"));
  CHECK(gres["kernel_order"] == 2);

  CliRun m = run_cli("tate-model --n 3 --e 6 --k 2 --v 2");
  CHECK(m.exit_code == 0);
  Json mres = report_of(m)["results"];
  CHECK(mres["semistable"] == false);
  CHECK(mres["saturated"] == true);
  CHECK(mres["torsion_free"] == true);
  CHECK(mres["locus"]["at_node"] == false);
  CHECK(mres["locus"]["index"] == 1);

  CliRun i = run_cli("tate-isogeny --k 3 --e1 2 --e2 6");
  CHECK(i.exit_code == 0);
  Json ires = report_of(i)["results"];
  CHECK(ires["forward_kernel"] == 1);
  CHECK(ires["forward_cokernel"] == 3);
  CHECK(ires["backward_kernel"] == 3);
  CHECK(ires["backward_cokernel"] == 1);
}

TEST_CASE("hom-sym counts fixed morphisms from the symmetric power") {
  CliRun r = run_cli("hom-sym --k 2 --e 2 --t 2 --r 0 --json "
                     "'{\"dim\": 3, "
                     "\"frobenius\": [[\"1\",\"0\",\"0\"],[\"0\",\"2\",\"0\"],"
                     "[\"0\",\"0\",\"4\"]], "
                     "\"nilpotent\": [[\"0\",\"1\",\"0\"],[\"0\",\"0\",\"2\"],"
                     "[\"0\",\"0\",\"0\"]], "
                     "\"central_weight\": 2, \"field_size\": 2}'");
  CHECK(r.exit_code == 0);
  Json res = report_of(r)["results"];
  CHECK(res["dim"] == 1);
  CHECK(res["fixed_dim"] == 1);
}

TEST_CASE("pairing evaluates the inverse-Gram form on the triangle") {
  CliRun r = run_cli("pairing --input " + fixture("triangle.json") +
                     " --x 3 --y 1/2");
  CHECK(r.exit_code == 0);
  Json res = report_of(r)["results"];
  CHECK(res["value"] == "1/2");
  CHECK(res["cycle_matrix"] == Json::parse(R"([["0","3"],["0","0"]])"));
}

TEST_CASE("batch runs every job and aggregates the verdicts") {
  CliRun r = run_cli("batch --input " + fixture("manifest_three.json"));
  CHECK(r.exit_code == 0);
  Json rep = report_of(r);
  CHECK(rep["jobs"] == 3);
  REQUIRE(rep["reports"].size() == 3);
  for (const Json& job : rep["reports"]) CHECK(job["verdict"] == "PASS");
}

TEST_CASE("batch contains one job's failure without aborting the rest") {
  CliRun r = run_cli("batch --input " + fixture("manifest_mixed.json"));
  CHECK(r.exit_code == 1);
  Json rep = report_of(r);
  REQUIRE(rep["reports"].size() == 2);
  CHECK(rep["reports"][0]["error"]["type"] == "input_error");
  CHECK(rep["reports"][1]["verdict"] == "PASS");
}

TEST_CASE("an empty manifest is a successful no-op") {
  CliRun r = run_cli("batch --input " + fixture("manifest_empty.json"));
  CHECK(r.exit_code == 0);
  Json rep = report_of(r);
  CHECK(rep["jobs"] == 0);
  CHECK(rep["reports"].empty());
}

TEST_CASE("reports are byte-identical across runs") {
  std::string args = "cohomology --input " + fixture("square_rotated.json");
  CliRun a = run_cli(args);
  CliRun b = run_cli(args);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  CliRun c = run_cli("tate-model --n 5 --e 5");
  CliRun d = run_cli("tate-model --n 5 --e 5");
  CHECK(c.out == d.out);
}

TEST_CASE("timing is opt-in and sits outside the digested results") {
  std::string args = "wm-check --input " + fixture("triangle.json");
  CliRun plain = run_cli(args);
  CHECK(plain.out.find("timing_ms") == std::string::npos);
  CliRun timed = run_cli(args + " --timing");
  CHECK(timed.exit_code == 0);
  Json rep = report_of(timed);
  CHECK(rep.contains("timing_ms"));
  CHECK(!rep["results"].contains("timing_ms"));
}

TEST_CASE("--out writes the same bytes the terminal run prints") {
  std::string path = g_fixtures + "/../.out_report.json";
  CliRun direct = run_cli("wm-check --input " + fixture("triangle.json"));
  CliRun filed = run_cli("wm-check --input " + fixture("triangle.json") +
                         " --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string written;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) written.append(buf, n);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(written == direct.out);
}

TEST_CASE("the working precision honours its environment override") {
  CliRun r = run_env("LOGCURVE_PRECISION=192",
                     "theta-eval --q 1/10 --t 2 --prec 60");
  CHECK(r.exit_code == 0);
  CHECK(report_of(r)["results"]["approximate"] == true);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <binary> <fixtures-dir>\n");
    return 1;
  }
  g_binary = argv[1];
  g_fixtures = argv[2];
  logcurve::init_numeric_precision();
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
