// End-to-end runs of the addlab binary. The path arrives in ADDLAB_BIN
// (set by the test registration); every case shells out and inspects
// stdout plus the exit code.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string binary_path() {
  const char* p = std::getenv("ADDLAB_BIN");
  REQUIRE_MESSAGE(p != nullptr, "ADDLAB_BIN must point at the addlab binary");
  return p;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + binary_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("seq: csv output carries the exact terms") {
  RunResult r = run("seq --rule \"u[n-2]+u[n-3]\" --init 1,1,1 --count 10 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "index,value"));
  CHECK(contains(r.out, "# tool = addlab"));
  const char* expected[] = {"1,1", "2,1", "3,1", "4,2", "5,2",
                            "6,3", "7,4", "8,5", "9,7", "10,9"};
  for (const char* line : expected) CHECK(contains(r.out, std::string("\n") + line + "\n"));
}

TEST_CASE("seq: backward extension prepends indices at and below zero") {
  RunResult r = run("seq --rule \"u[n-1]+u[n-2]\" --init 1,1 --count 5 --backward 3 "
                    "--format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\n-2,-1\n"));
  CHECK(contains(r.out, "\n-1,1\n"));
  CHECK(contains(r.out, "\n0,0\n"));
  CHECK(contains(r.out, "\n5,5\n"));
}

TEST_CASE("roots: dominant root and ratio limit agree") {
  RunResult r = run("roots --lags 2,3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"tool\": \"addlab\""));
  CHECK(contains(r.out, "1.3247179572447"));
  CHECK(contains(r.out, "x^3 - x - 1"));
  CHECK(contains(r.out, "ratio_limit"));
}

TEST_CASE("psi: the printed k=4 m=4 member with its exact census") {
  RunResult r = run("psi --k 4 --m 4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "x^9 - 2x^4 - x^3 - x^2 - x - 1"));
  CHECK(contains(r.out, "\"product_form_matches\": true"));
  CHECK(contains(r.out, "\"has_minus_one\": false"));
  CHECK(contains(r.out, "\"matches_claim\": false"));
}

TEST_CASE("logcat: the catalog verifies end to end") {
  RunResult r = run("logcat");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"all_pass\": true"));
  CHECK(contains(r.out, "\"entry_count\": 45"));
}

TEST_CASE("identities verify: a sound identity passes its whole grid") {
  RunResult r = run("identities verify --id III --j 1:5 --n 2:20");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"all_pass\": true"));
  CHECK(contains(r.out, "\"failed\": 0"));
}

TEST_CASE("identities verify: the misprinted form fails as printed") {
  RunResult r = run("identities verify --id VI");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"all_pass\": false"));
}

TEST_CASE("identities correct: the misprint has a unique one-edit fix") {
  RunResult r = run("identities correct --id VI --n 2:21");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"status\": \"unique-correction\""));
  CHECK(contains(r.out, "(L[n-1] + L[n+1]) / (j^2+4)"));
}

TEST_CASE("triangles: delannoy csv rows") {
  RunResult r = run("triangles --which delannoy --rows 5 --cols 6 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "i,j,value"));
  CHECK(contains(r.out, "\n4,5,681\n"));
}

TEST_CASE("dynamics orbit: the weird orbit reports its equality classes") {
  RunResult r = run("dynamics orbit --lags 3,1 --a 13.0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"kind\": \"weird\""));
  CHECK(contains(r.out, "\"period\": 8"));
  CHECK(contains(r.out, "\"distinct\": 5"));
}

TEST_CASE("dynamics scan: transitions come out in parameter order") {
  RunResult r = run("dynamics scan --lags 3,1 --a 10.30:10.50:0.01 --refine 1e-4 "
                    "--format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "a,from_kind,from_period,to_kind,to_period"));
  CHECK(contains(r.out, "10.40"));  // the first bifurcation sits near 10.4039
  CHECK(contains(r.out, "fixed"));
}

TEST_CASE("dynamics collapse: csv profile") {
  RunResult r = run("dynamics collapse --lags 3,2 --a 15.4 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "a,collapsed,transient_length"));
  CHECK(contains(r.out, "15.4,true,"));
}

TEST_CASE("words gen: the three-letter system materializes") {
  RunResult r = run("words gen --init A,AB,CA --lags 2,3 --p 7 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "7,7,AABABCA"));
}

TEST_CASE("words freq: letter limits with the plastic length ratio") {
  RunResult r = run("words freq --init A,AB,CA --lags 2,3 --p-max 40");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"dominant_root\": \"1.32471795724474602596090885447809734073440405690"));
}

TEST_CASE("words permA: degree three") {
  RunResult r = run("words permA --n 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"perm\": [\n      1,\n      3,\n      2\n    ]"));
  CHECK(contains(r.out, "\"prime_m\": 2"));
  CHECK(contains(r.out, "\"term_index\": 4"));
}

TEST_CASE("equi: golden-ratio powers cluster, discrepancy reported") {
  RunResult r = run("equi --x 1.6180339887498948482 --n 30");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "star_discrepancy"));
  CHECK(contains(r.out, "\"proximity_searched\": false"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("seq --no-such-flag 1").exit_code == 2);
  CHECK(run("dynamics scan --lags 3,1 --a 10:bad:step --refine 1e-4").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("domain errors exit 1") {
  // lag pair must satisfy i > j >= 1
  CHECK(run("dynamics orbit --lags 1,3 --a 10").exit_code == 1);
  // malformed rule text is a module-level parse error
  CHECK(run("seq --rule \"u[n-\" --init 1 --count 3").exit_code == 1);
  // init outside ]0,1[
  CHECK(run("dynamics orbit --lags 3,1 --a 10 --init 0.5,-0.1,0.5").exit_code == 1);
}

TEST_CASE("byte-identical reruns for an identical config") {
  RunResult a = run("logcat --format csv");
  RunResult b = run("logcat --format csv");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult c = run("dynamics scan --lags 3,1 --a 10.3:10.5:0.01 --refine 1e-4");
  RunResult d = run("dynamics scan --lags 3,1 --a 10.3:10.5:0.01 --refine 1e-4");
  CHECK(c.out == d.out);
}

TEST_CASE("reports embed config echo, version, and precision") {
  RunResult r = run("psi --k 1 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"version\": \"0.1.0\""));
  CHECK(contains(r.out, "\"precision_digits\": 50"));
  CHECK(contains(r.out, "\"config\""));
  CHECK(contains(r.out, "\"k\": 1"));
  RunResult csv = run("psi --k 1 --m 2 --format csv");
  CHECK(contains(csv.out, "# version = 0.1.0"));
  CHECK(contains(csv.out, "# config.k = 1"));
}

TEST_CASE("the precision environment variable sets the default digit count") {
  RunResult r = run("roots --lags 1,2", "ADDLAB_PRECISION=20 ");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"precision_digits\": 20"));
  CHECK(contains(r.out, "1.6180339887498948482"));
  CHECK_FALSE(contains(r.out, "1.61803398874989484820458683436563811772030917980"));
  // an explicit flag beats the environment
  RunResult f = run("roots --lags 1,2 --digits 30", "ADDLAB_PRECISION=20 ");
  CHECK(contains(f.out, "\"precision_digits\": 30"));
}
