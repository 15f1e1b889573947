#include <algorithm>
#include <set>
#include <string>

#include "addlab/identities.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace addlab;
using namespace addlab::identities;

namespace {

IdentityReport run(const std::string& id) { return verify_identity(id); }

}  // namespace

TEST_CASE("the id catalog is complete") {
  auto ids = identity_ids();
  std::set<std::string> s(ids.begin(), ids.end());
  for (const char* id : {"III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
                         "XII_1", "XII_2", "XII_3", "XIII", "XIV_sum", "XV", "XVIa", "XVIb",
                         "GELIN", "CATALAN", "CASSINI"})
    CHECK(s.count(id) == 1);
  CHECK_THROWS_AS(verify_identity("nope"), std::invalid_argument);
}

TEST_CASE("paired sequences: small values, zero anchors and signed indices") {
  JFLPair fib(1);
  CHECK(fib.fib(1) == 1);
  CHECK(fib.fib(2) == 1);
  CHECK(fib.fib(10) == 55);
  CHECK(fib.lucas(1) == 1);
  CHECK(fib.lucas(2) == 3);
  CHECK(fib.lucas(10) == 123);
  CHECK(fib.fib(0) == 0);
  CHECK(fib.lucas(0) == 2);
  CHECK(fib.fib(-5) == 5);
  CHECK(fib.fib(-6) == -8);

  JFLPair pell(2);
  CHECK(pell.fib(5) == 29);    // 1, 2, 5, 12, 29
  CHECK(pell.lucas(2) == 6);   // j, j^2+2
  CHECK(pell.lucas(0) == 2);
}

TEST_CASE("identities that hold as printed pass over the default grid") {
  struct Row {
    const char* id;
    std::size_t evaluated;
  };
  const Row rows[] = {
      {"III", 55},    {"IV", 605},     {"V", 605},     {"VIII", 605}, {"IX", 605},
      {"X", 55},      {"XI", 55},      {"XIII", 55},   {"XIV_sum", 55},
      {"GELIN", 55},  {"CATALAN", 275}, {"XV", 6160},  {"XII_1", 55}, {"XII_3", 55},
  };
  for (const auto& row : rows) {
    CAPTURE(row.id);
    IdentityReport rep = run(row.id);
    CHECK(rep.all_pass());
    CHECK(rep.evaluated == row.evaluated);
    CHECK(rep.failed == 0);
    CHECK(rep.cases.size() == rep.evaluated);
  }
}

TEST_CASE("the left side of each evaluated case is recomputed, not trusted") {
  IdentityReport rep = run("III");  // F[2n] = L[n] F[n]
  REQUIRE(!rep.cases.empty());
  JFLPair pair(rep.cases.front().binding.at("j"));
  for (const auto& c : rep.cases) {
    if (c.binding.at("j") != pair.j()) continue;
    long long n = c.binding.at("n");
    CHECK(c.lhs == Rational(pair.fib(2 * n)));
    CHECK(c.rhs == Rational(pair.lucas(n) * pair.fib(n)));
  }
}

TEST_CASE("misprinted statements fail as printed") {
  IdentityReport vi = run("VI");
  CHECK(vi.statement == "F[m+n] = (L[n-1] + L[n+1]) / (j^2+4)");
  CHECK(vi.evaluated == 605);
  CHECK(vi.failed == 605);
  CHECK(vi.failures.size() == 32);  // capped sample
  const CaseResult& first = vi.failures.front();
  CHECK(first.binding.at("j") == 1);
  CHECK(first.binding.at("m") == 2);
  CHECK(first.binding.at("n") == 2);
  CHECK(first.lhs == 3);
  CHECK(first.rhs == 1);

  IdentityReport vii = run("VII");
  CHECK(vii.evaluated == 55);
  CHECK(vii.failed == 55);
  CHECK(vii.failures.front().lhs == 14);
  CHECK(vii.failures.front().rhs == 4);

  IdentityReport cas = run("CASSINI");
  CHECK(cas.evaluated == 55);
  CHECK(cas.failed == 54);  // j=1, n=2 happens to satisfy the misprint
  CHECK(cas.passed == 1);
}

TEST_CASE("the three-form product identity fails only in its middle form") {
  IdentityReport rep = run("XII");
  CHECK(rep.evaluated == 165);
  CHECK(rep.passed == 110);
  CHECK(rep.failed == 55);
  for (const auto& f : rep.failures) CHECK(f.binding.at("form") == 2);
  CHECK(run("XII_2").failed == 55);
}

TEST_CASE("the quartic-product identity at j=1 evaluates to the constant 1") {
  // F[n]^4 - F[n+1] F[n-1] F[n+2] F[n-2] = (-1)^n (j^2-1) F[n]^2 + j^2:
  // at j=1 the right side collapses to 1 for every n.
  JFLPair fib(1);
  for (long long n = 2; n <= 20; ++n) {
    BigInt f = fib.fib(n);
    BigInt lhs = f * f * f * f -
                 fib.fib(n + 1) * fib.fib(n - 1) * fib.fib(n + 2) * fib.fib(n - 2);
    CHECK(lhs == 1);
  }
  IdentityReport rep = run("GELIN");
  for (const auto& c : rep.cases)
    if (c.binding.at("j") == 1) CHECK(c.rhs == 1);
}

TEST_CASE("conditional sign rules fail half of their own applicability domain") {
  for (const char* id : {"XVIa", "XVIb"}) {
    CAPTURE(id);
    IdentityReport rep = run(id);
    CHECK(rep.evaluated == 1200);
    CHECK(rep.passed == 600);
    CHECK(rep.failed == 600);
    CHECK(rep.skipped == 1200);  // bindings outside the stated min/parity condition
  }
}

TEST_CASE("correction search: unique single edits where one exists") {
  IndexRanges wide;
  wide.n_hi = 21;

  CorrectionResult vi = discover_correction("VI", wide);
  CHECK(vi.status == CorrectionResult::Status::UniqueCorrection);
  CHECK(vi.chosen.description == "left subscript m+n -> n");
  CHECK(vi.chosen.statement == "F[n] = (L[n-1] + L[n+1]) / (j^2+4)");
  CHECK(vi.variants_tried == 12);
  CHECK(vi.cases_per_variant == 2000);

  CorrectionResult vii = discover_correction("VII", wide);
  CHECK(vii.status == CorrectionResult::Status::UniqueCorrection);
  CHECK(vii.chosen.description == "sign flip on (j^2+4) F[n]^2");
  CHECK(vii.chosen.statement == "L[n]^2 - (j^2+4) F[n]^2 = 4 (-1)^n");

  CorrectionResult xii2 = discover_correction("XII_2", wide);
  CHECK(xii2.status == CorrectionResult::Status::UniqueCorrection);
  CHECK(xii2.chosen.description == "first inner subscript n+1 -> n+1-1");

  CorrectionResult cas = discover_correction("CASSINI", wide);
  CHECK(cas.status == CorrectionResult::Status::UniqueCorrection);
  CHECK(cas.chosen.description == "square the lone term");
  CHECK(cas.chosen.statement == "F[n-1] F[n+1] - F[n]^2 = (-1)^n");
}

TEST_CASE("correction search: printed forms that hold are left alone") {
  IndexRanges wide;
  wide.n_hi = 21;
  for (const char* id : {"III", "X"}) {
    CAPTURE(id);
    CorrectionResult r = discover_correction(id, wide);
    CHECK(r.status == CorrectionResult::Status::PrintedFormHolds);
    CHECK(r.chosen.is_printed_form);
  }
}

TEST_CASE("correction search: no single edit rescues the conditional sign rules") {
  for (const char* id : {"XVIa", "XVIb"}) {
    CAPTURE(id);
    CorrectionResult r = discover_correction(id);
    CHECK(r.status == CorrectionResult::Status::NoneFound);
    CHECK(r.passing.empty());
  }
}

TEST_CASE("correction search refuses underpowered grids and aggregate ids") {
  CHECK_THROWS_AS(discover_correction("XII"), std::invalid_argument);
  IndexRanges tiny;
  tiny.j_hi = 1;
  tiny.n_hi = 4;
  CHECK_THROWS_AS(discover_correction("VII", tiny), std::invalid_argument);
}

TEST_CASE("signed-index reference formula matches the raw differences everywhere") {
  JFLPair pell(2);
  CHECK(xvi_reference(pell, 4, 2, 5, 1) == -5);
  CHECK_THROWS_AS(xvi_reference(pell, 4, 2, 5, 2), std::invalid_argument);

  auto table = xvi_sign_table(2, 6);
  CHECK(table.size() == 80);
  for (const auto& row : table) {
    CAPTURE(row.a);
    CAPTURE(row.b);
    CAPTURE(row.c);
    CAPTURE(row.d);
    CHECK(row.match);
    BigInt ref = xvi_reference(pell, row.a, row.b, row.c, row.d);
    CHECK(row.difference == ref);
  }
}

TEST_CASE("custom ranges reshape the grid") {
  IndexRanges r;
  r.j_lo = 2;
  r.j_hi = 3;
  r.n_lo = 3;
  r.n_hi = 7;
  IdentityReport rep = verify_identity("III", r);
  CHECK(rep.evaluated == 10);  // 2 j-values x 5 n-values
  CHECK(rep.all_pass());
}
