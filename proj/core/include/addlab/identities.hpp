#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "addlab/jfl.hpp"
#include "addlab/numeric.hpp"

namespace addlab::identities {

// Catalog ids accepted by verify_identity / discover_correction:
//   III, IV, V, VI, VII, VIII, IX, X, XI, XII, XIII, XV, XVIa, XVIb,
//   XIV_sum  (the squared-term sum),
//   GELIN, CATALAN, CASSINI.
// V and IX are the same statement reached two ways; both ids run the
// same checker so either spelling works. XII covers three printed
// product forms for the same left side; they are also addressable
// individually as XII_1, XII_2, XII_3 (discover_correction requires the
// individual form).
std::vector<std::string> identity_ids();

struct CaseResult {
  std::map<std::string, long long> binding;  // j plus whichever of n,m,r,a,b,c,d apply
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct IdentityReport {
  std::string id;
  std::string statement;  // checked form, human readable
  std::size_t evaluated = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;            // bindings outside the statement's own case conditions
  std::vector<CaseResult> cases;      // every evaluated binding, grid order
  std::vector<CaseResult> failures;   // capped at 32, enough to see the shape of a break
  bool all_pass() const { return failed == 0 && evaluated > 0; }
};

struct IndexRanges {
  long long j_lo = 1, j_hi = 5;
  long long n_lo = 2, n_hi = 12;
  // Secondary indices (m, r, and the a,b,c,d quadruples) are derived
  // from the n range; quadruples additionally satisfy a+b == c+d.
};

// Evaluates the identity exactly over the binding grid. Statements are
// checked as printed in the source material, misprints included, so a
// false printed form reports failures here and the correction search
// below is the tool that locates the fix.
IdentityReport verify_identity(const std::string& id, const IndexRanges& ranges = {});

// One candidate edit of a printed statement.
struct Variant {
  std::string description;  // e.g. "index shift -1 on subscript 2"
  std::string statement;
  bool is_printed_form = false;
};

struct CorrectionResult {
  enum class Status {
    PrintedFormHolds,   // nothing to correct
    UniqueCorrection,   // exactly one single-edit variant passes everywhere
    Ambiguous,          // several variants pass: reported, not chosen between
    NoneFound,          // no single edit rescues the statement
  };
  Status status;
  std::string id;
  Variant chosen;                      // meaningful for UniqueCorrection
  std::vector<Variant> passing;        // all passing variants (incl. printed form if it holds)
  std::size_t variants_tried = 0;
  std::size_t cases_per_variant = 0;   // >= 100 enforced
};

// Single-edit search: the variant space enumerates one sign flip per term
// and one +/-1 shift per subscript (plus, for statements whose printed
// defect is structural, the matching structural edit: dropping a spurious
// summand from one subscript, or squaring a lone factor). Variants are
// ranked only by "passes the whole grid"; two survivors mean Ambiguous.
CorrectionResult discover_correction(const std::string& id, const IndexRanges& ranges = {});

// Signed-index product comparison: for a+b == c+d,
//   F_a F_b - F_c F_d = (-1)^d F_{c-b} F_{c-a}.
// This is the shipped reference for the XVIa / XVIb family, whose
// printed sign rules fail; derived from XV with r = d and checked
// exhaustively in the tests.
BigInt xvi_reference(const JFLPair& pair, long long a, long long b, long long c, long long d);

// Exhaustive sign table over a small quadruple grid: one row per
// (a,b,c,d) with the exact value of F_aF_b - F_cF_d and the sign the
// reference formula predicts.
struct SignTableRow {
  long long a, b, c, d;
  BigInt difference;
  int predicted_sign;  // sign of (-1)^d F_{c-b} F_{c-a}
  bool match;
};
std::vector<SignTableRow> xvi_sign_table(long long j, long long max_index);

}  // namespace addlab::identities
