#pragma once

#include <string>
#include <vector>

#include "addlab/numeric.hpp"

namespace addlab::polyalgebra {

// One summand sign * Log[1/(x^e - c)]/Log(x) (orientation XMinusC) or
// sign * Log[1/(c - x^e)]/Log(x) (orientation CMinusX). The denominator is
// Log of the evaluation point itself, also when e > 1: catalog entries at
// power points enter through x = phi^e with e folded into the atom.
struct LogAtom {
  int sign = 1;                  // +1 or -1
  enum class Orientation { XMinusC, CMinusX } orientation = Orientation::XMinusC;
  Rational shift = 0;            // c
  unsigned power = 1;            // e, applied to x before shifting
};

struct LogExpr {
  std::vector<LogAtom> atoms;
};

// Signed sum of atom values at x. Throws std::domain_error naming the atom
// index when a Log argument is nonpositive (x <= 0, x = 1, or shift on the
// wrong side).
Real eval_log_expr(const LogExpr& expr, const Real& x);

// One verified identity of the logarithmic catalog.
struct CatalogEntry {
  std::string id;            // "alpha", "lucas-power n=4", "kbonacci n=3", ...
  std::string statement;     // human-readable restatement
  Real x;                    // evaluation point
  Rational expected;
  Real observed;
  Real residual;
  bool pass = false;
};

struct CatalogReport {
  std::vector<CatalogEntry> entries;
  unsigned digits = 0;
  Real tolerance;
  bool all_pass = false;
};

// Evaluates the whole catalog: the base equation Log[1/(x-1)]/Log(x) = k at
// phi_k (k = 1..5), the k-bonacci form Log[1/(2-x)]/Log(x) = n (n = 2..6),
// the golden-power one-offs, the Lucas-power family for n = 1..10, its
// silver-mean generalization (k = 2, 3; n = 1..6), and the labeled
// power-point entries alpha..tau. Failures are findings in the report, not
// exceptions.
CatalogReport verify_log_catalog(unsigned digits, const Real& tolerance);

}  // namespace addlab::polyalgebra
