#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "addlab/numeric.hpp"
#include "addlab/polynomial.hpp"

namespace addlab::rulecore {

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One summand q * u[n - lag] of a recurrence.
struct RuleTerm {
  int lag = 0;
  Rational coeff = 1;
  bool operator==(const RuleTerm&) const = default;
};

// u_p = sum_j coeff_j * u_{p - lag_j}; lags strictly increasing, no zero
// coefficients, order = largest lag.
class RecurrenceRule {
 public:
  explicit RecurrenceRule(std::vector<RuleTerm> terms);

  // Unit coefficients on the given lag set.
  static RecurrenceRule unit(std::vector<int> lags);

  const std::vector<RuleTerm>& terms() const { return terms_; }
  int order() const { return terms_.back().lag; }
  bool integer_coeffs() const;
  bool positive_coeffs() const;

  bool operator==(const RecurrenceRule&) const = default;

 private:
  std::vector<RuleTerm> terms_;
};

// A contiguous run of exact terms; index(i) = start_index + i. Terms are
// rational so backward extension with non-unit trailing coefficients and
// rational rules stay exact; integer rules keep denominator 1 throughout.
struct ExactSequence {
  long long start_index = 1;
  std::vector<Rational> terms;

  long long index_of(std::size_t i) const { return start_index + static_cast<long long>(i); }
  bool all_integer() const;
};

// Grammar: rule := term ('+' term)* ; term := [coeff '*'] 'u[n-' lag ']'
// with coeff an integer or p/q rational (default 1) and lag >= 1.
// Duplicate lags merge by coefficient addition; a zero net coefficient is an
// error, as is any syntax violation (position reported).
RecurrenceRule parse_rule(const std::string& text);

// Canonical text: ascending lags, unit coefficients silent, rationals as
// p/q. parse_rule(render_rule(r)) == r.
std::string render_rule(const RecurrenceRule& rule);

// init followed by generated terms; count is the total length of the result
// (so count - init.size() terms are generated). init.size() >= order.
ExactSequence generate_terms(const RecurrenceRule& rule, const std::vector<Rational>& init,
                             std::size_t count);

// Prepends count back-solved terms: u_{p-i(m)} = (u_p - sum_{j<m} q_j u_{p-i(j)}) / q_m.
// Exact in rationals for any rule; stays integral when the largest-lag
// coefficient is +-1 and the inputs are integers.
ExactSequence backward_extend(const RecurrenceRule& rule, const std::vector<Rational>& init,
                              std::size_t count, long long init_start_index = 1);

// Consecutive-ratio limit via Aitken acceleration. Requires all-positive
// coefficients and an init with at least one nonzero term; throws RuleError
// after the iteration cap if ratios refuse to stabilize (init orthogonal to
// the dominant direction).
Real ratio_limit(const RecurrenceRule& rule, const std::vector<Rational>& init, const Real& tol,
                 std::size_t iteration_cap = 10000);

// x^n - sum_j q_j x^{n - i(j)}, n = order. Integer coefficients required.
IntPolynomial characteristic_polynomial(const RecurrenceRule& rule);

}  // namespace addlab::rulecore
