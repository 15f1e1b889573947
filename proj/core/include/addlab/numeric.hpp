#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace addlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Software float with runtime-selected decimal precision. Expression
// templates are off so Real behaves like a plain value type.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Default working precision. Source constants carry at most 16 digits; 50
// leaves ample guard for residual checks at 1e-20.
inline constexpr unsigned kDefaultDigits = 50;

// Sets the decimal precision used by Reals *constructed* in this scope and
// restores the previous setting on exit. MPFR precision travels with each
// value, so results survive scope exit at full width.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~ScopedPrecision() { Real::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const BigInt& n) { return Real(n.str()); }

inline Real to_real(const Rational& q) {
  return to_real(numerator(q)) / to_real(denominator(q));
}

// Nearest integer, halves away from zero (matches the "nint" convention of
// the almost-integer checks; the sequences involved never hit exact halves).
inline BigInt nearest_int(const Real& x) {
  Real r = boost::multiprecision::floor(x + Real(0.5));
  return r.convert_to<BigInt>();  // exact: r is integral
}

// Aitken delta-squared extrapolation of the tail of a linearly convergent
// sequence. Returns the last well-defined extrapolant; falls back to the
// last raw term if every denominator degenerates (already-exact sequences).
Real aitken_limit(const std::vector<Real>& seq);

// Decimal string with the given significant digits (shortest round-trip
// formatting is not wanted here: reports pin digit counts explicitly).
std::string real_str(const Real& x, unsigned digits);

}  // namespace addlab
