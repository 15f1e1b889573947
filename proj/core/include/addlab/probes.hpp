#pragma once

#include <optional>
#include <string>
#include <vector>

#include "addlab/numeric.hpp"

namespace addlab::polyalgebra {

// frac(x^n) for n = 1..N with star-discrepancy estimate, plus the proximity
// search |frac(x^n) - frac(y^n)| < epsilon when y is given. Pisot points
// (golden ratio and friends) drive frac toward {0,1}; equidistributed points
// keep the discrepancy shrinking.
struct FracProbeReport {
  std::vector<Real> fracs;            // frac(x^n), n = 1..N
  Real star_discrepancy;
  // least n with |frac(x^n) - frac(y^n)| < epsilon, when y was supplied
  std::optional<std::size_t> proximity_hit;
  bool proximity_searched = false;
  unsigned digits_used = 0;
};

// Required decimal digits: N * log10(max(x,y)) + 15 guard digits. The probe
// refuses (std::invalid_argument) when the supplied precision is below the
// requirement instead of emitting garbage fractional parts.
unsigned frac_probe_required_digits(const Real& x, const Real* y, std::size_t N);

FracProbeReport power_frac_probe(const Real& x, const Real* y, std::size_t N,
                                 const Real& epsilon, unsigned digits);

// Star discrepancy D*_N of points in [0,1[: max over the sorted sample of
// max(i/N - u_(i), u_(i) - (i-1)/N).
Real star_discrepancy(std::vector<Real> points);

}  // namespace addlab::polyalgebra
