#include "addlab/probes.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace addlab::polyalgebra {

using boost::multiprecision::abs;
using boost::multiprecision::floor;
using boost::multiprecision::log10;

unsigned frac_probe_required_digits(const Real& x, const Real* y, std::size_t N) {
  Real m = x;
  if (y && *y > m) m = *y;
  if (m <= 1) return 15 + 2;
  Real need = Real(static_cast<unsigned long>(N)) * log10(m) + 15;
  return static_cast<unsigned>(static_cast<long>(floor(need))) + 2;
}

Real star_discrepancy(std::vector<Real> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("star discrepancy of an empty sample");
  std::sort(points.begin(), points.end());
  Real best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const Real& u = points[i - 1];
    Real a = Real(static_cast<unsigned long>(i)) / Real(static_cast<unsigned long>(n)) - u;
    Real b = u - Real(static_cast<unsigned long>(i - 1)) / Real(static_cast<unsigned long>(n));
    if (a > best) best = a;
    if (b > best) best = b;
  }
  return best;
}

FracProbeReport power_frac_probe(const Real& x, const Real* y, std::size_t N,
                                 const Real& epsilon, unsigned digits) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (x <= 0) throw std::invalid_argument("x must be positive");
  unsigned required = frac_probe_required_digits(x, y, N);
  if (digits < required) {
    std::ostringstream os;
    os << "insufficient precision: " << digits << " digits supplied, " << required
       << " required for N=" << N;
    throw std::invalid_argument(os.str());
  }
  ScopedPrecision prec(digits);
  FracProbeReport rep;
  rep.digits_used = digits;
  rep.proximity_searched = (y != nullptr);
  // Recompute the powers at scope precision; the inputs may carry less.
  Real xs(x.str());
  Real xp = 1;
  Real yp = 1;
  Real ys = y ? Real(y->str()) : Real(1);
  rep.fracs.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) {
    xp *= xs;
    Real fx = xp - floor(xp);
    rep.fracs.push_back(fx);
    if (y) {
      yp *= ys;
      Real fy = yp - floor(yp);
      if (!rep.proximity_hit && abs(fx - fy) < epsilon) rep.proximity_hit = n;
    }
  }
  rep.star_discrepancy = star_discrepancy(rep.fracs);
  return rep;
}

}  // namespace addlab::polyalgebra
