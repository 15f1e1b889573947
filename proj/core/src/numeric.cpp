#include "addlab/numeric.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <iomanip>
#include <sstream>

namespace addlab {

Real aitken_limit(const std::vector<Real>& seq) {
  if (seq.empty()) return Real(0);
  Real best = seq.back();
  for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
    const Real& a = seq[i];
    const Real& b = seq[i + 1];
    const Real& c = seq[i + 2];
    Real den = c - 2 * b + a;
    if (den == 0) continue;
    Real num = c - b;
    best = c - num * num / den;
  }
  return best;
}

std::string real_str(const Real& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << x;
  return os.str();
}

}  // namespace addlab
