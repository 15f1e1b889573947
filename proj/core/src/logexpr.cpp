#include "addlab/logexpr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <sstream>
#include <stdexcept>

#include "addlab/roots.hpp"

namespace addlab::polyalgebra {

using boost::multiprecision::abs;
using boost::multiprecision::log;
using boost::multiprecision::pow;

Real eval_log_expr(const LogExpr& expr, const Real& x) {
  if (x <= 0 || x == 1) throw std::domain_error("Log base point must be positive and not 1");
  Real logx = log(x);
  Real acc = 0;
  for (std::size_t i = 0; i < expr.atoms.size(); ++i) {
    const LogAtom& a = expr.atoms[i];
    Real xe = pow(x, static_cast<int>(a.power));
    Real arg = (a.orientation == LogAtom::Orientation::XMinusC) ? xe - to_real(a.shift)
                                                                : to_real(a.shift) - xe;
    if (arg <= 0) {
      std::ostringstream os;
      os << "atom " << i << ": Log argument is nonpositive";
      throw std::domain_error(os.str());
    }
    // Log[1/arg] = -Log(arg).
    acc += Real(a.sign) * (-log(arg)) / logx;
  }
  return acc;
}

namespace {

struct Builder {
  std::vector<CatalogEntry> entries;
  Real tolerance;

  void add(const std::string& id, const std::string& statement, const Real& x,
           const Rational& expected, const LogExpr& expr) {
    CatalogEntry e;
    e.id = id;
    e.statement = statement;
    e.x = x;
    e.expected = expected;
    e.observed = eval_log_expr(expr, x);
    e.residual = abs(e.observed - to_real(expected));
    e.pass = e.residual < tolerance;
    entries.push_back(std::move(e));
  }
};

LogAtom atom(int sign, LogAtom::Orientation o, const Rational& shift, unsigned power = 1) {
  LogAtom a;
  a.sign = sign;
  a.orientation = o;
  a.shift = shift;
  a.power = power;
  return a;
}

constexpr auto kXC = LogAtom::Orientation::XMinusC;
constexpr auto kCX = LogAtom::Orientation::CMinusX;

// x^n - x^{n-1} - ... - x - 1, whose root in ]1,2[ drives the n-term
// unit-lag rule.
IntPolynomial nbonacci_poly(int n) {
  std::vector<std::pair<int, BigInt>> terms{{n, 1}};
  for (int i = 0; i < n; ++i) terms.push_back({i, -1});
  return IntPolynomial::from_terms(terms);
}

}  // namespace

CatalogReport verify_log_catalog(unsigned digits, const Real& tolerance) {
  ScopedPrecision prec(digits);
  Real tol = pow(Real(10), -static_cast<int>(digits) + 8);

  CatalogReport rep;
  rep.digits = digits;
  rep.tolerance = tolerance;
  Builder b;
  b.tolerance = tolerance;

  std::vector<Real> phi(7);
  for (int k = 1; k <= 6; ++k) phi[static_cast<std::size_t>(k)] = phi_constant(k, tol).value;

  // Base family: Log[1/(x-1)]/Log(x) = k at phi_k. The defining relation
  // phi^{k+1} = phi^k + 1 rearranges to phi - 1 = phi^{-k}.
  for (int k = 1; k <= 5; ++k) {
    std::ostringstream id, st;
    id << "base k=" << k;
    st << "Log[1/(x-1)]/Log(x) = " << k << " at the ]1,2[ root of x^" << (k + 1) << " - x^" << k
       << " - 1";
    b.add(id.str(), st.str(), phi[static_cast<std::size_t>(k)], Rational(k),
          LogExpr{{atom(+1, kXC, 1)}});
  }

  // Unit-lag limits: Log[1/(2-x)]/Log(x) = n at the n-term constant,
  // equivalent to x^n (2 - x) = 1.
  for (int n = 2; n <= 6; ++n) {
    Real root = dominant_root(nbonacci_poly(n), Real(1), Real(2), tol);
    std::ostringstream id, st;
    id << "kbonacci n=" << n;
    st << "Log[1/(2-x)]/Log(x) = " << n << " at the " << n << "-term unit-lag ratio limit";
    b.add(id.str(), st.str(), root, Rational(n), LogExpr{{atom(+1, kCX, 2)}});
  }

  // Golden-power one-offs; shifts are the Lucas numbers L2, L3, L4 and the
  // value is 1 because phi^n (|phi^n - L_n|) = 1.
  b.add("golden-power n=2", "Log[1/(3-x)]/Log(x) = 1 at golden^2", phi[1] * phi[1], Rational(1),
        LogExpr{{atom(+1, kCX, 3)}});
  b.add("golden-power n=3", "Log[1/(x-4)]/Log(x) = 1 at golden^3", phi[1] * phi[1] * phi[1],
        Rational(1), LogExpr{{atom(+1, kXC, 4)}});
  b.add("golden-power n=4", "Log[1/(7-x)]/Log(x) = 1 at golden^4",
        phi[1] * phi[1] * phi[1] * phi[1], Rational(1), LogExpr{{atom(+1, kCX, 7)}});

  // Lucas-power family: Log[1/(|x^n - L_n|)]/Log(x) = n at the golden
  // ratio; the conjugate root makes |phi^n - L_n| = phi^{-n}. Orientation
  // alternates with the parity of n.
  {
    long long l0 = 2, l1 = 1;  // L_0, L_1
    std::vector<long long> lucas{l0, l1};
    for (int n = 2; n <= 10; ++n) lucas.push_back(lucas[n - 1] + lucas[n - 2]);
    for (int n = 1; n <= 10; ++n) {
      std::ostringstream id, st;
      id << "lucas-power n=" << n;
      bool odd = n % 2 == 1;
      st << "Log[1/|x^" << n << " - " << lucas[n] << "|]/Log(x) = " << n << " at the golden ratio";
      b.add(id.str(), st.str(), phi[1], Rational(n),
            LogExpr{{atom(+1, odd ? kXC : kCX, lucas[n], static_cast<unsigned>(n))}});
    }
  }

  // Silver generalization: companions L(0)=2, L(1)=k, L(n)=L(n-2)+k L(n-1)
  // at the positive root of x^2 - kx - 1.
  for (int k = 2; k <= 3; ++k) {
    Real s = silver_mean(k).value;
    std::vector<BigInt> comp{2, k};
    for (int n = 2; n <= 6; ++n) comp.push_back(comp[n - 2] + k * comp[n - 1]);
    for (int n = 1; n <= 6; ++n) {
      std::ostringstream id, st;
      id << "silver k=" << k << " n=" << n;
      bool odd = n % 2 == 1;
      st << "Log[1/|x^" << n << " - " << comp[n].str() << "|]/Log(x) = " << n
         << " at the k=" << k << " silver mean";
      b.add(id.str(), st.str(), s, Rational(n),
            LogExpr{{atom(+1, odd ? kXC : kCX, Rational(comp[n]), static_cast<unsigned>(n))}});
    }
  }

  // Labeled power-point entries. Evaluation points are powers of phi_2,
  // phi_3, phi_4; expectations are the exact rationals the exponent
  // arithmetic forces.
  Real p2 = phi[2], p3 = phi[3], p4 = phi[4];
  b.add("alpha", "Log[1/(x-2)]/Log(x) = 5/2 at phi2^2", p2 * p2, Rational(5, 2),
        LogExpr{{atom(+1, kXC, 2)}});
  b.add("beta", "Log[1/(x-3)]/Log(x) = 5/3 at phi2^3", p2 * p2 * p2, Rational(5, 3),
        LogExpr{{atom(+1, kXC, 3)}});
  b.add("chi", "Log[1/(x-2)]/Log(x) - Log[1/(5-x)]/Log(x) = -5/4 at phi2^4",
        p2 * p2 * p2 * p2, Rational(-5, 4), LogExpr{{atom(+1, kXC, 2), atom(-1, kCX, 5)}});
  b.add("delta", "(Log[1/(2-x)] - Log[1/(x-1)])/Log(x) = 7/2 at phi3^2", p3 * p3, Rational(7, 2),
        LogExpr{{atom(+1, kCX, 2), atom(-1, kXC, 1)}});
  b.add("epsilon", "Log[1/(x-1)]/Log(x) = 1/2 at phi4^2", p4 * p4, Rational(1, 2),
        LogExpr{{atom(+1, kXC, 1)}});
  b.add("gamma", "Log[1/(x-2)]/Log(x) = 4/3 at phi4^3", p4 * p4 * p4, Rational(4, 3),
        LogExpr{{atom(+1, kXC, 2)}});
  b.add("eta", "Log[1/(x-3)]/Log(x) = 9/4 at phi4^4", pow(p4, 4), Rational(9, 4),
        LogExpr{{atom(+1, kXC, 3)}});
  b.add("sigma", "Log[1/(x-4)]/Log(x) = 9/5 at phi4^5", pow(p4, 5), Rational(9, 5),
        LogExpr{{atom(+1, kXC, 4)}});
  b.add("tau", "(Log[1/(2-x)] - Log[1/(x-1)])/Log(x) = 2 at phi4^2", p4 * p4, Rational(2),
        LogExpr{{atom(+1, kCX, 2), atom(-1, kXC, 1)}});
  b.add("plastic-base", "Log[1/(x-1)]/Log(x) = 4 at phi4", p4, Rational(4),
        LogExpr{{atom(+1, kXC, 1)}});

  rep.entries = std::move(b.entries);
  rep.all_pass = true;
  for (const auto& e : rep.entries) rep.all_pass = rep.all_pass && e.pass;
  return rep;
}

}  // namespace addlab::polyalgebra
