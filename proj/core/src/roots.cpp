#include "addlab/roots.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace addlab::polyalgebra {

using boost::multiprecision::abs;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

IntPolynomial phi_defining_poly(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return IntPolynomial::from_terms({{k + 1, 1}, {k, -1}, {0, -1}});
}

IntPolynomial phi_minimal_poly(int k) {
  IntPolynomial p = phi_defining_poly(k);
  if (k % 6 != 4) return p;
  // x^2 - x + 1 splits off exactly when k = 4 mod 6 (its roots are the
  // primitive sixth roots of unity, which satisfy x^{k+1} = x^k + 1 then).
  IntPolynomial factor = IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, 1}});
  auto q = p.divide_exact(factor);
  if (!q) throw std::logic_error("expected x^2 - x + 1 to divide the defining polynomial");
  return *q;
}

PhiConstant phi_constant(int k, const Real& tol) {
  PhiConstant out;
  out.k = k;
  out.defining_poly = phi_defining_poly(k);
  out.value = dominant_root(out.defining_poly, Real(1), Real(2), tol);
  return out;
}

SilverMean silver_mean(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  SilverMean s;
  s.k = k;
  s.value = (Real(k) + sqrt(Real(k) * Real(k) + 4)) / 2;
  return s;
}

Real dominant_root(const IntPolynomial& p, const Real& lo, const Real& hi, const Real& tol) {
  Real a = lo, b = hi;
  Real fa = p.eval(a), fb = p.eval(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("dominant_root needs a sign change on [lo, hi]");
  IntPolynomial dp = p.derivative();
  Real x = (a + b) / 2;
  for (int it = 0; it < 100000 && (b - a) >= tol; ++it) {
    Real fx = p.eval(x);
    if (fx == 0) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    Real dx = dp.eval(x);
    Real cand = (a + b) / 2;
    if (dx != 0) {
      Real newton = x - fx / dx;
      if (newton > a && newton < b) cand = newton;
    }
    x = cand;
  }
  // Final polish: a couple of Newton steps clamp quadratic error well below
  // the bracket width.
  for (int it = 0; it < 4; ++it) {
    Real dx = dp.eval(x);
    if (dx == 0) break;
    Real next = x - p.eval(x) / dx;
    if (next < a || next > b) break;
    x = next;
  }
  return x;
}

int sturm_real_root_count(const IntPolynomial& p, const std::optional<Rational>& lo,
                          const std::optional<Rational>& hi) {
  SturmChain chain(p);
  if (lo && hi) return chain.count(*lo, *hi);
  if (lo) return chain.count_above(*lo);
  if (hi) return chain.count_upto(*hi);
  return chain.count_all();
}

IntPolynomial build_psi(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("need k >= 1, m >= 0");
  IntPolynomial psi = phi_defining_poly(k);
  for (int j = 1; j <= m; ++j) {
    // Top term x^{k+j} becomes x^{k+j+1} - x^{j}; everything else stays.
    int top = k + j + 1;
    psi = psi - IntPolynomial::monomial(top - 1) + IntPolynomial::monomial(top) -
          IntPolynomial::monomial(j);
  }
  return psi;
}

IntPolynomial psi_product_form(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("need k >= 1, m >= 0");
  std::vector<BigInt> ones(static_cast<std::size_t>(m + 1), BigInt(1));
  return phi_defining_poly(k) * IntPolynomial(std::move(ones));
}

std::vector<DerivativeGap> psi_derivative_gaps(int k, int m_max, unsigned digits) {
  ScopedPrecision prec(digits);
  Real tol = pow(Real(10), -static_cast<int>(digits) + 8);
  Real phi = phi_constant(k, tol).value;
  std::vector<Real> values;
  values.reserve(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) values.push_back(build_psi(k, m).derivative().eval(phi));
  std::vector<DerivativeGap> gaps;
  Real prev_gap;
  for (int m = 0; m + 1 <= m_max; ++m) {
    DerivativeGap g;
    g.m = m;
    g.gap = values[static_cast<std::size_t>(m + 1)] - values[static_cast<std::size_t>(m)];
    if (g.gap == 0)
      throw std::domain_error("derivative gap vanished: precision cannot separate the values");
    if (m > 0) {
      g.ratio = g.gap / prev_gap;
      g.has_ratio = true;
    }
    prev_gap = g.gap;
    gaps.push_back(g);
  }
  return gaps;
}

PsiRootReport psi_real_roots(int k, int m, const Real& tol) {
  PsiRootReport rep;
  rep.k = k;
  rep.m = m;
  IntPolynomial psi = build_psi(k, m);
  rep.roots = real_roots(psi, tol);
  rep.has_minus_one = psi.eval(BigInt(-1)) == 0;
  SturmChain chain(psi);
  rep.has_sigma = chain.count(Rational(-1), Rational(0)) > (psi.eval(BigInt(0)) == 0 ? 1 : 0);
  if (rep.has_sigma) {
    for (const auto& r : rep.roots)
      if (r > -1 && r < 0) rep.sigma = r;
  }
  int degree = k + m + 1;
  if (k % 2 == 0)
    rep.claimed_count = 2;  // the {-1, phi_k} description
  else
    rep.claimed_count = (degree % 2 == 1) ? 3 : 2;
  bool matches = static_cast<int>(rep.roots.size()) == rep.claimed_count;
  if (k % 2 == 0)
    matches = matches && rep.has_minus_one && !rep.has_sigma;
  else
    matches = matches && rep.has_sigma && (degree % 2 == 1 ? rep.has_minus_one : !rep.has_minus_one);
  rep.matches_claim = matches;
  return rep;
}

MembershipResult verify_root_membership(const IntPolynomial& p, int k, const Real& tol) {
  MembershipResult res;
  res.defining_poly_reducible = (k % 6 == 4);
  IntPolynomial minimal = phi_minimal_poly(k);
  auto q = p.divide_exact(minimal);
  res.is_member = q.has_value();
  if (q) res.quotient = *q;
  Real phi = phi_constant(k, tol).value;
  res.residual = abs(p.eval(phi));
  return res;
}

std::vector<SigmaGapProbe> sigma_gap_probe(int k, const std::vector<int>& ms, unsigned digits) {
  if (k % 2 == 0) throw std::invalid_argument("sigma exists for odd k only");
  ScopedPrecision prec(digits);
  Real tol = pow(Real(10), -static_cast<int>(digits) + 8);
  // sigma_k: the root of the defining polynomial in ]-1, 0[.
  auto roots = real_roots(phi_defining_poly(k), tol);
  Real sigma;
  bool found = false;
  for (const auto& r : roots)
    if (r > -1 && r < 0) {
      sigma = r;
      found = true;
    }
  if (!found) throw std::logic_error("no root in ]-1,0[ for odd k; defining polynomial anomaly");

  auto dpsi_at = [&](int m) { return build_psi(k, m).derivative().eval(sigma); };

  std::vector<SigmaGapProbe> out;
  for (int m : ms) {
    SigmaGapProbe probe;
    probe.m = m;
    probe.sigma_squared = sigma * sigma;
    Real num = dpsi_at(2 * m + 4) - dpsi_at(2 * m + 2);
    Real uden = dpsi_at(2 * m + 2) - dpsi_at(2 * m);
    if (uden == 0) throw std::domain_error("uniform denominator vanished; raise digits");
    probe.uniform_ratio = num / uden;
    Real pden = dpsi_at(m + 2) - dpsi_at(2 * m);
    // m + 2 == 2m makes the printed denominator identically zero.
    Real guard = pow(Real(10), -static_cast<int>(digits) + 10);
    probe.printed_defined = abs(pden) > guard;
    if (probe.printed_defined) probe.printed_ratio = num / pden;
    out.push_back(probe);
  }
  return out;
}

EigenCheck cycle_graph_eigen_check(int n, const Real& tol) {
  if (n < 2) throw std::invalid_argument("cycle needs n >= 2");
  const std::size_t N = static_cast<std::size_t>(n);
  // Adjacency: i -> i+1 mod n, plus the self-loop 0 -> 0.
  auto mat_mul = [&](const std::vector<Rational>& A, const std::vector<Rational>& B) {
    std::vector<Rational> C(N * N, Rational(0));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t kk = 0; kk < N; ++kk) {
        if (A[i * N + kk] == 0) continue;
        for (std::size_t j = 0; j < N; ++j) C[i * N + j] += A[i * N + kk] * B[kk * N + j];
      }
    return C;
  };
  std::vector<Rational> A(N * N, Rational(0));
  A[0] = 1;
  for (std::size_t i = 0; i < N; ++i) A[i * N + (i + 1) % N] = 1;

  // Faddeev-LeVerrier: exact characteristic coefficients.
  std::vector<Rational> M(N * N, Rational(0));
  for (std::size_t i = 0; i < N; ++i) M[i * N + i] = 1;
  std::vector<Rational> coeffs(N + 1, Rational(0));
  coeffs[N] = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    std::vector<Rational> AM = mat_mul(A, M);
    Rational tr = 0;
    for (std::size_t i = 0; i < N; ++i) tr += AM[i * N + i];
    Rational c = -tr / Rational(k);
    coeffs[N - k] = c;
    M = AM;
    for (std::size_t i = 0; i < N; ++i) M[i * N + i] += c;
  }
  std::vector<BigInt> int_coeffs(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    if (denominator(coeffs[i]) != 1)
      throw std::logic_error("characteristic coefficients of an integer matrix must be integers");
    int_coeffs[i] = numerator(coeffs[i]);
  }
  EigenCheck check;
  check.char_poly = IntPolynomial(std::move(int_coeffs));
  IntPolynomial expected = phi_defining_poly(n - 1);
  check.char_poly_matches = (check.char_poly == expected);

  // Power iteration; the digraph is primitive (cycle plus loop), so the
  // dominant eigenvalue is simple and strictly largest in modulus. The
  // iterates stay strictly positive, which makes the componentwise
  // ratio bounds min_i w_i/v_i <= lambda <= max_i w_i/v_i valid; they
  // pinch together, unlike the norm ratio, which plateaus during the
  // cyclic transient.
  std::vector<Real> v(N, Real(1));
  Real lambda = 0;
  for (long it = 0; it < 500000; ++it) {
    std::vector<Real> w(N, Real(0));
    w[0] = v[0];
    for (std::size_t i = 0; i < N; ++i) w[i] += v[(i + 1) % N];
    Real rmin = w[0] / v[0], rmax = rmin;
    for (std::size_t i = 1; i < N; ++i) {
      Real r = w[i] / v[i];
      if (r < rmin) rmin = r;
      if (r > rmax) rmax = r;
    }
    lambda = (rmin + rmax) / 2;
    Real norm = 0;
    for (const auto& x : w) norm = std::max(norm, abs(x));
    for (auto& x : w) x /= norm;
    v = std::move(w);
    if (rmax - rmin < tol / 4) break;
  }
  check.dominant = lambda;
  Real phi = phi_constant(n - 1, tol).value;
  check.residual = abs(lambda - phi);
  return check;
}

TowerResult nested_power_tower(const Real& k, const Real& alpha, const Real& tol,
                               std::size_t iteration_cap) {
  if (k <= 0 || alpha <= 0) throw std::invalid_argument("need k > 0 and alpha > 0");
  TowerResult res;
  Real expo = alpha / (alpha + 1);
  Real t = k;
  std::size_t it = 0;
  for (; it < iteration_cap; ++it) {
    Real next = pow(k + t, expo);
    Real diff = abs(next - t);
    t = next;
    if (diff < tol / 16) break;
  }
  res.iterations = it;
  res.inner_fixpoint = t;
  res.value = pow(t, Real(1) / alpha);
  // Round trip through the logarithmic form the fixpoint is supposed to
  // solve: Log[k/(r-1)] / Log(r) = alpha.
  if (res.value > 1) {
    res.roundtrip_residual = abs(log(k / (res.value - 1)) / log(res.value) - alpha);
  } else {
    res.roundtrip_residual = Real(-1);  // r <= 1 would put the Log form out of domain
  }
  return res;
}

Real odd_silver_nested_radical(int k, const Real& tol) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Real base = Real(k) * Real(k) - Real(k) + 1;
  Real t = base;
  for (std::size_t it = 0; it < 200000; ++it) {
    Real next = sqrt(base + t);
    Real diff = abs(next - t);
    t = next;
    if (diff < tol / 16) break;
  }
  return Real(k) - 1 + t;
}

}  // namespace addlab::polyalgebra
