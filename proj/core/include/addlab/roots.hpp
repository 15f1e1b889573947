#pragma once

#include <optional>
#include <string>
#include <vector>

#include "addlab/numeric.hpp"
#include "addlab/polynomial.hpp"

namespace addlab::polyalgebra {

// The in-]1,2[ root of x^{k+1} - x^k - 1, the ratio limit attached to the
// logarithmic index k. phi_4 is the plastic constant 1.3247...; phi_1 the
// golden ratio.
struct PhiConstant {
  int k = 1;
  Real value;
  IntPolynomial defining_poly;  // x^{k+1} - x^k - 1
};

// x^{k+1} - x^k - 1.
IntPolynomial phi_defining_poly(int k);

// For k = 4 the defining polynomial factors as (x^3 - x - 1)(x^2 - x + 1);
// the cubic is the true minimal polynomial. Every other k <= 60ish of
// interest here: x^{k+1} - x^k - 1 is reducible exactly when k = 4 mod 6
// (the quadratic x^2 - x + 1 divides), so membership tests must divide by
// the right factor.
IntPolynomial phi_minimal_poly(int k);

PhiConstant phi_constant(int k, const Real& tol);

// Positive root of x^2 - kx - 1 = (k + sqrt(k^2+4))/2.
struct SilverMean {
  int k = 1;
  Real value;
};
SilverMean silver_mean(int k);

// Bisection with the sign-change precondition p(lo)*p(hi) < 0, then Newton
// polish inside the final bracket. Returned value sits in a bracket of
// width < tol.
Real dominant_root(const IntPolynomial& p, const Real& lo, const Real& hi, const Real& tol);

// Exact count of distinct real roots in ]lo, hi] (open brackets at
// infinity). Squarefree reduction happens inside the chain.
int sturm_real_root_count(const IntPolynomial& p, const std::optional<Rational>& lo,
                          const std::optional<Rational>& hi);

// The equation chain grown from x^{k+1} - x^k - 1 by repeatedly replacing
// the top term x^{k+m} with x^{k+m+1} - x^m (coefficients accumulate when
// the subtracted power collides with an existing term). Degree is k+m+1.
IntPolynomial build_psi(int k, int m);

// Same chain via the closed form (x^{k+1} - x^k - 1) * (1 + x + ... + x^m);
// equality with build_psi is a structural cross-check, not a definition.
IntPolynomial psi_product_form(int k, int m);

struct DerivativeGap {
  int m = 0;      // gap between m and m+1
  Real gap;       // psi'_{k,m+1}(phi_k) - psi'_{k,m}(phi_k)
  Real ratio;     // gap(m) / gap(m-1); empty Real for the first gap
  bool has_ratio = false;
};

// Evaluates psi'_{k,m}(phi_k) for m = 0..m_max at the given precision.
// Throws if the precision cannot separate consecutive values (the gaps grow
// like phi^m, so this only triggers for absurd digit settings).
std::vector<DerivativeGap> psi_derivative_gaps(int k, int m_max, unsigned digits);

struct PsiRootReport {
  int k = 0;
  int m = 0;
  std::vector<Real> roots;           // ascending
  bool has_minus_one = false;
  bool has_sigma = false;            // a root in ]-1,0[ other than -1
  Real sigma;                        // set when has_sigma
  // What the two-or-three-root description predicts for this cell and
  // whether the exact census agrees. Mismatches are findings, not errors.
  int claimed_count = 0;
  bool matches_claim = false;
};

// All real roots of psi_{k,m} by Sturm isolation. The root census is exact;
// the claim check encodes: even k -> {-1, phi_k}; odd k -> 3 roots for odd
// degree, 2 for even degree (sigma_k in ]-1,0[ either way).
PsiRootReport psi_real_roots(int k, int m, const Real& tol);

// True iff the minimal polynomial of phi_k divides p exactly over the
// integers (the numeric residual |p(phi_k)| is a cross-check only). Also
// reports whether x^{k+1} - x^k - 1 itself is reducible, and the quotient.
struct MembershipResult {
  bool is_member = false;
  IntPolynomial quotient;        // p / minimal_poly when is_member
  bool defining_poly_reducible = false;
  Real residual;                 // |p(phi_k)|
};
MembershipResult verify_root_membership(const IntPolynomial& p, int k, const Real& tol);

// Both readings of the sigma-gap ratio claim for odd k. The uniform reading
// divides by psi'_{k,2m+2} - psi'_{k,2m}; the printed reading divides by
// psi'_{k,m+2} - psi'_{k,2m}, which degenerates at m = 2 (identical
// subscripts). Reported, not guessed at.
struct SigmaGapProbe {
  int m = 0;
  Real uniform_ratio;       // -> sigma^2 exactly
  bool printed_defined = false;
  Real printed_ratio;       // only when printed_defined
  Real sigma_squared;
};
std::vector<SigmaGapProbe> sigma_gap_probe(int k, const std::vector<int>& ms, unsigned digits);

// Directed n-cycle with one self-loop: characteristic polynomial must come
// out as lambda^n - lambda^{n-1} - 1 (computed exactly), and the dominant
// eigenvalue by power iteration must match phi_{n-1}. Returns that residual.
struct EigenCheck {
  Real residual;                 // |dominant - phi_{n-1}|
  Real dominant;
  IntPolynomial char_poly;       // exact, via rational Faddeev-LeVerrier
  bool char_poly_matches = false;
};
EigenCheck cycle_graph_eigen_check(int n, const Real& tol);

// Fixed point of t -> (k + t)^{alpha/(alpha+1)} started at t = k; the
// returned r = t*^{1/alpha} satisfies Log[k/(r-1)]/Log(r) = alpha. For k=1
// and integer alpha this is phi_alpha.
struct TowerResult {
  Real value;          // r
  Real inner_fixpoint; // t* = r^alpha
  Real roundtrip_residual;
  std::size_t iterations = 0;
};
TowerResult nested_power_tower(const Real& k, const Real& alpha, const Real& tol,
                               std::size_t iteration_cap = 200000);

// k - 1 + fixpoint of t -> sqrt(k^2 - k + 1 + t); equals the positive root
// of x^2 - (2k-1)x - 1.
Real odd_silver_nested_radical(int k, const Real& tol);

}  // namespace addlab::polyalgebra
