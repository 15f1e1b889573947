#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addlab/numeric.hpp"

namespace addlab {

// Dense integer-coefficient polynomial, constant term first. The zero
// polynomial is the empty vector; otherwise the leading coefficient is
// nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  // {degree, coefficient} pairs, e.g. from_terms({{3,1},{1,-1},{0,-1}}) is
  // x^3 - x - 1. Repeated degrees accumulate.
  static IntPolynomial from_terms(const std::vector<std::pair<int, BigInt>>& terms);
  static IntPolynomial monomial(int degree, const BigInt& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of x^i; zero outside the stored range.
  const BigInt& coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& leading() const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator*(const BigInt& c) const;
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial& o) const = default;

  IntPolynomial derivative() const;

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  Real eval(const Real& x) const;

  // Quotient when division is exact over the integers, nullopt otherwise.
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& d) const;

  // Divides out the integer content and normalizes the leading coefficient
  // positive. Zero stays zero.
  IntPolynomial primitive_part() const;

  // p / gcd(p, p'): same roots, all simple.
  IntPolynomial squarefree_part() const;

  // Human form, highest degree first: "x^9 - 2x^4 - x^3 - x^2 - x - 1".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// GCD via the primitive polynomial remainder sequence (exact, no coefficient
// blowup beyond content growth). Result is primitive with positive leading
// coefficient; gcd(0,0) = 0.
IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b);

// Sturm chain over exact integers (each remainder rescaled to its primitive
// part, which preserves signs). Floating-point chains misorder signs near
// clustered roots; exactness here is the point.
class SturmChain {
 public:
  explicit SturmChain(const IntPolynomial& p);  // chain of the squarefree part

  int sign_changes_at(const Rational& x) const;
  int sign_changes_at_neg_inf() const;
  int sign_changes_at_pos_inf() const;

  // Distinct real roots in ]lo, hi].
  int count(const Rational& lo, const Rational& hi) const;
  int count_all() const;
  // Roots in ]lo, +inf[ and ]-inf, hi] respectively.
  int count_above(const Rational& lo) const;
  int count_upto(const Rational& hi) const;

  const std::vector<IntPolynomial>& chain() const { return chain_; }
  const IntPolynomial& squarefree() const { return chain_.front(); }

 private:
  std::vector<IntPolynomial> chain_;
};

// Cauchy bound: every real root lies in [-B, B].
Rational root_bound(const IntPolynomial& p);

// Disjoint intervals ]lo, hi], each containing exactly one distinct real
// root, covering all of them. Exact bisection on the Sturm chain.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPolynomial& p);

// All distinct real roots, ascending, each within tol: Sturm isolation,
// rational bisection to a safe width, then Newton polish at current
// precision.
std::vector<Real> real_roots(const IntPolynomial& p, const Real& tol);

// Root count by brute sign scanning at the given step (oracle for the Sturm
// counts in tests; misses nothing if step < min root gap).
int sign_scan_root_count(const IntPolynomial& p, const Rational& lo, const Rational& hi,
                         const Rational& step);

}  // namespace addlab
