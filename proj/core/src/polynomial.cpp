#include "addlab/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace addlab {

namespace {

const BigInt kZero = 0;

int sgn(const BigInt& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }
int sgn(const Rational& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

BigInt content(const std::vector<BigInt>& cs) {
  BigInt g = 0;
  for (const auto& c : cs) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::from_terms(const std::vector<std::pair<int, BigInt>>& terms) {
  int deg = -1;
  for (const auto& [d, c] : terms) {
    if (d < 0) throw std::invalid_argument("negative degree in polynomial term");
    deg = std::max(deg, d);
  }
  std::vector<BigInt> cs(static_cast<std::size_t>(deg + 1), BigInt(0));
  for (const auto& [d, c] : terms) cs[static_cast<std::size_t>(d)] += c;
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::monomial(int degree, const BigInt& c) {
  return from_terms({{degree, c}});
}

const BigInt& IntPolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) return kZero;
  return coeffs_.back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<BigInt> cs(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] += o.coeffs_[i];
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<BigInt> cs(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] -= o.coeffs_[i];
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> cs(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::operator*(const BigInt& c) const {
  std::vector<BigInt> cs = coeffs_;
  for (auto& x : cs) x *= c;
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::operator-() const { return *this * BigInt(-1); }

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> cs(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) cs[i - 1] = coeffs_[i] * BigInt(i);
  return IntPolynomial(std::move(cs));
}

BigInt IntPolynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Real IntPolynomial::eval(const Real& x) const {
  Real acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_real(*it);
  return acc;
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return IntPolynomial{};
  if (degree() < d.degree()) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quo(static_cast<std::size_t>(degree() - d.degree() + 1), BigInt(0));
  for (int k = degree() - d.degree(); k >= 0; --k) {
    BigInt top = rem[static_cast<std::size_t>(k + d.degree())];
    if (top % d.leading() != 0) return std::nullopt;
    BigInt q = top / d.leading();
    quo[static_cast<std::size_t>(k)] = q;
    for (int i = 0; i <= d.degree(); ++i)
      rem[static_cast<std::size_t>(k + i)] -= q * d.coeff(i);
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return IntPolynomial(std::move(quo));
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content(coeffs_);
  if (leading() < 0) g = -g;
  std::vector<BigInt> cs = coeffs_;
  for (auto& c : cs) c /= g;
  return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::squarefree_part() const {
  if (degree() <= 0) return primitive_part();
  IntPolynomial g = poly_gcd(*this, derivative());
  if (g.degree() == 0) return primitive_part();
  auto q = primitive_part().divide_exact(g);
  // Exactness holds by construction: g divides p up to content, and both
  // sides were made primitive.
  assert(q.has_value());
  return q->primitive_part();
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeff(i);
    if (c == 0) continue;
    BigInt a = boost::multiprecision::abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << a.str();
    } else {
      if (a != 1) os << a.str();
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // Pseudo-remainder: scale a by lc(b)^(deg a - deg b + 1) so division
    // stays integral, then drop the content. Signs do not matter for gcd.
    int k = a.degree() - b.degree() + 1;
    BigInt scale = 1;
    for (int i = 0; i < k; ++i) scale *= b.leading();
    IntPolynomial r = a * scale;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      BigInt q = r.leading() / b.leading();
      // lc(b)^k scaling guarantees divisibility at each step.
      r = r - (IntPolynomial::monomial(r.degree() - b.degree(), q) * b);
    }
    a = b;
    b = r.is_zero() ? IntPolynomial{} : r.primitive_part();
  }
  return a.primitive_part();
}

SturmChain::SturmChain(const IntPolynomial& p) {
  IntPolynomial f = p.squarefree_part();
  if (f.is_zero()) {
    chain_.push_back(f);
    return;
  }
  chain_.push_back(f);
  if (f.degree() == 0) return;
  chain_.push_back(f.derivative().primitive_part());
  while (chain_.back().degree() > 0) {
    const IntPolynomial& a = chain_[chain_.size() - 2];
    const IntPolynomial& b = chain_.back();
    // Negated pseudo-remainder, rescaled to primitive. The Sturm sign
    // property only needs rem = -(a mod b) up to a *positive* factor, so
    // the pseudo-remainder scale must be forced positive.
    int k = a.degree() - b.degree() + 1;
    BigInt scale = 1;
    for (int i = 0; i < k; ++i) scale *= b.leading();
    if (scale < 0) scale = -scale;
    IntPolynomial r = a * scale;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      BigInt q = r.leading() / b.leading();
      r = r - (IntPolynomial::monomial(r.degree() - b.degree(), q) * b);
    }
    if (r.is_zero()) break;  // cannot happen for squarefree f, kept defensive
    r = -r;
    // primitive_part() normalizes leading>0, which would flip signs; rescale
    // by content magnitude only.
    BigInt g = 0;
    for (const auto& c : r.coeffs()) g = boost::multiprecision::gcd(g, c);
    std::vector<BigInt> cs = r.coeffs();
    for (auto& c : cs) c /= g;
    chain_.push_back(IntPolynomial(std::move(cs)));
  }
}

int SturmChain::sign_changes_at(const Rational& x) const {
  int changes = 0, prev = 0;
  for (const auto& f : chain_) {
    int s = sgn(f.eval(x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

int SturmChain::sign_changes_at_neg_inf() const {
  int changes = 0, prev = 0;
  for (const auto& f : chain_) {
    if (f.is_zero()) continue;
    int s = sgn(f.leading());
    if (f.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmChain::sign_changes_at_pos_inf() const {
  int changes = 0, prev = 0;
  for (const auto& f : chain_) {
    if (f.is_zero()) continue;
    int s = sgn(f.leading());
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmChain::count(const Rational& lo, const Rational& hi) const {
  if (lo >= hi) return 0;
  return sign_changes_at(lo) - sign_changes_at(hi);
}

int SturmChain::count_all() const {
  return sign_changes_at_neg_inf() - sign_changes_at_pos_inf();
}

int SturmChain::count_above(const Rational& lo) const {
  return sign_changes_at(lo) - sign_changes_at_pos_inf();
}

int SturmChain::count_upto(const Rational& hi) const {
  return sign_changes_at_neg_inf() - sign_changes_at(hi);
}

Rational root_bound(const IntPolynomial& p) {
  if (p.degree() <= 0) return Rational(1);
  BigInt maxc = 0;
  for (int i = 0; i < p.degree(); ++i) {
    BigInt a = p.coeff(i) < 0 ? BigInt(-p.coeff(i)) : p.coeff(i);
    if (a > maxc) maxc = a;
  }
  BigInt lead = p.leading() < 0 ? BigInt(-p.leading()) : p.leading();
  Rational b = Rational(1) + Rational(maxc, lead);
  return b;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPolynomial& p) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  SturmChain chain(p);
  Rational bound = root_bound(p);
  // ]-B-1, B] catches everything including a root exactly at -B.
  Rational lo = -bound - 1, hi = bound;
  struct Seg {
    Rational lo, hi;
    int count;
  };
  std::vector<Seg> stack{{lo, hi, chain.count(lo, hi)}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      out.emplace_back(s.lo, s.hi);
      continue;
    }
    Rational mid = (s.lo + s.hi) / 2;
    int left = chain.count(s.lo, mid);
    stack.push_back({s.lo, mid, left});
    stack.push_back({mid, s.hi, s.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Real> real_roots(const IntPolynomial& p, const Real& tol) {
  std::vector<Real> out;
  IntPolynomial f = p.squarefree_part();
  if (f.degree() <= 0) return out;
  IntPolynomial fp = f.derivative();
  auto intervals = isolate_real_roots(f);
  for (auto [lo, hi] : intervals) {
    // Rational bisection first: the interval ]lo, hi] brackets exactly one
    // simple root, so f changes sign on it (or the root is hi itself).
    Rational flo = f.eval(lo);
    Rational fhi = f.eval(hi);
    if (fhi == 0) {
      out.push_back(to_real(hi));
      continue;
    }
    // lo itself may be a root belonging to the neighboring interval; the
    // sign just right of lo is then opposite to f(hi) (one simple root
    // between them), which is all the bisection needs.
    if (flo == 0) flo = Rational(-sgn(fhi));
    for (int it = 0; it < 80 && (hi - lo) > Rational(1, 1000000); ++it) {
      Rational mid = (lo + hi) / 2;
      Rational fm = f.eval(mid);
      if (fm == 0) {
        lo = hi = mid;
        break;
      }
      if (sgn(fm) == sgn(flo)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    // Newton polish from the midpoint; fall back to more bisection in Real
    // if the derivative degenerates (cannot happen for simple roots once
    // the bracket is tight, kept defensive).
    Real x = to_real((lo + hi) / 2);
    for (int it = 0; it < 200; ++it) {
      Real fx = f.eval(x);
      Real dx = fp.eval(x);
      if (dx == 0) break;
      Real step = fx / dx;
      x -= step;
      if (boost::multiprecision::abs(step) < tol / 4) break;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int sign_scan_root_count(const IntPolynomial& p, const Rational& lo, const Rational& hi,
                         const Rational& step) {
  if (step <= 0) throw std::invalid_argument("scan step must be positive");
  int count = 0;
  Rational x = lo;
  Rational fx = p.eval(x);
  while (x < hi) {
    Rational y = x + step;
    if (y > hi) y = hi;
    Rational fy = p.eval(y);
    if (fy == 0)
      ++count;  // landing exactly on a root; counted once since we step past it
    else if (sgn(fx) * sgn(fy) < 0)
      ++count;
    else if (fx == 0 && x == lo)
      ++count;  // root exactly at the left end
    x = y;
    fx = fy;
  }
  return count;
}

}  // namespace addlab
