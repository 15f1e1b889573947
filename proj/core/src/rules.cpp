#include "addlab/rules.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

namespace addlab::rulecore {

namespace {

std::vector<RuleTerm> normalize(std::vector<RuleTerm> terms) {
  if (terms.empty()) throw RuleError("rule needs at least one term");
  for (const auto& t : terms)
    if (t.lag < 1) throw RuleError("lag must be at least 1");
  std::stable_sort(terms.begin(), terms.end(),
                   [](const RuleTerm& a, const RuleTerm& b) { return a.lag < b.lag; });
  std::vector<RuleTerm> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().lag == t.lag)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  for (const auto& t : merged)
    if (t.coeff == 0) {
      std::ostringstream os;
      os << "term u[n-" << t.lag << "] has zero net coefficient";
      throw RuleError(os.str());
    }
  return merged;
}

}  // namespace

RecurrenceRule::RecurrenceRule(std::vector<RuleTerm> terms) : terms_(normalize(std::move(terms))) {}

RecurrenceRule RecurrenceRule::unit(std::vector<int> lags) {
  std::vector<RuleTerm> ts;
  ts.reserve(lags.size());
  for (int l : lags) ts.push_back({l, 1});
  return RecurrenceRule(std::move(ts));
}

bool RecurrenceRule::integer_coeffs() const {
  for (const auto& t : terms_)
    if (denominator(t.coeff) != 1) return false;
  return true;
}

bool RecurrenceRule::positive_coeffs() const {
  for (const auto& t : terms_)
    if (t.coeff <= 0) return false;
  return true;
}

bool ExactSequence::all_integer() const {
  for (const auto& t : terms)
    if (denominator(t) != 1) return false;
  return true;
}

namespace {

// Minimal recursive-descent parser; positions in error messages are
// 1-based character columns.
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  RecurrenceRule parse() {
    std::vector<RuleTerm> terms;
    terms.push_back(term());
    skip_ws();
    while (pos_ < s_.size()) {
      expect('+');
      terms.push_back(term());
      skip_ws();
    }
    return RecurrenceRule(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "parse error at column " << (pos_ + 1) << ": " << what;
    throw RuleError(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      std::ostringstream os;
      os << "expected '" << c << "'";
      fail(os.str());
    }
    ++pos_;
  }

  BigInt integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit");
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return BigInt(s_.substr(start, pos_ - start));
  }

  RuleTerm term() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected term");
    Rational coeff = 1;
    // A term either starts with 'u' or with a coefficient followed by '*'.
    if (peek() != 'u') {
      BigInt num = integer();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        BigInt den = integer();
        if (den == 0) fail("zero denominator");
        coeff = Rational(num, den);
      } else {
        coeff = Rational(num);
      }
      expect('*');
      skip_ws();
    }
    if (peek() != 'u') fail("expected 'u'");
    ++pos_;
    expect('[');
    skip_ws();
    if (peek() != 'n') fail("expected 'n'");
    ++pos_;
    skip_ws();
    if (peek() != '-') fail("expected '-'");
    ++pos_;
    BigInt lag = integer();
    expect(']');
    if (lag < 1) fail("lag must be at least 1");
    if (lag > 1000000) fail("lag out of range");
    return {static_cast<int>(lag), coeff};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RecurrenceRule parse_rule(const std::string& text) { return Parser(text).parse(); }

std::string render_rule(const RecurrenceRule& rule) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : rule.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != 1) {
      os << numerator(t.coeff).str();
      if (denominator(t.coeff) != 1) os << "/" << denominator(t.coeff).str();
      os << "*";
    }
    os << "u[n-" << t.lag << "]";
  }
  return os.str();
}

ExactSequence generate_terms(const RecurrenceRule& rule, const std::vector<Rational>& init,
                             std::size_t count) {
  if (static_cast<int>(init.size()) < rule.order())
    throw RuleError("init shorter than the rule order");
  ExactSequence seq;
  seq.terms.assign(init.begin(), init.end());
  if (count < seq.terms.size()) {
    seq.terms.resize(count);
    return seq;
  }
  seq.terms.reserve(count);
  while (seq.terms.size() < count) {
    Rational next = 0;
    std::size_t p = seq.terms.size();
    for (const auto& t : rule.terms()) next += t.coeff * seq.terms[p - static_cast<std::size_t>(t.lag)];
    seq.terms.push_back(std::move(next));
  }
  return seq;
}

ExactSequence backward_extend(const RecurrenceRule& rule, const std::vector<Rational>& init,
                              std::size_t count, long long init_start_index) {
  if (static_cast<int>(init.size()) < rule.order())
    throw RuleError("init shorter than the rule order");
  const auto& ts = rule.terms();
  const RuleTerm& deepest = ts.back();
  // Working window is the first `order` known terms; u_{s-1} comes from the
  // rule applied at p = s - 1 + order, whose only unknown is the deepest lag.
  std::vector<Rational> out;
  out.reserve(count);
  std::vector<Rational> window(init.begin(), init.begin() + rule.order());
  for (std::size_t step = 0; step < count; ++step) {
    // window holds u_s .. u_{s+order-1} for the current start s.
    Rational rhs = window[static_cast<std::size_t>(rule.order()) - 1];  // u_{s-1+order}
    Rational acc = rhs;
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      // u_{s-1+order-lag_j}, an index inside the window.
      acc -= ts[j].coeff * window[static_cast<std::size_t>(rule.order() - 1 - ts[j].lag)];
    }
    Rational prev = acc / deepest.coeff;
    out.push_back(prev);
    window.insert(window.begin(), prev);
    window.pop_back();
  }
  ExactSequence seq;
  seq.start_index = init_start_index - static_cast<long long>(count);
  seq.terms.assign(out.rbegin(), out.rend());
  seq.terms.insert(seq.terms.end(), init.begin(), init.end());
  return seq;
}

Real ratio_limit(const RecurrenceRule& rule, const std::vector<Rational>& init, const Real& tol,
                 std::size_t iteration_cap) {
  if (!rule.positive_coeffs())
    throw RuleError("ratio limit needs positive coefficients (dominant direction otherwise unclear)");
  bool any = false;
  for (const auto& v : init) any = any || v != 0;
  if (!any) throw RuleError("ratio limit needs a nonzero init");
  if (static_cast<int>(init.size()) < rule.order())
    throw RuleError("init shorter than the rule order");

  std::vector<Rational> terms(init.begin(), init.end());
  std::vector<Real> ratios;
  const std::size_t keep = 64;
  int stable = 0;
  for (std::size_t n = 0; n < iteration_cap; ++n) {
    Rational next = 0;
    std::size_t p = terms.size();
    for (const auto& t : rule.terms()) next += t.coeff * terms[p - static_cast<std::size_t>(t.lag)];
    terms.push_back(next);
    const Rational& prev = terms[terms.size() - 2];
    if (prev == 0) continue;
    Real r = to_real(next / prev);
    if (!ratios.empty()) {
      Real diff = boost::multiprecision::abs(r - ratios.back());
      stable = (diff < tol / 8) ? stable + 1 : 0;
    }
    ratios.push_back(r);
    if (ratios.size() > keep) ratios.erase(ratios.begin());
    if (stable >= 3 && ratios.size() >= 8) return aitken_limit(ratios);
  }
  throw RuleError("consecutive ratios did not stabilize within the iteration cap");
}

IntPolynomial characteristic_polynomial(const RecurrenceRule& rule) {
  if (!rule.integer_coeffs())
    throw RuleError("characteristic polynomial is defined here for integer coefficients only");
  std::vector<std::pair<int, BigInt>> terms;
  int n = rule.order();
  terms.push_back({n, 1});
  for (const auto& t : rule.terms()) terms.push_back({n - t.lag, -numerator(t.coeff)});
  return IntPolynomial::from_terms(terms);
}

}  // namespace addlab::rulecore
