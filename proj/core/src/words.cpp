#include "addlab/words.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "addlab/roots.hpp"
#include "addlab/rules.hpp"

namespace addlab::words {

WordSystem::WordSystem(std::vector<std::string> init_words, std::vector<int> lags,
                       std::vector<int> order)
    : init_(std::move(init_words)), lags_(std::move(lags)), order_(std::move(order)) {
  if (init_.empty()) throw std::invalid_argument("at least one initial word is required");
  for (std::size_t t = 0; t < init_.size(); ++t)
    if (init_[t].empty()) {
      std::ostringstream msg;
      msg << "initial word " << (t + 1) << " is empty";
      throw std::invalid_argument(msg.str());
    }
  if (lags_.empty()) throw std::invalid_argument("the lag set is empty");
  std::sort(lags_.begin(), lags_.end());
  for (std::size_t t = 0; t < lags_.size(); ++t) {
    if (lags_[t] < 1) throw std::invalid_argument("lags are positive");
    if (t > 0 && lags_[t] == lags_[t - 1]) throw std::invalid_argument("lags are distinct");
  }
  if (static_cast<std::size_t>(lags_.back()) != init_.size())
    throw std::invalid_argument("largest lag must equal the number of initial words");

  if (order_.empty()) {
    order_.assign(lags_.rbegin(), lags_.rend());  // oldest part first
  } else {
    std::vector<int> sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != lags_)
      throw std::invalid_argument("part order must list each lag exactly once");
  }

  std::set<char> letters;
  for (const auto& w : init_) letters.insert(w.begin(), w.end());
  alphabet_.assign(letters.begin(), letters.end());

  meta_.reserve(init_.size());
  for (const auto& w : init_) {
    Meta m;
    m.length = static_cast<long long>(w.size());
    m.counts.assign(alphabet_.size(), 0);
    for (char c : w) m.counts[alphabet_.find(c)] += 1;
    meta_.push_back(std::move(m));
  }
}

WordSystem::Meta WordSystem::combine(std::size_t p) const {
  Meta m;
  m.length = 0;
  m.counts.assign(alphabet_.size(), 0);
  for (int lag : order_) {
    const Meta& part = meta_[p - 1 - static_cast<std::size_t>(lag)];
    m.length += part.length;
    for (std::size_t t = 0; t < m.counts.size(); ++t) m.counts[t] += part.counts[t];
  }
  return m;
}

void WordSystem::ensure(std::size_t p) const {
  while (meta_.size() < p) meta_.push_back(combine(meta_.size() + 1));
}

void WordSystem::extend_to(std::size_t p) { ensure(p); }

std::size_t WordSystem::generated_upto() const { return meta_.size(); }

BigInt WordSystem::length(std::size_t p) const {
  if (p == 0) throw std::out_of_range("terms are indexed from 1");
  ensure(p);
  return meta_[p - 1].length;
}

BigInt WordSystem::letter_count(std::size_t p, char letter) const {
  if (p == 0) throw std::out_of_range("terms are indexed from 1");
  ensure(p);
  auto pos = alphabet_.find(letter);
  if (pos == std::string::npos) return 0;
  return meta_[p - 1].counts[pos];
}

std::vector<BigInt> WordSystem::counts(std::size_t p) const {
  if (p == 0) throw std::out_of_range("terms are indexed from 1");
  ensure(p);
  return meta_[p - 1].counts;
}

std::optional<std::string> WordSystem::materialize(std::size_t p, std::size_t cap) const {
  if (p == 0) throw std::out_of_range("terms are indexed from 1");
  ensure(p);
  if (meta_[p - 1].length > BigInt(cap)) return std::nullopt;
  // Every term the recursion touches is a part of u(p), so its length is
  // bounded by |u(p)| and the memo stays below the cap per entry.
  std::map<std::size_t, std::string> memo;
  std::function<const std::string&(std::size_t)> build =
      [&](std::size_t q) -> const std::string& {
    auto it = memo.find(q);
    if (it != memo.end()) return it->second;
    if (q <= init_.size()) return memo.emplace(q, init_[q - 1]).first->second;
    std::string w;
    for (int lag : order_) w += build(q - static_cast<std::size_t>(lag));
    return memo.emplace(q, std::move(w)).first->second;
  };
  return build(p);
}

LetterFrequencyReport letter_frequency_limits(WordSystem& system, std::size_t p_max,
                                              unsigned digits) {
  if (p_max < 4) throw std::invalid_argument("frequency limits need p_max >= 4");
  ScopedPrecision guard(digits);
  system.extend_to(p_max);
  LetterFrequencyReport rep;
  rep.p_max = p_max;

  const std::string& alpha = system.alphabet();
  std::size_t tail_lo = p_max > 30 ? p_max - 29 : 1;
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    char letter = alpha[t];
    std::vector<Real> seq;
    seq.reserve(p_max - tail_lo + 1);
    for (std::size_t p = tail_lo; p <= p_max; ++p)
      seq.push_back(to_real(Rational(system.letter_count(p, letter), system.length(p))));
    LetterLimit lim;
    lim.letter = letter;
    lim.last_frequency = Rational(system.letter_count(p_max, letter), system.length(p_max));
    lim.aitken_limit = aitken_limit(seq);
    lim.last_delta = abs(seq[seq.size() - 1] - seq[seq.size() - 2]);
    rep.letters.push_back(std::move(lim));
  }

  rep.length_ratio = to_real(system.length(p_max)) / to_real(system.length(p_max - 1));
  if (system.lag_set().size() == 1) {
    rep.dominant_root = 1;  // single lag: the word sequence is eventually constant in length
  } else {
    auto rule = rulecore::RecurrenceRule::unit(system.lag_set());
    IntPolynomial cp = rulecore::characteristic_polynomial(rule);
    Real tol = pow(Real(10), -static_cast<int>(digits) + 8);
    rep.dominant_root = polyalgebra::dominant_root(cp, Real(1), Real(2), tol);
  }
  rep.ratio_gap = abs(rep.length_ratio - rep.dominant_root);
  return rep;
}

namespace {

void scan_grams(const std::string& w, int k, std::map<std::string, BigInt>& into) {
  if (static_cast<int>(w.size()) < k) return;
  for (std::size_t t = 0; t + static_cast<std::size_t>(k) <= w.size(); ++t)
    into[w.substr(t, static_cast<std::size_t>(k))] += 1;
}

std::string prefix_frag(const std::string& w, int k1) {
  return w.substr(0, std::min<std::size_t>(w.size(), static_cast<std::size_t>(k1)));
}

std::string suffix_frag(const std::string& w, int k1) {
  std::size_t n = std::min<std::size_t>(w.size(), static_cast<std::size_t>(k1));
  return w.substr(w.size() - n);
}

}  // namespace

FrequencyTable kgram_frequencies(const WordSystem& system, int k, std::size_t p_max) {
  if (k < 1) throw std::invalid_argument("gram length is positive");
  if (p_max == 0) throw std::invalid_argument("p_max is positive");
  const int k1 = k - 1;

  FrequencyTable table;
  table.k = k;
  table.counts.resize(p_max);

  // Per-term fragments: the k-1 boundary characters on each side, enough
  // to reconstruct every gram that crosses a junction.
  std::vector<std::string> pre(p_max), suf(p_max);
  const std::size_t n_init = system.lag_set().empty() ? 0 : static_cast<std::size_t>(system.lag_set().back());

  for (std::size_t p = 1; p <= p_max; ++p) {
    if (p <= n_init) {
      std::string w = *system.materialize(p);  // inits are always materializable
      scan_grams(w, k, table.counts[p - 1]);
      pre[p - 1] = prefix_frag(w, k1);
      suf[p - 1] = suffix_frag(w, k1);
      continue;
    }
    auto& counts = table.counts[p - 1];
    std::string acc_suffix;   // true suffix fragment of the parts folded so far
    std::string acc_prefix;   // true prefix fragment, grown until k-1 chars
    BigInt acc_len = 0;
    bool first = true;
    for (int lag : system.part_order()) {
      std::size_t q = p - static_cast<std::size_t>(lag);
      for (const auto& [gram, c] : table.counts[q - 1]) counts[gram] += c;
      if (first) {
        acc_prefix = pre[q - 1];
        acc_suffix = suf[q - 1];
        acc_len = system.length(q);
        first = false;
        continue;
      }
      // Every k-gram of (suffix fragment + prefix fragment) crosses this
      // junction and none was counted inside a part.
      scan_grams(acc_suffix + pre[q - 1], k, counts);
      if (static_cast<int>(acc_prefix.size()) < k1) {
        acc_prefix = prefix_frag(acc_prefix + pre[q - 1], k1);
      }
      acc_suffix = suffix_frag(acc_suffix + suf[q - 1], k1);
      acc_len += system.length(q);
    }
    pre[p - 1] = acc_prefix;
    suf[p - 1] = acc_suffix;
  }

  BigInt len = system.length(p_max);
  if (len >= k) {
    BigInt slots = len - k + 1;
    for (const auto& [gram, c] : table.counts[p_max - 1])
      table.frequencies[gram] = Rational(c, slots);
  }
  return table;
}

WordSystem permuted_system(std::vector<std::string> init_words, std::vector<int> formula) {
  std::vector<int> lags = formula;
  std::sort(lags.begin(), lags.end());
  return WordSystem(std::move(init_words), std::move(lags), std::move(formula));
}

namespace {

std::vector<long long> primes_below(long long bound) {
  std::vector<long long> ps;
  for (long long v = 2; v < bound; ++v) {
    bool prime = true;
    for (long long d = 2; d * d <= v; ++d)
      if (v % d == 0) {
        prime = false;
        break;
      }
    if (prime) ps.push_back(v);
  }
  return ps;
}

std::vector<int> lexicographic_permutation(int n, long long m) {
  // m is 1-indexed; factorial number system on m-1.
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pool[static_cast<std::size_t>(t)] = t + 1;
  std::vector<long long> fact(static_cast<std::size_t>(n), 1);
  for (int t = 1; t < n; ++t) fact[static_cast<std::size_t>(t)] = fact[static_cast<std::size_t>(t - 1)] * t;
  long long idx = m - 1;
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (int t = n - 1; t >= 0; --t) {
    long long f = fact[static_cast<std::size_t>(t)];
    long long d = idx / f;
    idx %= f;
    perm.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return perm;
}

}  // namespace

AlgorithmAResult algorithm_a_permutation(int n) {
  if (n < 1) throw std::invalid_argument("permutation size is positive");
  if (n > 8) throw std::invalid_argument("permutation size above 8 is refused");
  AlgorithmAResult res;
  if (n < 3) {
    res.perm.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) res.perm[static_cast<std::size_t>(t)] = t + 1;
    res.degenerate = true;
    res.note = "no primes below n!: identity returned";
    return res;
  }
  long long factorial = 1;
  for (int t = 2; t <= n; ++t) factorial *= t;
  auto ps = primes_below(factorial);
  long long t_index = 1;
  for (int e = 0; e < n - 1; ++e) t_index *= (n - 1);  // (n-1)^(n-1)
  res.term_index = t_index;
  res.prime_m = ps[static_cast<std::size_t>((t_index - 1) % static_cast<long long>(ps.size()))];
  res.perm = lexicographic_permutation(n, res.prime_m);
  std::ostringstream note;
  note << ps.size() << " primes below " << n << "!, term " << t_index << " wraps to prime "
       << res.prime_m;
  res.note = note.str();
  return res;
}

std::string apply_permutation(const std::string& w, const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  if (w.size() != n) throw std::invalid_argument("word length must match the permutation size");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("not a permutation of 1..n");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  std::string out(n, '\0');
  for (std::size_t t = 0; t < n; ++t) out[t] = w[static_cast<std::size_t>(perm[t] - 1)];
  return out;
}

PermutedMiddleSystem apply_algorithm_a_system(std::vector<std::string> init_words,
                                              std::size_t max_terms) {
  if (init_words.size() != 3) throw std::invalid_argument("the permuted middle system takes 3 initial words");
  for (const auto& w : init_words)
    if (w.empty()) throw std::invalid_argument("initial words are nonempty");
  PermutedMiddleSystem res;
  res.terms = std::move(init_words);
  while (res.terms.size() < max_terms) {
    const std::string& middle = res.terms[res.terms.size() - 1];
    if (middle.size() > 8) {
      res.hit_cap = true;
      std::ostringstream msg;
      msg << "middle word length " << middle.size() << " exceeds the permutation cap of 8";
      res.stop_reason = msg.str();
      return res;
    }
    auto pa = algorithm_a_permutation(static_cast<int>(middle.size()));
    std::string next = res.terms[res.terms.size() - 2] + apply_permutation(middle, pa.perm) +
                       res.terms[res.terms.size() - 3];
    res.terms.push_back(std::move(next));
    ++res.steps_completed;
  }
  res.stop_reason = "reached requested term count";
  return res;
}

GrammarCondition grammar_condition_classify(const std::vector<std::string>& init_words) {
  std::set<char> seen;
  for (const auto& w : init_words) {
    if (w.size() != 1) return GrammarCondition::PossiblyNotContextFree;
    if (!seen.insert(w[0]).second) return GrammarCondition::PossiblyNotContextFree;
  }
  return GrammarCondition::ContextFreeAchievable;
}

std::string to_string(GrammarCondition c) {
  return c == GrammarCondition::ContextFreeAchievable ? "context-free-achievable"
                                                      : "possibly-not-context-free";
}

}  // namespace addlab::words
