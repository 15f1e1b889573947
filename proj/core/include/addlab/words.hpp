#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "addlab/numeric.hpp"

namespace addlab::words {

// Concatenation recurrence over words: u(p) for p > n is the
// concatenation of the parts u(p - lag) over the lag set, oldest part
// first (largest lag first). That order is what the worked examples
// force: A, AB, CA over lags {2,3} continues AAB = u1 + u2, and A, B
// over lags {1,2} continues AB, BAB, ABBAB. Any other part order is a
// permuted system, built via permuted_system() below.
//
// Lengths and letter counts are carried as exact integers by the same
// additive recurrence, so frequency analysis never touches the strings.
// Materialized text is produced only on request and only below a cap.
class WordSystem {
 public:
  // order: lags in application order; empty means the default
  // (descending lag). Every lag must appear exactly once and the
  // largest lag must equal init_words.size().
  WordSystem(std::vector<std::string> init_words, std::vector<int> lags,
             std::vector<int> order = {});

  void extend_to(std::size_t p);  // ensures metadata for u(1..p)

  std::size_t generated_upto() const;
  const std::string& alphabet() const { return alphabet_; }  // sorted distinct letters of the inits
  const std::vector<int>& lag_set() const { return lags_; }  // ascending
  const std::vector<int>& part_order() const { return order_; }

  BigInt length(std::size_t p) const;
  BigInt letter_count(std::size_t p, char letter) const;
  std::vector<BigInt> counts(std::size_t p) const;  // alphabet order

  static constexpr std::size_t kMaterializeCap = 1'000'000;
  // nullopt when the exact length exceeds the cap.
  std::optional<std::string> materialize(std::size_t p, std::size_t cap = kMaterializeCap) const;

 private:
  struct Meta {
    BigInt length;
    std::vector<BigInt> counts;
  };
  Meta combine(std::size_t p) const;
  void ensure(std::size_t p) const;  // accessors extend the cache on demand

  std::vector<std::string> init_;
  std::vector<int> lags_;   // ascending
  std::vector<int> order_;  // application order
  std::string alphabet_;
  mutable std::vector<Meta> meta_;  // meta_[p-1] describes u(p)
};

struct LetterLimit {
  char letter;
  Rational last_frequency;   // exact, at p_max
  Real aitken_limit;
  Real last_delta;           // |f(p_max) - f(p_max - 1)|
};

struct LetterFrequencyReport {
  std::size_t p_max;
  std::vector<LetterLimit> letters;
  Real length_ratio;          // |u(p_max)| / |u(p_max - 1)|
  Real dominant_root;         // of the lag-set characteristic polynomial
  Real ratio_gap;             // |length_ratio - dominant_root|
};

LetterFrequencyReport letter_frequency_limits(WordSystem& system, std::size_t p_max,
                                              unsigned digits = kDefaultDigits);

struct FrequencyTable {
  int k;
  // counts[p-1]: gram -> exact count in u(p). Grams of length k only;
  // words shorter than k have empty maps.
  std::vector<std::map<std::string, BigInt>> counts;
  std::map<std::string, Rational> frequencies;  // at the last index, count / (len - k + 1)
};

// Incremental k-gram counting: each word's count map is the sum of its
// parts' maps plus the grams spanning each junction, which are fully
// determined by (k-1)-length suffix/prefix fragments (short words are
// carried whole, so fragments stay exact). Equivalent to scanning the
// materialized word; the tests exercise that equivalence directly.
FrequencyTable kgram_frequencies(const WordSystem& system, int k, std::size_t p_max);

// Same recurrence, parts applied in the order given (lags listed in
// application order). permuted_system({"A","B","C"}, {2,3,1}) realizes
// W(n+3) = W(n+1) # W(n) # W(n+2), whose first new word is BAC.
WordSystem permuted_system(std::vector<std::string> init_words, std::vector<int> formula);

struct AlgorithmAResult {
  std::vector<int> perm;     // 1-based images: perm[i] is where position i+1 reads from
  long long prime_m = 0;     // the selected prime m
  long long term_index = 0;  // (n-1)^(n-1), position into the cycled prime list
  bool degenerate = false;   // n < 3: no primes below n!, identity returned
  std::string note;
};

// The m-th permutation of {1..n} in lexicographic order (1-indexed),
// where m is the (n-1)^(n-1)-th term (1-indexed) of the periodic
// sequence of all primes below n!. n = 3 lands on (1,3,2).
// n above 8 is refused (std::invalid_argument): the prime list and the
// factorial indexing stay small by design.
AlgorithmAResult algorithm_a_permutation(int n);

// result[i] = w[perm[i]-1]: position i takes the letter the permutation
// points at.
std::string apply_permutation(const std::string& w, const std::vector<int>& perm);

struct PermutedMiddleSystem {
  std::vector<std::string> terms;  // W(1).. as far as the cap allows
  std::size_t steps_completed = 0;
  bool hit_cap = false;
  std::string stop_reason;
};

// W(n+3) = W(n+1)  +  P_{A,|W(n+2)|}(W(n+2))  +  W(n), the middle part
// permuted by algorithm A at its own length. Words are materialized
// (the permutation needs real text); generation stops cleanly once the
// middle word outgrows the algorithm-A cap.
PermutedMiddleSystem apply_algorithm_a_system(std::vector<std::string> init_words,
                                              std::size_t max_terms);

enum class GrammarCondition { ContextFreeAchievable, PossiblyNotContextFree };

// Context-free-achievable iff every init word is a single letter and
// the letters are pairwise distinct.
GrammarCondition grammar_condition_classify(const std::vector<std::string>& init_words);

std::string to_string(GrammarCondition c);

}  // namespace addlab::words
