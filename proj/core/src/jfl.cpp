#include "addlab/jfl.hpp"

#include <stdexcept>

namespace addlab::identities {

JFLPair::JFLPair(long long j) : j_(j) {
  if (j < 1) throw std::invalid_argument("j must be at least 1");
  fib_fwd_ = {1, BigInt(j)};                    // F(1), F(2)
  lucas_fwd_ = {BigInt(j), BigInt(j) * j + 2};  // L(1), L(2)
  fib_bwd_ = {};
  lucas_bwd_ = {};
}

const BigInt& JFLPair::term(std::vector<BigInt>& fwd, std::vector<BigInt>& bwd,
                            long long n) const {
  if (n >= 1) {
    std::size_t idx = static_cast<std::size_t>(n - 1);
    while (fwd.size() <= idx) {
      std::size_t s = fwd.size();
      fwd.push_back(fwd[s - 2] + BigInt(j_) * fwd[s - 1]);
    }
    return fwd[idx];
  }
  // bwd[i] = u(-i): u(n-2) = u(n) - j*u(n-1) walked downward from u(0).
  std::size_t idx = static_cast<std::size_t>(-n);
  while (bwd.size() <= idx) {
    if (bwd.empty()) {
      // u(0) = u(2) - j*u(1)
      bwd.push_back(fwd[1] - BigInt(j_) * fwd[0]);
    } else if (bwd.size() == 1) {
      // u(-1) = u(1) - j*u(0)
      bwd.push_back(fwd[0] - BigInt(j_) * bwd[0]);
    } else {
      std::size_t s = bwd.size();
      bwd.push_back(bwd[s - 2] - BigInt(j_) * bwd[s - 1]);
    }
  }
  return bwd[idx];
}

BigInt JFLPair::fib(long long n) const {
  std::lock_guard<std::mutex> lock(mu_);
  return term(fib_fwd_, fib_bwd_, n);
}

BigInt JFLPair::lucas(long long n) const {
  std::lock_guard<std::mutex> lock(mu_);
  return term(lucas_fwd_, lucas_bwd_, n);
}

}  // namespace addlab::identities
