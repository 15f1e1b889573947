#pragma once

#include <mutex>
#include <vector>

#include "addlab/numeric.hpp"

namespace addlab::identities {

// The paired order-j sequences: F(1)=1, F(2)=j and L(1)=j, L(2)=j^2+2,
// both satisfying u(n) = u(n-2) + j*u(n-1). Negative indices come from the
// backward rule u(n-2) = u(n) - j*u(n-1); nothing about signed-index
// symmetry is assumed, it falls out (and is tested, not trusted).
class JFLPair {
 public:
  explicit JFLPair(long long j);

  BigInt fib(long long n) const;
  BigInt lucas(long long n) const;
  long long j() const { return j_; }

 private:
  // fwd[i] holds index i+1 (i.e. starts at u_1); bwd[i] holds index -i
  // (starts at u_0). Filled on demand under the mutex: concurrent
  // verify runs share one pair safely.
  const BigInt& term(std::vector<BigInt>& fwd, std::vector<BigInt>& bwd, long long n) const;

  long long j_;
  mutable std::vector<BigInt> fib_fwd_, fib_bwd_, lucas_fwd_, lucas_bwd_;
  mutable std::mutex mu_;
};

}  // namespace addlab::identities
