#pragma once

#include <string>
#include <vector>

#include "addlab/numeric.hpp"

namespace testutil {

// Distance from a frozen decimal literal, parsed at the current precision.
inline addlab::Real gap(const addlab::Real& x, const std::string& frozen) {
  return boost::multiprecision::abs(x - addlab::Real(frozen));
}

inline std::vector<addlab::BigInt> big(const std::vector<long long>& v) {
  std::vector<addlab::BigInt> out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

inline std::vector<addlab::Rational> rat(const std::vector<long long>& v) {
  std::vector<addlab::Rational> out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

}  // namespace testutil
