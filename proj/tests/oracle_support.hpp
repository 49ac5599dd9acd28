#pragma once

// Test-only brute-force oracles, kept independent of the library's storage
// and operator implementations: plain maps of exact rationals driven
// directly by the defining recurrences.

#include "digitwalk/dyadic.hpp"

#include <cstdint>
#include <map>

namespace oracle {

using digitwalk::Rational;
using RatMap = std::map<int, Rational>;

// The centered family by its integer recurrence: the base case is a point
// mass at 0, even keys halve, odd keys mix the two neighbors with a ±1 shift.
inline RatMap p_brute(std::uint64_t t) {
  static std::map<std::uint64_t, RatMap> memo;
  while ((t & 1u) == 0) t >>= 1;
  if (t == 1) return RatMap{{0, Rational(1)}};
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  std::uint64_t s = (t - 1) / 2;
  RatMap left = p_brute(s + 1);
  RatMap right = p_brute(s);
  RatMap out;
  for (const auto& [d, m] : left) out[d - 1] += m / 2;
  for (const auto& [d, m] : right) out[d + 1] += m / 2;
  memo[t] = out;
  return out;
}

// mu_t(d) by the defining convolution with the geometric base measure,
// summed over the finite support of the brute-force distribution.
inline Rational mu_brute(std::uint64_t t, int d) {
  Rational acc = 0;
  for (const auto& [j, m] : p_brute(t)) {
    int k = d - j;
    if (k > 1) continue;
    acc += m / Rational(digitwalk::BigInt(1) << (2 - k));
  }
  return acc;
}

inline Rational tail_nonneg_brute(std::uint64_t t) {
  Rational acc = 0;
  for (const auto& [d, m] : p_brute(t))
    if (d >= 0) acc += m;
  return acc;
}

inline Rational mean_brute(const RatMap& p) {
  Rational acc = 0;
  for (const auto& [d, m] : p) acc += Rational(d) * m;
  return acc;
}

inline Rational variance_brute(const RatMap& p) {
  Rational mean = mean_brute(p);
  Rational acc = 0;
  for (const auto& [d, m] : p) {
    Rational c = Rational(d) - mean;
    acc += c * c * m;
  }
  return acc;
}

}  // namespace oracle
