#pragma once

#include "digitwalk/dyadic.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace digitwalk {

/// Finitely supported probability distribution on the integers.
///
/// Masses are held densely over the support span [min_offset, max_offset] as
/// integer numerators with one shared power-of-two denominator. Invariants,
/// enforced at construction: at least one entry, every numerator nonnegative,
/// first and last numerators nonzero (tight support bounds), numerators sum to
/// exactly 2^exponent (total mass 1). Interior zeros are allowed. The shared
/// exponent is reduced to its minimum, so equal distributions compare equal
/// memberwise. Values are immutable and safe to share across threads.
class SpanDist {
 public:
  SpanDist(int min_offset, unsigned exponent, std::vector<BigInt> numerators);

  /// Point mass at k.
  static SpanDist point(int k);

  int min_offset() const { return min_offset_; }
  int max_offset() const {
    return min_offset_ + static_cast<int>(numerators_.size()) - 1;
  }
  std::size_t size() const { return numerators_.size(); }
  unsigned exponent() const { return exponent_; }
  const std::vector<BigInt>& numerators() const { return numerators_; }

  /// Numerator at offset d; zero outside the span.
  const BigInt& numerator(int d) const;

  /// Exact mass at offset d (canonical dyadic), zero outside the span.
  Dyadic mass(int d) const { return Dyadic(numerator(d), exponent_); }

  bool operator==(const SpanDist& other) const {
    return min_offset_ == other.min_offset_ && exponent_ == other.exponent_ &&
           numerators_ == other.numerators_;
  }
  bool operator!=(const SpanDist& other) const { return !(*this == other); }

 private:
  int min_offset_;
  unsigned exponent_;
  std::vector<BigInt> numerators_;
};

/// Translate by k: result(j) = d(j - k).
SpanDist shift(const SpanDist& d, int k);

/// The mixing step: half of `left` shifted one left plus half of `right`
/// shifted one right.
SpanDist phi(const SpanDist& left, const SpanDist& right);

/// Exact convolution (law of the sum of independent draws).
SpanDist convolve(const SpanDist& a, const SpanDist& b);

/// Mirror image: result(j) = d(-j).
SpanDist reflect(const SpanDist& d);

Rational mean(const SpanDist& d);
Rational variance(const SpanDist& d);

/// k-th central moment, exact.
Rational central_moment(const SpanDist& d, unsigned k);

/// E|x| and E[(x - strike)^+]; exact, used for convex-order checks.
Rational expect_abs(const SpanDist& d);
Rational expect_call(const SpanDist& d, int strike);

/// Mass on d >= 0 (resp. d <= 0). The two overlap at 0, so their sum is
/// 1 + mass(0).
Dyadic tail_nonneg(const SpanDist& d);
Dyadic tail_nonpos(const SpanDist& d);

/// (min_offset, max_offset); both carry nonzero mass.
std::pair<int, int> support_bounds(const SpanDist& d);

/// JSON object {min_offset, exponent, numerators[]} with numerators as
/// decimal strings; bit-exact round trip.
std::string to_json_string(const SpanDist& d);
SpanDist span_dist_from_json_string(const std::string& text);

/// CSV rows (offset, numerator, exponent) with a header line; bit-exact
/// round trip.
std::string to_csv_string(const SpanDist& d);
SpanDist span_dist_from_csv_string(const std::string& text);

}  // namespace digitwalk
