#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

namespace digitwalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational `numerator / 2^exponent`.
///
/// The representation is canonical: the exponent is minimal, so the numerator
/// is odd whenever the exponent is positive, and zero is stored as 0/2^0.
/// All probability masses in this library are values of this type.
class Dyadic {
 public:
  Dyadic() = default;

  Dyadic(BigInt numerator, unsigned exponent)
      : num_(std::move(numerator)), exp_(exponent) {
    canonicalize();
  }

  explicit Dyadic(long long integer_value) : num_(integer_value), exp_(0) {}

  /// 2^k for any integer k; negative k gives 1/2^|k|.
  static Dyadic pow2(int k) {
    return k >= 0 ? Dyadic(BigInt(1) << k, 0)
                  : Dyadic(BigInt(1), static_cast<unsigned>(-k));
  }

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  bool is_zero() const { return num_.is_zero(); }

  /// This value times 2^k, exact.
  Dyadic times_pow2(int k) const {
    if (k >= 0) return Dyadic(num_ << k, exp_);
    return Dyadic(num_, exp_ + static_cast<unsigned>(-k));
  }

  Rational to_rational() const {
    return Rational(num_, BigInt(1) << exp_);
  }

  double to_double() const { return to_rational().convert_to<double>(); }

  /// "p/2^e", or a plain integer when the exponent is zero.
  std::string to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/2^" + std::to_string(exp_);
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << (e - a.exp_)) - (b.num_ << (e - b.exp_)), e);
  }

  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num_, a.exp_); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

 private:
  static int cmp(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    BigInt lhs = a.num_ << (e - a.exp_);
    BigInt rhs = b.num_ << (e - b.exp_);
    return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
  }

  void canonicalize() {
    if (num_.is_zero()) {
      exp_ = 0;
      return;
    }
    if (exp_ > 0) {
      BigInt mag = num_ < 0 ? BigInt(-num_) : num_;
      unsigned tz = boost::multiprecision::lsb(mag);
      unsigned k = std::min(tz, exp_);
      if (k > 0) {
        num_ >>= k;
        exp_ -= k;
      }
    }
  }

  BigInt num_ = 0;
  unsigned exp_ = 0;
};

/// Lowest-terms rational as a "p/q" string (q omitted when 1).
inline std::string rational_string(const Rational& r) {
  BigInt den = boost::multiprecision::denominator(r);
  std::string s = boost::multiprecision::numerator(r).str();
  if (den != 1) s += "/" + den.str();
  return s;
}

}  // namespace digitwalk
