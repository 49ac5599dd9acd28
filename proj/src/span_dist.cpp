#include "digitwalk/span_dist.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace digitwalk {

namespace {

const BigInt kZero = 0;

unsigned common_trailing_zeros(const std::vector<BigInt>& nums, unsigned cap) {
  unsigned best = cap;
  for (const BigInt& n : nums) {
    if (n.is_zero()) continue;
    best = std::min(best, boost::multiprecision::lsb(n));
    if (best == 0) break;
  }
  return best;
}

}  // namespace

SpanDist::SpanDist(int min_offset, unsigned exponent,
                   std::vector<BigInt> numerators)
    : min_offset_(min_offset),
      exponent_(exponent),
      numerators_(std::move(numerators)) {
  if (numerators_.empty())
    throw std::invalid_argument("SpanDist: empty span");
  BigInt sum = 0;
  for (const BigInt& n : numerators_) {
    if (n < 0) throw std::invalid_argument("SpanDist: negative mass");
    sum += n;
  }
  if (sum != BigInt(1) << exponent_)
    throw std::invalid_argument("SpanDist: masses must sum to exactly 1");
  if (numerators_.front().is_zero() || numerators_.back().is_zero())
    throw std::invalid_argument("SpanDist: support bounds must be tight");
  unsigned k = common_trailing_zeros(numerators_, exponent_);
  if (k > 0) {
    for (BigInt& n : numerators_) n >>= k;
    exponent_ -= k;
  }
}

SpanDist SpanDist::point(int k) {
  return SpanDist(k, 0, std::vector<BigInt>{BigInt(1)});
}

const BigInt& SpanDist::numerator(int d) const {
  if (d < min_offset_ || d > max_offset()) return kZero;
  return numerators_[static_cast<std::size_t>(d - min_offset_)];
}

SpanDist shift(const SpanDist& d, int k) {
  return SpanDist(d.min_offset() + k, d.exponent(), d.numerators());
}

SpanDist phi(const SpanDist& left, const SpanDist& right) {
  unsigned e = std::max(left.exponent(), right.exponent()) + 1;
  unsigned ls = e - 1 - left.exponent();
  unsigned rs = e - 1 - right.exponent();
  int lo = std::min(left.min_offset() - 1, right.min_offset() + 1);
  int hi = std::max(left.max_offset() - 1, right.max_offset() + 1);
  std::vector<BigInt> nums(static_cast<std::size_t>(hi - lo + 1));
  for (int d = left.min_offset(); d <= left.max_offset(); ++d)
    nums[static_cast<std::size_t>(d - 1 - lo)] += left.numerator(d) << ls;
  for (int d = right.min_offset(); d <= right.max_offset(); ++d)
    nums[static_cast<std::size_t>(d + 1 - lo)] += right.numerator(d) << rs;
  return SpanDist(lo, e, std::move(nums));
}

SpanDist convolve(const SpanDist& a, const SpanDist& b) {
  int lo = a.min_offset() + b.min_offset();
  int hi = a.max_offset() + b.max_offset();
  std::vector<BigInt> nums(static_cast<std::size_t>(hi - lo + 1));
  for (int i = a.min_offset(); i <= a.max_offset(); ++i) {
    const BigInt& ai = a.numerator(i);
    if (ai.is_zero()) continue;
    for (int j = b.min_offset(); j <= b.max_offset(); ++j) {
      const BigInt& bj = b.numerator(j);
      if (bj.is_zero()) continue;
      nums[static_cast<std::size_t>(i + j - lo)] += ai * bj;
    }
  }
  return SpanDist(lo, a.exponent() + b.exponent(), std::move(nums));
}

SpanDist reflect(const SpanDist& d) {
  std::vector<BigInt> nums(d.numerators().rbegin(), d.numerators().rend());
  return SpanDist(-d.max_offset(), d.exponent(), std::move(nums));
}

Rational mean(const SpanDist& d) {
  BigInt acc = 0;
  for (int j = d.min_offset(); j <= d.max_offset(); ++j)
    acc += BigInt(j) * d.numerator(j);
  return Rational(acc, BigInt(1) << d.exponent());
}

Rational variance(const SpanDist& d) {
  BigInt acc2 = 0;
  for (int j = d.min_offset(); j <= d.max_offset(); ++j)
    acc2 += BigInt(j) * j * d.numerator(j);
  Rational m = mean(d);
  return Rational(acc2, BigInt(1) << d.exponent()) - m * m;
}

Rational central_moment(const SpanDist& d, unsigned k) {
  Rational m = mean(d);
  Rational acc = 0;
  Rational scale(1, BigInt(1) << d.exponent());
  for (int j = d.min_offset(); j <= d.max_offset(); ++j) {
    if (d.numerator(j).is_zero()) continue;
    Rational centered = Rational(j) - m;
    Rational pw = 1;
    for (unsigned i = 0; i < k; ++i) pw *= centered;
    acc += pw * Rational(d.numerator(j)) * scale;
  }
  return acc;
}

Rational expect_abs(const SpanDist& d) {
  BigInt acc = 0;
  for (int j = d.min_offset(); j <= d.max_offset(); ++j)
    acc += BigInt(j < 0 ? -j : j) * d.numerator(j);
  return Rational(acc, BigInt(1) << d.exponent());
}

Rational expect_call(const SpanDist& d, int strike) {
  BigInt acc = 0;
  for (int j = std::max(strike + 1, d.min_offset()); j <= d.max_offset(); ++j)
    acc += BigInt(j - strike) * d.numerator(j);
  return Rational(acc, BigInt(1) << d.exponent());
}

Dyadic tail_nonneg(const SpanDist& d) {
  BigInt acc = 0;
  for (int j = std::max(0, d.min_offset()); j <= d.max_offset(); ++j)
    acc += d.numerator(j);
  return Dyadic(acc, d.exponent());
}

Dyadic tail_nonpos(const SpanDist& d) {
  BigInt acc = 0;
  for (int j = d.min_offset(); j <= std::min(0, d.max_offset()); ++j)
    acc += d.numerator(j);
  return Dyadic(acc, d.exponent());
}

std::pair<int, int> support_bounds(const SpanDist& d) {
  return {d.min_offset(), d.max_offset()};
}

std::string to_json_string(const SpanDist& d) {
  nlohmann::json j;
  j["min_offset"] = d.min_offset();
  j["exponent"] = d.exponent();
  nlohmann::json arr = nlohmann::json::array();
  for (const BigInt& n : d.numerators()) arr.push_back(n.str());
  j["numerators"] = std::move(arr);
  return j.dump();
}

SpanDist span_dist_from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int min_offset = j.at("min_offset").get<int>();
  unsigned exponent = j.at("exponent").get<unsigned>();
  std::vector<BigInt> nums;
  for (const auto& item : j.at("numerators")) {
    if (item.is_string())
      nums.emplace_back(item.get<std::string>());
    else
      nums.emplace_back(item.get<long long>());
  }
  return SpanDist(min_offset, exponent, std::move(nums));
}

std::string to_csv_string(const SpanDist& d) {
  std::ostringstream out;
  out << "offset,numerator,exponent\n";
  for (int j = d.min_offset(); j <= d.max_offset(); ++j)
    out << j << "," << d.numerator(j).str() << "," << d.exponent() << "\n";
  return out.str();
}

SpanDist span_dist_from_csv_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_min = false;
  int min_offset = 0;
  int expected_next = 0;
  unsigned exponent = 0;
  std::vector<BigInt> nums;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("offset", 0) == 0) continue;  // header
    std::istringstream row(line);
    std::string off_s, num_s, exp_s;
    if (!std::getline(row, off_s, ',') || !std::getline(row, num_s, ',') ||
        !std::getline(row, exp_s))
      throw std::invalid_argument("SpanDist CSV: malformed row: " + line);
    int off = std::stoi(off_s);
    unsigned exp = static_cast<unsigned>(std::stoul(exp_s));
    if (!have_min) {
      min_offset = off;
      expected_next = off;
      exponent = exp;
      have_min = true;
    }
    if (off != expected_next)
      throw std::invalid_argument("SpanDist CSV: offsets must be contiguous");
    if (exp != exponent)
      throw std::invalid_argument("SpanDist CSV: mixed exponents");
    nums.emplace_back(num_s);
    ++expected_next;
  }
  return SpanDist(min_offset, exponent, std::move(nums));
}

}  // namespace digitwalk
