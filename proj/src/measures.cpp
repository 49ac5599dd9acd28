#include "digitwalk/measures.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace digitwalk {

unsigned binary_weight(std::uint64_t n) {
  return static_cast<unsigned>(std::popcount(n));
}

Dyadic mu1_value(int k) {
  if (k > 1) return Dyadic();
  return Dyadic::pow2(k - 2);
}

MeasureCache::MeasureCache(std::size_t max_entries)
    : max_entries_(max_entries) {}

std::shared_ptr<const SpanDist> MeasureCache::find(std::uint64_t odd) const {
  std::shared_lock lock(mutex_);
  ++lookups_;
  auto it = entries_.find(odd);
  if (it == entries_.end()) return nullptr;
  ++hits_;
  return it->second;
}

void MeasureCache::insert(std::uint64_t odd,
                          std::shared_ptr<const SpanDist> dist) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(odd, std::move(dist));
  if (!inserted) return;
  approx_bytes_ += it->second->size() * sizeof(BigInt) + 64;
  while (max_entries_ > 0 && entries_.size() > max_entries_) {
    auto last = std::prev(entries_.end());
    approx_bytes_ -= last->second->size() * sizeof(BigInt) + 64;
    entries_.erase(last);
  }
}

std::shared_ptr<const SpanDist> MeasureCache::p_of(std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("p_of: t must be >= 1");
  t >>= std::countr_zero(t);
  if (t == 1) {
    static const auto delta0 =
        std::make_shared<const SpanDist>(SpanDist::point(0));
    return delta0;
  }
  if (auto hit = find(t)) return hit;
  std::uint64_t s = (t - 1) / 2;
  auto left = p_of(s + 1);
  auto right = p_of(s);
  auto dist = std::make_shared<const SpanDist>(phi(*left, *right));
  insert(t, dist);
  return dist;
}

MeasureCache::Stats MeasureCache::stats() const {
  std::shared_lock lock(mutex_);
  return Stats{lookups_, hits_, entries_.size(), approx_bytes_};
}

void MeasureCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
  approx_bytes_ = 0;
}

MeasureCache& measure_cache() {
  static MeasureCache cache;
  return cache;
}

std::shared_ptr<const SpanDist> p_of(std::uint64_t t) {
  return measure_cache().p_of(t);
}

std::shared_ptr<const SpanDist> p_of(const Word& w) {
  return measure_cache().p_of(word_to_odd(w));
}

Dyadic mu_value(const SpanDist& p, int d) {
  // mu(d) = sum over support of P(j) * 2^(d - j - 2), restricted to d-j <= 1.
  Dyadic acc;
  for (int j = std::max(p.min_offset(), d - 1); j <= p.max_offset(); ++j) {
    const BigInt& n = p.numerator(j);
    if (n.is_zero()) continue;
    acc = acc + Dyadic(n, p.exponent()).times_pow2(d - j - 2);
  }
  return acc;
}

Dyadic MuView::value(int d) const { return mu_value(*base, d); }

MuView mu_window(std::uint64_t t, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("mu_window: lo must be <= hi");
  MuView view;
  view.base = p_of(t);
  view.lo = lo;
  view.hi = hi;
  const SpanDist& p = *view.base;

  // Left of the support everything is geometric: mu(d) = c * 2^d.
  Dyadic c;
  for (int j = p.min_offset(); j <= p.max_offset(); ++j) {
    const BigInt& n = p.numerator(j);
    if (n.is_zero()) continue;
    c = c + Dyadic(n, p.exponent()).times_pow2(-j - 2);
  }
  view.tail_coefficient = c;

  view.window.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int d = lo; d <= hi; ++d) view.window.push_back(mu_value(p, d));

  // Mass below lo: a pure geometric sum below the support plus explicit
  // values from there up to lo - 1.
  int ms = p.min_offset();
  Dyadic below;
  if (lo <= ms) {
    below = c.times_pow2(lo);  // sum of c * 2^d for d < lo
  } else {
    below = c.times_pow2(ms);
    for (int d = ms; d <= lo - 1; ++d) below = below + mu_value(p, d);
  }
  view.mass_below = below;

  Dyadic above;
  for (int d = hi + 1; d <= p.max_offset() + 1; ++d)
    above = above + mu_value(p, d);
  view.mass_above = above;

  Dyadic total = view.mass_below + view.mass_above;
  for (const Dyadic& v : view.window) total = total + v;
  if (total != Dyadic(1))
    throw std::logic_error("mu_window: window and tails do not sum to 1");
  return view;
}

MuView mu_window(std::uint64_t t) {
  auto p = p_of(t);
  return mu_window(t, p->min_offset() - 8, p->max_offset() + 1);
}

Dyadic p_from_mu(const std::function<Dyadic(int)>& mu, int d) {
  return mu(d + 1).times_pow2(1) - mu(d + 2);
}

Dyadic mu_nonneg_mass(std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("mu_nonneg_mass: t must be >= 1");
  while ((t & 1u) == 0) t >>= 1;
  if (t == 1) return Dyadic(3, 2);
  return mu_nonneg_mass(odd_to_word(t));
}

Dyadic mu_nonneg_mass(const Word& v) {
  std::size_t k = v.count_r() + 2;
  Word grown = v.append(Letter::R).concat(Word::repeat(Letter::L, k));
  return tail_nonneg(*p_of(grown));
}

SpanDist limit_iterate(const Word& v, unsigned n) {
  std::uint64_t t = word_to_odd(v);
  std::uint64_t s = (t - 1) / 2;
  auto p_left = p_of(s + 1);  // the left component of the pair at v
  auto p_v = p_of(t);

  unsigned e = n + 1 + std::max(p_left->exponent(), p_v->exponent());
  int lo = std::min(p_left->min_offset() - static_cast<int>(n) - 1,
                    p_v->min_offset() - static_cast<int>(n) + 1);
  int hi = std::max(p_left->max_offset() - static_cast<int>(n) - 1,
                    p_v->max_offset() + 1);
  std::vector<BigInt> nums(static_cast<std::size_t>(hi - lo + 1));

  // Weight 2^-(n+1) on the left component shifted by -(n+1).
  unsigned ls = e - (n + 1) - p_left->exponent();
  for (int d = p_left->min_offset(); d <= p_left->max_offset(); ++d) {
    const BigInt& num = p_left->numerator(d);
    if (num.is_zero()) continue;
    nums[static_cast<std::size_t>(d - static_cast<int>(n) - 1 - lo)] +=
        num << ls;
  }
  // Weights 2^-(2-i) on the base shifted by i, for i = -(n-1) .. 1.
  for (int i = -static_cast<int>(n) + 1; i <= 1; ++i) {
    unsigned vs = e - static_cast<unsigned>(2 - i) - p_v->exponent();
    for (int d = p_v->min_offset(); d <= p_v->max_offset(); ++d) {
      const BigInt& num = p_v->numerator(d);
      if (num.is_zero()) continue;
      nums[static_cast<std::size_t>(d + i - lo)] += num << vs;
    }
  }
  return SpanDist(lo, e, std::move(nums));
}

std::map<int, std::uint64_t> empirical_frequency(std::uint64_t t,
                                                 std::uint64_t n_max) {
  if (n_max == 0)
    throw std::invalid_argument("empirical_frequency: n_max must be >= 1");
  if (t > std::numeric_limits<std::uint64_t>::max() - n_max)
    throw std::overflow_error("empirical_frequency: t + n_max overflows");
  std::map<int, std::uint64_t> counts;
  for (std::uint64_t n = 0; n < n_max; ++n) {
    int d = static_cast<int>(std::popcount(n + t)) -
            static_cast<int>(std::popcount(n));
    ++counts[d];
  }
  return counts;
}

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
}  // namespace

double clt_probe(unsigned n) {
  if (n == 0) throw std::invalid_argument("clt_probe: n must be >= 1");
  auto p = p_of(Word::alternating(n));
  double sigma = std::sqrt(variance(*p).convert_to<double>());
  Rational denom(BigInt(1) << p->exponent());
  double dist = 0.0;
  BigInt cum = 0;
  // Half-integer grid: compare P(X <= k) with Phi((k + 1/2) / sigma).
  for (int k = p->min_offset() - 1; k <= p->max_offset(); ++k) {
    if (k >= p->min_offset()) cum += p->numerator(k);
    double exact = Rational(Rational(cum) / denom).convert_to<double>();
    double gauss = normal_cdf((static_cast<double>(k) + 0.5) / sigma);
    dist = std::max(dist, std::abs(exact - gauss));
  }
  return dist;
}

}  // namespace digitwalk
