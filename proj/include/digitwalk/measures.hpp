#pragma once

#include "digitwalk/span_dist.hpp"
#include "digitwalk/words.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>

namespace digitwalk {

/// Number of ones in the binary expansion.
unsigned binary_weight(std::uint64_t n);

/// The base measure at k: (1/2)^(2-k) for k <= 1, zero above.
Dyadic mu1_value(int k);

/// Memoized store for the centered measures P_t, keyed by odd t. Concurrent
/// readers share the map; insertion is exclusive. Entries are immutable once
/// cached. An optional entry cap evicts largest keys first (the interactive
/// tail of the cache; small keys are everyone's ancestors).
class MeasureCache {
 public:
  explicit MeasureCache(std::size_t max_entries = 0);

  /// P_t for any t >= 1: even t reduces to its odd part, P_1 is the point
  /// mass at 0, and odd t >= 3 follows the halving recursion.
  std::shared_ptr<const SpanDist> p_of(std::uint64_t t);

  struct Stats {
    std::uint64_t lookups = 0;
    std::uint64_t hits = 0;
    std::uint64_t entries = 0;
    std::uint64_t approx_bytes = 0;  // rough resident estimate
  };
  Stats stats() const;
  void clear();

 private:
  std::shared_ptr<const SpanDist> find(std::uint64_t odd) const;
  void insert(std::uint64_t odd, std::shared_ptr<const SpanDist> dist);

  mutable std::shared_mutex mutex_;
  std::map<std::uint64_t, std::shared_ptr<const SpanDist>> entries_;
  std::size_t max_entries_;
  mutable std::uint64_t lookups_ = 0;
  mutable std::uint64_t hits_ = 0;
  std::uint64_t approx_bytes_ = 0;
};

/// Process-wide cache used by the free functions below.
MeasureCache& measure_cache();

std::shared_ptr<const SpanDist> p_of(std::uint64_t t);
std::shared_ptr<const SpanDist> p_of(const Word& w);

/// Window of the digit-difference measure mu_t = mu_1 * P_t: exact values on
/// [lo, hi], the coefficient of the geometric left tail, and the exact masses
/// outside the window. The three parts sum to exactly 1.
struct MuView {
  std::shared_ptr<const SpanDist> base;  // P_t
  int lo = 0, hi = 0;
  std::vector<Dyadic> window;  // mu(d) for d in [lo, hi]
  Dyadic tail_coefficient;     // mu(d) = c * 2^d for d <= min support - 1
  Dyadic mass_below;           // sum of mu over d < lo
  Dyadic mass_above;           // sum of mu over d > hi

  /// Exact mu(d) anywhere.
  Dyadic value(int d) const;
};

/// Exact mu(d) from P via the finite base-measure sum.
Dyadic mu_value(const SpanDist& p, int d);

MuView mu_window(std::uint64_t t, int lo, int hi);

/// Default window: [min support - 8, max support + 1].
MuView mu_window(std::uint64_t t);

/// Deconvolution: P(d) = 2 mu(d+1) - mu(d+2).
Dyadic p_from_mu(const std::function<Dyadic(int)>& mu, int d);

/// Exact mu_t mass on d >= 0. For t = 1 this is 3/4 analytically; otherwise
/// the limit stabilizes after count_r(word) + 2 growth steps and is read off
/// a finite distribution.
Dyadic mu_nonneg_mass(std::uint64_t t);
Dyadic mu_nonneg_mass(const Word& v);

/// Closed form for the distribution after growing v by R and then n times L;
/// equals the recursion's value exactly.
SpanDist limit_iterate(const Word& v, unsigned n);

/// Counts of the digit-sum difference d over n < n_max; frequencies are
/// counts / n_max, exact by construction.
std::map<int, std::uint64_t> empirical_frequency(std::uint64_t t,
                                                 std::uint64_t n_max);

/// Sup distance, over the half-integer grid, between the exact CDF of the
/// variance-normalized alternating-word distribution of length n and the
/// standard normal CDF.
double clt_probe(unsigned n);

}  // namespace digitwalk
