#include "digitwalk/verify.hpp"

#include "digitwalk/measures.hpp"
#include "digitwalk/span_dist.hpp"
#include "digitwalk/trees.hpp"
#include "digitwalk/words.hpp"

#include <cstdint>
#include <sstream>

namespace digitwalk::verify {

namespace {

constexpr std::size_t kMaxNotes = 8;

void fail(SuiteReport& report, const std::string& message) {
  ++report.failures;
  if (report.notes.size() < kMaxNotes) report.notes.push_back(message);
}

void check(SuiteReport& report, bool condition, const std::string& message) {
  ++report.checks;
  if (!condition) fail(report, message);
}

template <typename Fn>
void for_each_word(unsigned min_len, unsigned max_len, Fn&& fn) {
  for (unsigned len = min_len; len <= max_len; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask)
      fn(Word::from_mask(mask, len));
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// 2k/3 + 8/9 + (-1)^k / (9 * 2^k): the alternating-word variance.
Rational alternating_variance(unsigned k) {
  Rational r = Rational(2 * static_cast<long long>(k), 3) + Rational(8, 9);
  Rational tail(1, BigInt(9) << k);
  return (k % 2 == 0) ? Rational(r + tail) : Rational(r - tail);
}

// 2 - (1/2)^k: the constant-word variance.
Rational constant_variance(unsigned k) {
  return Rational((BigInt(1) << (k + 1)) - 1, BigInt(1) << k);
}

bool is_constant(const Word& w) {
  return w.count_l() == 0 || w.count_r() == 0;
}

bool is_alternating(const Word& w) {
  for (std::size_t i = 1; i < w.length(); ++i)
    if (w.at(i) == w.at(i - 1)) return false;
  return true;
}

}  // namespace

SuiteReport codec(unsigned max_len) {
  SuiteReport report{"codec"};
  for_each_word(0, max_len, [&](const Word& w) {
    std::uint64_t t = word_to_odd(w);
    check(report, odd_to_word(t) == w,
          "round trip failed for word " + w.str());
  });
  // Appending a letter doubles and steps by ±1.
  for_each_word(0, std::min(max_len, 12u), [&](const Word& w) {
    std::uint64_t t = word_to_odd(w);
    check(report, word_to_odd(w.append(Letter::L)) == 2 * t - 1 &&
                      word_to_odd(w.append(Letter::R)) == 2 * t + 1,
          "append step mismatch at word " + w.str());
  });
  for_each_word(0, std::min(max_len, 10u), [&](const Word& w) {
    check(report, w.bar().bar() == w && w.reversed().reversed() == w &&
                      w.bar().reversed() == w.reversed().bar(),
          "bar/rev algebra failed at word " + w.str());
  });
  return report;
}

SuiteReport symmetries(unsigned max_len) {
  SuiteReport report{"symmetries"};
  for_each_word(0, max_len, [&](const Word& w) {
    const SpanDist& p = *p_of(w);
    check(report, p == reflect(*p_of(w.bar())),
          "letter-swap reflection failed at word " + w.str());
    check(report, p == *p_of(w.reversed()),
          "reversal invariance failed at word " + w.str());
  });
  return report;
}

SuiteReport variance_bounds(unsigned max_len, unsigned max_k) {
  SuiteReport report{"variance"};
  for (unsigned k = 0; k <= max_k; ++k) {
    check(report,
          variance(*p_of(Word::repeat(Letter::L, k))) == constant_variance(k),
          "constant-word variance mismatch at k=" + std::to_string(k));
    check(report,
          variance(*p_of(Word::repeat(Letter::R, k))) == constant_variance(k),
          "constant-word variance mismatch (R) at k=" + std::to_string(k));
    check(report,
          variance(*p_of(Word::alternating(k))) == alternating_variance(k),
          "alternating-word variance mismatch at n=" + std::to_string(k));
  }
  for_each_word(0, max_len, [&](const Word& w) {
    unsigned len = static_cast<unsigned>(w.length());
    Rational v = variance(*p_of(w));
    Rational lo = constant_variance(len);
    Rational hi = alternating_variance(len);
    check(report, lo <= v && v <= hi,
          "variance bounds violated at word " + w.str());
    check(report, (v == lo) == is_constant(w),
          "variance lower bound equality case wrong at word " + w.str());
    check(report, (v == hi) == is_alternating(w),
          "variance upper bound equality case wrong at word " + w.str());
    if (!w.empty()) {
      unsigned blocks = static_cast<unsigned>(w.block_count());
      check(report,
            alternating_variance(blocks) <= v &&
                v < Rational(2 * static_cast<long long>(blocks)),
            "block-count variance bounds violated at word " + w.str());
    }
  });
  return report;
}

SuiteReport support(unsigned max_len) {
  SuiteReport report{"support"};
  for_each_word(0, max_len, [&](const Word& w) {
    const SpanDist& p = *p_of(w);
    int lo = -static_cast<int>(w.count_l()) - 1;
    int hi = static_cast<int>(w.count_r()) + 1;
    check(report, support_bounds(p) == std::pair<int, int>(lo, hi),
          "support bounds wrong at word " + w.str());
    check(report,
          p.mass(lo) == Dyadic::pow2(lo) && p.mass(hi) == Dyadic::pow2(-hi),
          "boundary masses wrong at word " + w.str());
  });
  return report;
}

SuiteReport oracle(unsigned max_len) {
  SuiteReport report{"oracle"};
  for_each_word(0, max_len, [&](const Word& w) {
    check(report, enumerate_distribution(tree_of(w)) == *p_of(w),
          "stopped-walk law differs from the recursion at word " + w.str());
  });
  return report;
}

SuiteReport wald(unsigned max_len) {
  SuiteReport report{"wald"};
  for_each_word(0, max_len, [&](const Word& w) {
    check(report, expected_stop(tree_of(w)) == variance(*p_of(w)),
          "expected steps != variance at word " + w.str());
  });
  return report;
}

SuiteReport peacock(unsigned chains, unsigned length, std::uint64_t seed) {
  SuiteReport report{"peacock"};
  std::uint64_t abs_ties = 0, variance_ties = 0;
  for (unsigned chain = 0; chain < chains; ++chain) {
    std::uint64_t state = mix64(seed ^ mix64(chain + 1));
    Word w;
    auto prev = p_of(w);
    for (unsigned step = 0; step < length; ++step) {
      state = mix64(state + 0x9E3779B97F4A7C15ull);
      w = w.append((state & 1u) ? Letter::R : Letter::L);
      auto next = p_of(w);
      std::string at = " at chain " + std::to_string(chain) + " prefix " +
                       std::to_string(step + 1);
      check(report, expect_abs(*next) >= expect_abs(*prev),
            "E|x| decreased" + at);
      check(report, variance(*next) >= variance(*prev),
            "variance decreased" + at);
      for (int strike = -2; strike <= 2; ++strike)
        check(report,
              expect_call(*next, strike) >= expect_call(*prev, strike),
              "call payoff decreased" + at);
      check(report,
            (next->max_offset() - next->min_offset()) ==
                (prev->max_offset() - prev->min_offset()) + 1,
            "support diameter did not grow by 1" + at);
      if (expect_abs(*next) == expect_abs(*prev)) ++abs_ties;
      if (variance(*next) == variance(*prev)) ++variance_ties;
      prev = next;
    }
  }
  report.notes.push_back(
      "non-strict steps: E|x| " + std::to_string(abs_ties) + ", variance " +
      std::to_string(variance_ties));
  return report;
}

SuiteReport stabilization(unsigned max_len_tails, unsigned max_len_closed,
                          unsigned max_n) {
  SuiteReport report{"stabilization"};
  for_each_word(0, max_len_tails, [&](const Word& v) {
    unsigned k0 = static_cast<unsigned>(v.count_r()) + 2;
    Word grown = v.append(Letter::R);
    for (unsigned k = 0; k < k0; ++k) grown = grown.append(Letter::L);
    Dyadic frozen = tail_nonneg(*p_of(grown));
    check(report, frozen > Dyadic(1, 1),
          "limit tail mass not above 1/2 at word " + v.str());
    bool stable = true;
    for (unsigned k = k0 + 1; k <= k0 + 4; ++k) {
      grown = grown.append(Letter::L);
      if (tail_nonneg(*p_of(grown)) != frozen) stable = false;
    }
    check(report, stable, "tail mass failed to freeze at word " + v.str());
  });
  for_each_word(0, max_len_closed, [&](const Word& v) {
    for (unsigned n = 0; n <= max_n; ++n) {
      Word grown = v.append(Letter::R).concat(Word::repeat(Letter::L, n));
      check(report, limit_iterate(v, n) == *p_of(grown),
            "closed-form iterate differs at word " + v.str() + ", n=" +
                std::to_string(n));
    }
  });
  return report;
}

SuiteReport deconvolution(std::uint64_t max_t) {
  SuiteReport report{"deconvolution"};
  for (std::uint64_t t = 3; t <= max_t; t += 2) {
    auto p = p_of(t);
    auto mu = [&](int d) { return mu_value(*p, d); };
    bool all_match = true;
    for (int d = p->min_offset(); d <= p->max_offset(); ++d)
      if (p_from_mu(mu, d) != p->mass(d)) all_match = false;
    if (p_from_mu(mu, p->max_offset() + 1) != Dyadic() ||
        p_from_mu(mu, p->min_offset() - 1) != Dyadic())
      all_match = false;
    check(report, all_match,
          "deconvolution round trip failed at t=" + std::to_string(t));
  }
  return report;
}

std::vector<std::string> suite_names() {
  return {"codec",   "symmetries",    "variance",      "support", "oracle",
          "wald",    "peacock",       "stabilization", "deconvolution"};
}

}  // namespace digitwalk::verify
