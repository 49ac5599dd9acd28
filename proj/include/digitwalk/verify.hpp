#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace digitwalk::verify {

struct SuiteReport {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;  // first failures and informational lines
  bool ok() const { return failures == 0; }
};

/// Word/odd-integer codec round trips (exhaustive over word lengths up to
/// max_len) plus the append step identity and the bar/rev involution algebra.
SuiteReport codec(unsigned max_len = 20);

/// Letter-swap reflection and word-reversal invariance of the distributions,
/// exhaustive up to max_len.
SuiteReport symmetries(unsigned max_len = 12);

/// Closed-form variance at constant and alternating words up to max_k, and
/// the two-sided bounds (with their equality cases) for every word up to
/// max_len, including the block-count bounds.
SuiteReport variance_bounds(unsigned max_len = 12, unsigned max_k = 30);

/// Tight support bounds and the exact boundary masses for every word up to
/// max_len.
SuiteReport support(unsigned max_len = 12);

/// Tree-enumerated stopped-walk law equals the recursion, exhaustive up to
/// max_len.
SuiteReport oracle(unsigned max_len = 12);

/// Expected stopping steps equals the variance, exhaustive up to max_len.
SuiteReport wald(unsigned max_len = 12);

/// Convex-order monotonicity along pseudorandom growth chains: E[psi]
/// nondecreasing for |x|, x^2 and the call payoffs at strikes -2..2, span
/// growing by exactly one per step, variance nondecreasing. Ties of the
/// convex functionals are reported as notes, not failures.
SuiteReport peacock(unsigned chains = 100, unsigned length = 30,
                    std::uint64_t seed = 1);

/// The nonnegative-tail mass freezes after count_r + 2 growth steps
/// (checked over five consecutive step counts, all words up to
/// max_len_tails), the frozen value exceeds 1/2, and the closed-form iterate
/// matches the recursion for words up to max_len_closed and up to max_n
/// trailing growth steps.
SuiteReport stabilization(unsigned max_len_tails = 10,
                          unsigned max_len_closed = 8, unsigned max_n = 8);

/// Recover every point mass from the convolved measure via the
/// deconvolution identity, for all odd t up to max_t.
SuiteReport deconvolution(std::uint64_t max_t = 4096);

std::vector<std::string> suite_names();

}  // namespace digitwalk::verify
