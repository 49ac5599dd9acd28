#include "digitwalk/span_dist.hpp"

#include "oracle_support.hpp"

#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>

using namespace digitwalk;

TEST_SUITE_BEGIN("span_dist");

namespace {

SpanDist delta(int k) { return SpanDist::point(k); }

// The first nontrivial distribution: half at -1, half at +1.
SpanDist coin() {
  return SpanDist(-1, 1, {BigInt(1), BigInt(0), BigInt(1)});
}

// Random normalized distribution: 2^e unit masses thrown at a random span,
// one unit pinned at each end so the bounds stay tight.
SpanDist random_dist(std::mt19937_64& rng) {
  unsigned e = 3 + static_cast<unsigned>(rng() % 8);
  int lo = -4 - static_cast<int>(rng() % 4);
  int width = 2 + static_cast<int>(rng() % 8);
  std::vector<BigInt> nums(static_cast<std::size_t>(width));
  nums.front() = 1;
  nums.back() += 1;
  std::uint64_t units = (std::uint64_t(1) << e) - 2;
  for (std::uint64_t i = 0; i < units; ++i)
    nums[rng() % static_cast<std::uint64_t>(width)] += 1;
  return SpanDist(lo, e, std::move(nums));
}

}  // namespace

TEST_CASE("construction validates the invariants") {
  CHECK_THROWS_AS(SpanDist(0, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(SpanDist(0, 1, {BigInt(1)}), std::invalid_argument);
  CHECK_THROWS_AS(SpanDist(0, 1, {BigInt(0), BigInt(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpanDist(0, 1, {BigInt(3), BigInt(-1)}),
                  std::invalid_argument);
  SUBCASE("the shared exponent is reduced to its minimum") {
    SpanDist d(0, 3, {BigInt(2), BigInt(6)});
    CHECK(d.exponent() == 2);
    CHECK(d.numerators() == std::vector<BigInt>{BigInt(1), BigInt(3)});
  }
}

TEST_CASE("shift translates the support and keeps the mass") {
  CHECK(shift(delta(0), 0) == delta(0));
  CHECK(shift(delta(0), 1) == delta(1));
  SpanDist p3 = coin();
  SpanDist shifted = shift(p3, -1);
  CHECK(shifted.min_offset() == -2);
  CHECK(shifted.mass(-2) == Dyadic::pow2(-1));
  CHECK(shifted.mass(0) == Dyadic::pow2(-1));
}

TEST_CASE("phi mixes the shifted halves") {
  SpanDist p3 = phi(delta(0), delta(0));
  CHECK(p3 == coin());

  // Mixing the two- and three-point cases lands on the known five-point
  // symmetric distribution.
  SpanDist p5(-2, 2, {BigInt(1), BigInt(0), BigInt(1), BigInt(2)});
  SpanDist p11 = phi(p3, p5);
  CHECK(p11.mass(-2) == Dyadic(BigInt(1), 2));
  CHECK(p11.mass(-1) == Dyadic(BigInt(1), 3));
  CHECK(p11.mass(0) == Dyadic(BigInt(1), 2));
  CHECK(p11.mass(1) == Dyadic(BigInt(1), 3));
  CHECK(p11.mass(2) == Dyadic(BigInt(1), 2));
  CHECK(mean(p11) == Rational(0));
}

TEST_CASE("convolution identities") {
  SpanDist p3 = coin();
  CHECK(convolve(delta(0), p3) == p3);
  CHECK(convolve(p3, delta(-1)) == shift(p3, -1));
  SpanDist sq = convolve(p3, p3);
  CHECK(sq.mass(-2) == Dyadic(BigInt(1), 2));
  CHECK(sq.mass(0) == Dyadic(BigInt(1), 1));
  CHECK(sq.mass(2) == Dyadic(BigInt(1), 2));
}

TEST_CASE("moments and tails on small cases") {
  SpanDist p3 = coin();
  SpanDist p5(-2, 2, {BigInt(1), BigInt(0), BigInt(1), BigInt(2)});
  CHECK(variance(p3) == Rational(1));
  CHECK(variance(p5) == Rational(3, 2));
  CHECK(tail_nonneg(p3) == Dyadic(BigInt(1), 1));
  CHECK(tail_nonneg(p5) == Dyadic(BigInt(3), 2));
  CHECK(tail_nonpos(p5) == Dyadic(BigInt(1), 1));
  CHECK(tail_nonneg(p5) + tail_nonpos(p5) == Dyadic(1) + p5.mass(0));
  CHECK(support_bounds(p5) == std::pair<int, int>(-2, 1));
  CHECK(central_moment(p3, 4) == Rational(1));
  CHECK(expect_abs(p5) == Rational(1));
  CHECK(expect_call(p5, 0) == Rational(1, 2));
}

TEST_CASE("reflect mirrors the distribution") {
  SpanDist p5(-2, 2, {BigInt(1), BigInt(0), BigInt(1), BigInt(2)});
  SpanDist p7 = reflect(p5);
  CHECK(p7.mass(-1) == Dyadic(BigInt(1), 1));
  CHECK(p7.mass(0) == Dyadic(BigInt(1), 2));
  CHECK(p7.mass(2) == Dyadic(BigInt(1), 2));
  CHECK(reflect(p7) == p5);
  CHECK(variance(p7) == variance(p5));
  CHECK(mean(p7) == -mean(p5));
}

TEST_CASE("variance recursion under phi holds exactly for random pairs") {
  // The recursion is stated for centered inputs; symmetrizing a random
  // distribution centers it while leaving the variance arbitrary.
  auto symmetrized = [](const SpanDist& d) {
    int m = std::max(-d.min_offset(), d.max_offset());
    std::vector<BigInt> nums(static_cast<std::size_t>(2 * m + 1));
    for (int j = d.min_offset(); j <= d.max_offset(); ++j) {
      nums[static_cast<std::size_t>(j + m)] += d.numerator(j);
      nums[static_cast<std::size_t>(m - j)] += d.numerator(j);
    }
    return SpanDist(-m, d.exponent() + 1, std::move(nums));
  };
  std::mt19937_64 rng(20260810);
  for (int i = 0; i < 1000; ++i) {
    SpanDist a = symmetrized(random_dist(rng));
    SpanDist b = symmetrized(random_dist(rng));
    REQUIRE(mean(a) == Rational(0));
    CHECK(variance(phi(a, b)) == variance(a) / 2 + variance(b) / 2 + 1);
    CHECK(mean(phi(a, b)) == Rational(0));
  }
}

TEST_CASE("reflection and shift commute with convolution") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    SpanDist a = random_dist(rng);
    SpanDist b = random_dist(rng);
    CHECK(reflect(convolve(a, b)) == convolve(reflect(a), reflect(b)));
    int k = static_cast<int>(rng() % 7) - 3;
    CHECK(shift(convolve(a, b), k) == convolve(shift(a, k), b));
  }
}

TEST_CASE("serialization round trips bit-exactly") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    SpanDist d = random_dist(rng);
    CHECK(span_dist_from_json_string(to_json_string(d)) == d);
    CHECK(span_dist_from_csv_string(to_csv_string(d)) == d);
  }
  SUBCASE("output bytes are deterministic") {
    SpanDist d = coin();
    CHECK(to_json_string(d) == to_json_string(coin()));
    CHECK(to_csv_string(d) == to_csv_string(coin()));
  }
}

TEST_SUITE_END();
