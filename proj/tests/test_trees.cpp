#include "digitwalk/trees.hpp"

#include "digitwalk/measures.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace digitwalk;

TEST_SUITE_BEGIN("trees");

namespace {

// S fits inside T when S is T with some subtrees collapsed to leaves.
bool substructure(const PlanarTree& s, const PlanarTree& t) {
  if (s.is_leaf()) return true;
  if (t.is_leaf()) return false;
  return substructure(s.left(), t.left()) &&
         substructure(s.right(), t.right());
}

std::vector<int> path_bits(std::uint64_t mask, unsigned len) {
  std::vector<int> path(len);
  for (unsigned i = 0; i < len; ++i) path[i] = (mask >> i) & 1u ? 1 : -1;
  return path;
}

}  // namespace

TEST_CASE("growth reproduces the expected tree shapes") {
  CHECK(to_bracket(tree_of(Word())) == "[•,•]");
  CHECK(to_bracket(tree_of(Word::parse("L"))) == "[[•,•],•]");
  CHECK(to_bracket(tree_of(Word::parse("LR"))) ==
        "[[•,•],[[•,•],•]]");
  CHECK(tree_of_odd(1).is_leaf());
  CHECK(tree_of_odd(41) == tree_of(Word::parse("LRLL")));
  CHECK(tree_of_odd(82) == tree_of_odd(41));
  SUBCASE("height is length plus one") {
    for (unsigned len = 0; len <= 10; ++len)
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len);
           mask += 3)
        CHECK(tree_of(Word::from_mask(mask, len)).height() == len + 1);
  }
}

TEST_CASE("growth is monotone for the structural order") {
  for (unsigned len = 0; len <= 6; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
      Word w = Word::from_mask(mask, len);
      PlanarTree tw = tree_of(w);
      for (unsigned cut = 0; cut <= len; ++cut)
        REQUIRE(substructure(tree_of(w.prefix(cut)), tw));
    }
}

TEST_CASE("stopping times descend the tree") {
  PlanarTree t = PlanarTree::node(
      PlanarTree::leaf(),
      PlanarTree::node(PlanarTree::leaf(), PlanarTree::leaf()));
  std::array<int, 2> minus{-1, -1};
  std::array<int, 2> plus{1, 1};
  CHECK(stopping_time(t, minus) == 1);
  CHECK(stopping_time(t, plus) == 2);
  CHECK(stopping_time(PlanarTree::leaf(), std::span<const int>{}) == 0);
  SUBCASE("result depends only on the consumed prefix") {
    std::array<int, 5> longer{-1, 1, 1, -1, 1};
    CHECK(stopping_time(t, longer) == 1);
  }
  SUBCASE("too-short paths are rejected") {
    std::array<int, 1> one{1};
    CHECK_THROWS_AS(stopping_time(t, one), std::invalid_argument);
    std::array<int, 3> bad{1, 0, 1};
    CHECK_THROWS_AS(stopping_time(t, bad), std::invalid_argument);
  }
  SUBCASE("the deepest stop equals the height") {
    PlanarTree tw = tree_of(Word::parse("LRLL"));
    unsigned deepest = 0;
    for (std::uint64_t mask = 0; mask < 32; ++mask)
      deepest = std::max(deepest, stopping_time(tw, path_bits(mask, 5)));
    CHECK(deepest == 5);
  }
}

TEST_CASE("stopping is pathwise monotone along growth") {
  for (unsigned len = 0; len <= 6; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
      Word w = Word::from_mask(mask, len);
      PlanarTree tw = tree_of(w);
      PlanarTree tv = tree_of(w.prefix(len > 0 ? len - 1 : 0));
      for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (len + 1));
           ++bits) {
        auto path = path_bits(bits, len + 1);
        REQUIRE(stopping_time(tv, path) <= stopping_time(tw, path));
      }
    }
}

TEST_CASE("boundary paths stop at the support edges") {
  for (unsigned len = 0; len <= 8; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len);
         mask += 5) {
      Word w = Word::from_mask(mask, len);
      PlanarTree t = tree_of(w);
      std::vector<int> up(len + 2, 1), down(len + 2, -1);
      REQUIRE(stopping_time(t, up) == w.count_r() + 1);
      REQUIRE(stopping_time(t, down) == w.count_l() + 1);
    }
}

TEST_CASE("enumerated stopped-walk law matches the recursion") {
  CHECK(enumerate_distribution(tree_of(Word())) ==
        SpanDist(-1, 1, {BigInt(1), BigInt(0), BigInt(1)}));
  CHECK(enumerate_distribution(tree_of(Word::parse("LR"))) == *p_of(11));
  SUBCASE("the depth-five tree") {
    SpanDist p41 = enumerate_distribution(tree_of(Word::parse("LRLL")));
    CHECK(p41 == *p_of(41));
    CHECK(support_bounds(p41) == std::pair<int, int>(-4, 2));
  }
  for (unsigned len = 0; len <= 8; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
      Word w = Word::from_mask(mask, len);
      REQUIRE(enumerate_distribution(tree_of(w)) == *p_of(w));
    }
  SUBCASE("the exact budget is enforced") {
    CHECK_THROWS_AS(
        enumerate_distribution(tree_of(Word::repeat(Letter::L, 30))),
        std::invalid_argument);
    CHECK_NOTHROW(
        enumerate_distribution(tree_of(Word::repeat(Letter::L, 29))));
  }
}

TEST_CASE("expected stop equals the variance") {
  CHECK(expected_stop(tree_of(Word())) == Rational(1));
  CHECK(expected_stop(tree_of(Word::parse("L"))) == Rational(3, 2));
  CHECK(expected_stop(tree_of(Word::parse("LR"))) == Rational(9, 4));
  for (unsigned len = 0; len <= 8; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
      Word w = Word::from_mask(mask, len);
      REQUIRE(expected_stop(tree_of(w)) == variance(*p_of(w)));
    }
}

TEST_CASE("walk samples are reproducible") {
  PlanarTree t = tree_of(Word::parse("LRLL"));
  WalkSample a = sample_walk(t, 42, 7);
  WalkSample b = sample_walk(t, 42, 7);
  CHECK(a.steps == b.steps);
  CHECK(a.terminal == b.terminal);
  CHECK(a.stop_index == a.steps.size());
  int sum = 0;
  for (int s : a.steps) sum += s;
  CHECK(sum == a.terminal);
  CHECK(a.stop_index <= t.height());
  CHECK(sample_walk(t, 42, 8).steps != a.steps);
}

TEST_CASE("sampling summary is exact in its bookkeeping") {
  PlanarTree t = tree_of(Word::parse("LRLL"));
  SampleSummary s = sample_stopped(t, 40000, 2024, 3);
  std::uint64_t total = 0;
  for (auto& [value, c] : s.counts) {
    total += c;
    CHECK(value >= -4);
    CHECK(value <= 2);
  }
  CHECK(total == 40000);
  SUBCASE("identical for any worker count") {
    SampleSummary s1 = sample_stopped(t, 40000, 2024, 1);
    SampleSummary s4 = sample_stopped(t, 40000, 2024, 4);
    SampleSummary s16 = sample_stopped(t, 40000, 2024, 16);
    CHECK(s1.counts == s.counts);
    CHECK(s4.counts == s.counts);
    CHECK(s16.counts == s.counts);
  }
  SUBCASE("seed changes the stream") {
    CHECK(sample_stopped(t, 40000, 2025, 3).counts != s.counts);
  }
}

TEST_CASE("sampling converges to the enumerated law") {
  PlanarTree t = tree_of(Word());
  SampleSummary s = sample_stopped(t, 100000, 9, 0);
  CHECK(std::abs(s.mean) <= 4.0 / std::sqrt(100000.0));
  PlanarTree t41 = tree_of(Word::parse("LRLL"));
  SampleSummary s41 = sample_stopped(t41, 200000, 9, 0);
  SpanDist exact = enumerate_distribution(t41);
  double tv = 0;
  for (int d = -4; d <= 2; ++d) {
    auto it = s41.counts.find(d);
    double freq = it == s41.counts.end()
                      ? 0.0
                      : static_cast<double>(it->second) / 200000.0;
    tv += std::abs(freq - exact.mass(d).to_double());
  }
  CHECK(tv / 2 <= 0.01);
  SUBCASE("constant-word sample variance sits near 2 - (1/2)^3") {
    PlanarTree rrr = tree_of(Word::parse("RRR"));
    SpanDist law = enumerate_distribution(rrr);
    REQUIRE(variance(law) == Rational(15, 8));
    const double n = 200000.0;
    SampleSummary sr = sample_stopped(rrr, 200000, 31, 0);
    double sigma2 = variance(law).convert_to<double>();
    double mu4 = central_moment(law, 4).convert_to<double>();
    double se = std::sqrt((mu4 - sigma2 * sigma2) / n);
    CHECK(std::abs(sr.variance - sigma2) <= 3 * se);
  }
}

TEST_CASE("renderings") {
  PlanarTree t = tree_of(Word::parse("L"));
  CHECK(to_outline(t) ==
        "[]\n  []\n    •\n    •\n  •\n");
  CHECK(to_json_string(sample_stopped(t, 10, 1, 1)).find("\"count\":10") !=
        std::string::npos);
}

TEST_SUITE_END();
