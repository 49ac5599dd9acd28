#include "digitwalk/scanner.hpp"

#include "digitwalk/measures.hpp"
#include "digitwalk/words.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace digitwalk;

TEST_SUITE_BEGIN("scanner");

namespace {

std::vector<ScanRecord> collect(ScanOptions options) {
  std::vector<ScanRecord> records;
  options.sink = [&](const ScanRecord& r) { records.push_back(r); };
  scan(options);
  return records;
}

bool same_records(const std::vector<ScanRecord>& a,
                  const std::vector<ScanRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ScanRecord &x = a[i], &y = b[i];
    if (x.t != y.t || x.word_length != y.word_length ||
        x.first_letter != y.first_letter || x.v_numerator != y.v_numerator ||
        x.variance_numerator != y.variance_numerator ||
        x.exponent != y.exponent || x.is_minimizer != y.is_minimizer)
      return false;
  }
  return true;
}

struct TempPath {
  std::filesystem::path path;
  explicit TempPath(const std::string& name)
      : path(std::filesystem::temp_directory_path() /
             ("digitwalk_test_" + name)) {
    std::filesystem::remove(path);
  }
  ~TempPath() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("tiny scans hit the known minimizers") {
  ScanOptions options;
  options.max_t = 63;
  ScanSummary s = scan(options);
  CHECK(s.minimizers ==
        std::vector<std::uint64_t>{3, 7, 15, 27, 31, 55, 59, 63});
  CHECK(s.median_violations == 0);
  CHECK(s.asymmetry_violations == 0);
  CHECK(s.records == 31);  // odd t in [3, 63]
  CHECK(s.cell_bits == 32);
  CHECK(s.finished);
  SUBCASE("the bottom of the order is excluded and K=3 works") {
    ScanOptions tiny;
    tiny.max_t = 3;
    auto records = collect(tiny);
    REQUIRE(records.size() == 1);
    CHECK(records[0].t == 3);
    CHECK(records[0].word_length == 0);
    CHECK(records[0].first_letter == '-');
    CHECK(records[0].is_minimizer);
    CHECK(records[0].v().to_rational() == Rational(1, 2));
    CHECK(records[0].variance() == Rational(1));
  }
  CHECK_THROWS_AS(scan(ScanOptions{}), ScanError);
}

TEST_CASE("records agree with the measure engine exactly") {
  ScanOptions options;
  options.max_t = std::uint64_t(1) << 14;
  auto records = collect(options);
  REQUIRE(records.size() == (std::uint64_t(1) << 13) - 1);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const ScanRecord& r = records[rng() % records.size()];
    auto p = p_of(r.t);
    REQUIRE(r.v().to_rational() == tail_nonneg(*p).to_rational());
    REQUIRE(r.variance() == variance(*p));
    Word w = odd_to_word(r.t);
    REQUIRE(r.word_length == w.length());
    char expected_first =
        w.empty() ? '-' : (w.at(0) == Letter::R ? 'R' : 'L');
    REQUIRE(r.first_letter == expected_first);
    REQUIRE(r.is_minimizer == (tail_nonneg(*p) == Dyadic(BigInt(1), 1)));
  }
  // t=5 is the one-letter L word with tail mass 3/4.
  CHECK(records[1].t == 5);
  CHECK(records[1].v().to_rational() == Rational(3, 4));
  SUBCASE("median and first-letter asymmetry hold throughout") {
    ScanSummary s = scan(options);
    CHECK(s.median_violations == 0);
    CHECK(s.asymmetry_violations == 0);
    CHECK(find_minimizers(records) == s.minimizers);
    CHECK(count_median_violations(records) == 0);
    CHECK(count_asymmetry_violations(records) == 0);
  }
}

TEST_CASE("reversing the word leaves the tail mass unchanged") {
  ScanOptions options;
  options.max_t = std::uint64_t(1) << 13;
  auto records = collect(options);
  std::vector<std::uint64_t> v_by_t(records.back().t + 1, 0);
  for (const auto& r : records) v_by_t[r.t] = r.v_numerator;
  for (const auto& r : records) {
    std::uint64_t rev_t = word_to_odd(odd_to_word(r.t).reversed());
    REQUIRE(v_by_t[rev_t] == r.v_numerator);
  }
}

TEST_CASE("records are independent of the worker count") {
  ScanOptions base;
  base.max_t = std::uint64_t(1) << 13;
  base.workers = 1;
  auto reference = collect(base);
  for (unsigned workers : {4u, 16u}) {
    ScanOptions options = base;
    options.workers = workers;
    REQUIRE(same_records(collect(options), reference));
  }
}

TEST_CASE("32-bit and 64-bit cells produce identical records") {
  ScanOptions narrow;
  narrow.max_t = 4097;
  narrow.force_cell_bits = 32;
  ScanOptions wide = narrow;
  wide.force_cell_bits = 64;
  CHECK(same_records(collect(narrow), collect(wide)));
  CHECK_THROWS_AS(
      [] {
        ScanOptions bad;
        bad.max_t = std::uint64_t(1) << 30;
        bad.force_cell_bits = 32;
        scan(bad);
      }(),
      ScanError);
}

TEST_CASE("memory budget failures name the level reached") {
  ScanOptions options;
  options.max_t = std::uint64_t(1) << 16;
  options.memory_budget_bytes = 4096;
  try {
    scan(options);
    FAIL("expected ScanMemoryError");
  } catch (const ScanMemoryError& e) {
    CHECK(e.level_reached >= 2);
    CHECK(std::string(e.what()).find("level") != std::string::npos);
  }
}

TEST_CASE("the store stays within its documented bound") {
  ScanOptions options;
  options.max_t = std::uint64_t(1) << 16;
  ScanSummary s = scan(options);
  CHECK(s.peak_store_bytes <= s.store_bound_bytes);
  CHECK(s.store_bound_bytes < (std::uint64_t(1) << 24));
}

TEST_CASE("checkpoint and resume reproduce the downstream records") {
  TempPath ck("checkpoint");
  const std::uint64_t K = std::uint64_t(1) << 12;

  ScanOptions full;
  full.max_t = K;
  auto all_records = collect(full);

  ScanOptions first_half;
  first_half.max_t = K;
  first_half.checkpoint_path = ck.path.string();
  first_half.stop_after_level = 9;
  ScanSummary partial = scan(first_half);
  CHECK_FALSE(partial.finished);
  CHECK(partial.completed_level == 9);
  REQUIRE(std::filesystem::exists(ck.path));

  ScanOptions second_half;
  second_half.max_t = K;
  second_half.checkpoint_path = ck.path.string();
  auto downstream = collect(second_half);

  std::vector<ScanRecord> expected;
  for (const auto& r : all_records)
    if (r.t > (std::uint64_t(1) << 9)) expected.push_back(r);
  REQUIRE(same_records(downstream, expected));

  ScanSummary resumed = scan(second_half);
  ScanSummary reference = scan(full);
  CHECK(resumed.minimizers == reference.minimizers);
  CHECK(resumed.records == reference.records);
  CHECK(resumed.median_violations == reference.median_violations);
}

TEST_CASE("checkpoints are validated") {
  TempPath ck("validate");
  ScanOptions options;
  options.max_t = 1023;
  options.checkpoint_path = ck.path.string();
  scan(options);

  SUBCASE("a flipped payload byte is caught") {
    std::fstream f(ck.path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(200);
    char c;
    f.seekg(200);
    f.get(c);
    f.seekp(200);
    f.put(static_cast<char>(c ^ 0x40));
    f.close();
    CHECK_THROWS_AS(scan(options), ScanCheckpointError);
  }
  SUBCASE("a different bound is rejected") {
    ScanOptions other = options;
    other.max_t = 2047;
    CHECK_THROWS_AS(scan(other), ScanCheckpointError);
  }
  SUBCASE("a bad magic is rejected") {
    std::fstream f(ck.path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.put('x');
    f.close();
    CHECK_THROWS_AS(scan(options), ScanCheckpointError);
  }
}

TEST_CASE("minimizer tables are byte-stable") {
  ScanOptions options;
  options.max_t = 2047;
  ScanSummary s = scan(options);
  std::ostringstream a, b;
  emit_minimizer_table(s.minimizers, a, TableFormat::csv);
  emit_minimizer_table(s.minimizers, b, TableFormat::csv);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("word_length,t,word\n0,3,eps\n", 0) == 0);
  CHECK(a.str().find("3,27,RLR\n") != std::string::npos);
  CHECK(a.str().find("3,31,RRR\n") != std::string::npos);
  CHECK(a.str().find("7,447,RLRRRRR\n") != std::string::npos);
  CHECK(a.str().find("9,2047,RRRRRRRRR\n") != std::string::npos);
  std::ostringstream j;
  emit_minimizer_table(s.minimizers, j, TableFormat::json);
  CHECK(j.str().find("\"word\":\"RLR\"") != std::string::npos);
}

TEST_SUITE_END();
