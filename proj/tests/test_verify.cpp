#include "digitwalk/verify.hpp"

#include <doctest.h>

using namespace digitwalk;

TEST_SUITE_BEGIN("verify");

// Fast passes over reduced bounds; the acceptance binary sweeps the full
// ranges.

TEST_CASE("codec suite") {
  auto r = verify::codec(12);
  CHECK(r.ok());
  CHECK(r.checks > (1u << 12));
}

TEST_CASE("symmetry suite") { CHECK(verify::symmetries(9).ok()); }

TEST_CASE("variance suite") { CHECK(verify::variance_bounds(9, 16).ok()); }

TEST_CASE("support suite") { CHECK(verify::support(9).ok()); }

TEST_CASE("oracle suite") { CHECK(verify::oracle(8).ok()); }

TEST_CASE("wald suite") { CHECK(verify::wald(8).ok()); }

TEST_CASE("peacock suite") {
  auto r = verify::peacock(12, 14, 3);
  CHECK(r.ok());
  REQUIRE(!r.notes.empty());
  CHECK(r.notes.back().find("non-strict") != std::string::npos);
}

TEST_CASE("stabilization suite") { CHECK(verify::stabilization(7, 5, 5).ok()); }

TEST_CASE("deconvolution suite") { CHECK(verify::deconvolution(1024).ok()); }

TEST_CASE("suite names cover the dispatch table") {
  CHECK(verify::suite_names().size() == 9);
}

TEST_SUITE_END();
