// Acceptance gate: one pass/fail line per criterion, asserted individually.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include <linlam/verify.hpp>

using namespace linlam;

static bool run(int idx) {
  const auto names = verify_suite_names();
  SuiteResult r = run_verify_suite(names[(size_t)idx - 1]);
  std::printf("criterion %2d %-11s %s  (%.2fs)  %s\n", r.id, r.name.c_str(),
              r.ok ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
  std::fflush(stdout);
  return r.ok;
}

TEST_CASE("criterion 1: counting correctness") { REQUIRE(run(1)); }
TEST_CASE("criterion 2: bridgeless counts") { REQUIRE(run(2)); }
TEST_CASE("criterion 3: bijection round trips") { REQUIRE(run(3)); }
TEST_CASE("criterion 4: formal identities vanish exactly") { REQUIRE(run(4)); }
TEST_CASE("criterion 5: Poisson rows") { REQUIRE(run(5)); }
TEST_CASE("criterion 6: Gaussian rows") { REQUIRE(run(6)); }
TEST_CASE("criterion 7: growth constants") { REQUIRE(run(7)); }
TEST_CASE("criterion 8: symbolic suite") { REQUIRE(run(8)); }
TEST_CASE("criterion 9: saddle evaluators") { REQUIRE(run(9)); }
TEST_CASE("criterion 10: determinism") { REQUIRE(run(10)); }
