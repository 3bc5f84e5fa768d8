#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <linlam/catalog.hpp>
#include <linlam/stats.hpp>

using namespace linlam;

TEST_CASE("distribution rows are exact and normalized") {
  TruncatedSeries Tid = solve_T_id(12);
  DistributionTable d = distribution_from_series(Tid, 5);
  REQUIRE(d.total() == 1);
  REQUIRE(d.w.size() == 3);
  REQUIRE(d.w[0] == std::pair<long, Rat>(0, Rat(2, 5)));
  REQUIRE(d.w[1] == std::pair<long, Rat>(1, Rat(2, 5)));
  REQUIRE(d.w[2] == std::pair<long, Rat>(2, Rat(1, 5)));
  // series rows agree with exhaustive enumeration
  auto counts = empirical_distribution(ClassId::LinearClosed, 8, Parameter::IdentitySubterms);
  DistributionTable d8a = distribution_from_counts(counts);
  DistributionTable d8b = distribution_from_series(Tid, 8);
  REQUIRE(d8a.w == d8b.w);
}

TEST_CASE("factorial and power moments satisfy the Stirling relations") {
  TruncatedSeries Ts = solve_T_sub(14);
  DistributionTable d = distribution_from_series(Ts, 14);
  Rat f1 = factorial_moment(d, 1), f2 = factorial_moment(d, 2), f3 = factorial_moment(d, 3),
      f4 = factorial_moment(d, 4);
  REQUIRE(power_moment(d, 1) == f1);
  REQUIRE(power_moment(d, 2) == f2 + f1);
  REQUIRE(power_moment(d, 3) == f3 + 3 * f2 + f1);
  REQUIRE(power_moment(d, 4) == f4 + 6 * f3 + 7 * f2 + f1);
  REQUIRE(factorial_moment(d, 0) == 1);
}

TEST_CASE("normal CDF approximation") {
  REQUIRE(std::fabs(normal_cdf(0.0) - 0.5) < 7.5e-8);
  REQUIRE(std::fabs(normal_cdf(1.96) - 0.9750021048517795) < 7.5e-8);
  REQUIRE(std::fabs(normal_cdf(-1.0) - 0.15865525393145707) < 7.5e-8);
  REQUIRE(std::fabs(normal_cdf(1.0) + normal_cdf(-1.0) - 1.0) < 1.5e-7);
  REQUIRE(normal_cdf(6.0) > 0.999999);
}

TEST_CASE("distance to Poisson(1) for a point mass") {
  DistributionTable d;
  d.w.emplace_back(0, Rat(1));
  // TV = 1/2 (|1 - e^{-1}| + (1 - e^{-1})) = 1 - 1/e
  REQUIRE(std::fabs(tv_to_poisson1(d) - (1.0 - std::exp(-1.0))) < 1e-12);
}

TEST_CASE("saddle-point evaluators match the exact coefficients") {
  TruncatedSeries inv = build_exp_involutions(40);
  for (int n = 0; n <= 40; ++n) REQUIRE(inv.coeff({n}) == involution_coeff_exact(n));
  // relative error decreases along even sizes
  double prev = 1.0;
  for (long n = 26; n <= 98; n += 24) {
    double ex = involution_coeff_exact(n).get_d();
    double rel = std::fabs(involution_coeff_approx(n) - ex) / ex;
    REQUIRE(rel < prev);
    prev = rel;
  }
  // exp(z^3/3 + uz) exact coefficients vs the bivariate construction at u=1
  TruncatedSeries cyc = series_eval_var(build_exp_cycles13(30, 30), "u", 1);
  for (int n = 0; n <= 30; ++n) REQUIRE(cyc.coeff({n}) == exp_cubic_coeff_exact(n, 1));
  prev = 1.0;
  for (long n = 25; n <= 100; n += 25) {
    double ex = exp_cubic_coeff_exact(n, 1).get_d();
    double rel = std::fabs(exp_cubic_coeff_approx(n, 1.0) - ex) / ex;
    REQUIRE(rel < prev);
    prev = rel;
  }
}

TEST_CASE("closed-term growth constant 3/pi") {
  double target = 3.0 / M_PI;
  REQUIRE(std::fabs(closed_term_growth_ratio(40) - target) < 0.02);
  REQUIRE(std::fabs(closed_term_growth_ratio(40) - target) <
          std::fabs(closed_term_growth_ratio(5) - target));
}

TEST_CASE("bridgeless fraction approaches 1/e") {
  double target = std::exp(-1.0);
  REQUIRE(std::fabs(bridgeless_fraction(104) - target) < 0.05);
  REQUIRE(std::fabs(bridgeless_fraction(104) - target) <
          std::fabs(bridgeless_fraction(5) - target));
}

TEST_CASE("schema conclusions pass their trend checks") {
  for (const auto& name : schema_conclusion_names()) {
    auto rep = schema_conclusion_check(name);
    INFO(rep.name << ": " << rep.detail);
    REQUIRE(rep.ok);
  }
}

TEST_CASE("unused-abstraction mean versus its lower bound") {
  TruncatedSeries A = build_A_binomial(solve_T(60), 60, 59);
  for (int n : {50, 55, 60}) {
    DistributionTable d = distribution_from_series(A, n);
    REQUIRE(dist_mean(d) >= unused_mean_lower_bound(n));
  }
}
