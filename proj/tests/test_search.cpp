#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hamcube/search.hpp"

using namespace hamcube;

TEST_CASE("baseline_witness: frozen moment values and exact feasibility") {
  auto w = baseline_witness(1, 2.0);
  CHECK(w.achieved == doctest::Approx(1.0));
  CHECK(std::abs(w.constraint_residual) < 1e-12);

  // E (sum_4 x_i)^4 = 40, so the p=4 moment of the normalized sum is 2.5
  w = baseline_witness(4, 4.0);
  CHECK(w.achieved == doctest::Approx(std::pow(2.5, 0.25)).epsilon(1e-12));

  // E (sum_4 x_i)^8 = 8320, normalized: 8320 / 256 = 32.5
  w = baseline_witness(4, 8.0);
  CHECK(w.achieved == doctest::Approx(std::pow(32.5, 0.125)).epsilon(1e-12));
  CHECK(std::abs(w.constraint_residual) < 1e-12);

  CHECK_THROWS_AS(baseline_witness(0, 2.0), ConfigError);
  CHECK_THROWS_AS(baseline_witness(25, 2.0), NTooLarge);
}

TEST_CASE("maximize_beta: config validation") {
  SearchConfig config;
  config.iterations = 0;
  CHECK_THROWS_AS(maximize_beta(config), ConfigError);
  config.iterations = 10;
  config.step = 0.0;
  CHECK_THROWS_AS(maximize_beta(config), ConfigError);
  config.step = 0.05;
  config.n = 21;
  config.mode = GradientMode::p_exact();
  CHECK_THROWS_AS(maximize_beta(config), BudgetExceeded);
}

TEST_CASE("maximize_beta: deterministic, feasible, never below the baseline") {
  SearchConfig config;
  config.n = 3;
  config.p = 4.0;
  config.iterations = 40;
  config.restarts = 3;
  config.seed = 7;
  config.mode = GradientMode::gamma();

  const Witness a = maximize_beta(config);
  const Witness b = maximize_beta(config);
  CHECK(a.achieved == b.achieved);
  for (std::size_t k = 0; k < a.function.flat().size(); ++k)
    CHECK(a.function.flat()[k] == b.function.flat()[k]);

  CHECK(a.constraint_residual < 1e-8);
  CHECK(a.achieved >= baseline_witness(3, 4.0).achieved - 1e-12);
  CHECK(a.history.size() == 3);
  CHECK(std::abs(expectation(a.function)[0]) < 1e-10);
}

TEST_CASE("maximize_beta works on a vector-valued space") {
  SearchConfig config;
  config.n = 2;
  config.space = SpaceDescriptor::euclidean(2);
  config.p = 4.0;
  config.iterations = 25;
  config.restarts = 2;
  config.seed = 3;
  config.mode = GradientMode::gamma();
  const Witness w = maximize_beta(config);
  CHECK(w.constraint_residual < 1e-8);
  CHECK(w.achieved > 0.0);
}

TEST_CASE("sharpness_report: regime guard and a met target") {
  const Witness w = baseline_witness(4, 2.0);
  CHECK_THROWS_AS(sharpness_report(1.0, 0.5, w), OutOfRange);   // tau Q^2 < 1
  CHECK_THROWS_AS(sharpness_report(1.0, -1.0, w), OutOfRange);

  // at p = 2 the baseline achieves exactly 1, so Q = 1, tau = 2 is met
  const auto r = sharpness_report(1.0, 2.0, w);
  CHECK(r.p == doctest::Approx(2.0));
  CHECK(r.achieved == doctest::Approx(1.0));
  CHECK(r.target_met);
  CHECK(r.implied_log_sigma_lower == doctest::Approx(1.0));

  // unreachable target
  const auto miss = sharpness_report(5.0, 1.0, w);
  CHECK_FALSE(miss.target_met);
}
