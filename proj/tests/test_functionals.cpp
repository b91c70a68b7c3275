#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hamcube/cube.hpp"
#include "hamcube/functionals.hpp"
#include "hamcube/rng.hpp"

using namespace hamcube;

namespace {

CubeFunction random_cube(int n, int dim, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::vector<double> values((std::size_t{1} << n) * dim);
  for (double& v : values) v = rng.next_normal();
  return CubeFunction(n, dim, std::move(values));
}

CubeFunction random_nonneg(int n, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  std::vector<double> values(std::size_t{1} << n);
  for (double& v : values) {
    const double z = rng.next_normal();
    v = z * z;
  }
  return CubeFunction(n, 1, std::move(values));
}

}  // namespace

TEST_CASE("entropy_sq: constants, two-point example, zero") {
  CHECK(entropy_sq(from_values(2, 1, {{3.0}, {3.0}, {3.0}, {3.0}})) == doctest::Approx(0.0));
  CHECK(entropy_sq(from_values(1, 1, {{0.0}, {0.0}})) == 0.0);

  // g = 1 + x1/2: (1/2)(9/4 ln(9/4) + 1/4 ln(1/4)) - (5/4) ln(5/4)
  const CubeFunction g = from_values(1, 1, {{1.5}, {0.5}});
  const double expected =
      0.5 * (2.25 * std::log(2.25) + 0.25 * std::log(0.25)) - 1.25 * std::log(1.25);
  CHECK(entropy_sq(g) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(entropy_sq(g) == doctest::Approx(0.46008).epsilon(1e-4));

  CHECK_THROWS_AS(entropy_sq(from_values(1, 1, {{-1.0}, {1.0}})), NegativeInput);
}

TEST_CASE("entropy_sq scales quadratically and is nonnegative") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CubeFunction g = random_nonneg(4, seed);
    const double e = entropy_sq(g);
    CHECK(e >= 0.0);
    const double e2 = entropy_sq(scale(g, 3.0));
    if (e > 1e-12) CHECK(e2 == doctest::Approx(9.0 * e).epsilon(1e-9));
  }
}

TEST_CASE("orlicz_norm: zero, constant-one oracle, homogeneity") {
  CHECK(orlicz_norm(from_values(1, 1, {{0.0}, {0.0}}), 2.0) == 0.0);

  // for g == 1 the defining equation is (1/l^2) ln(e + 1/l^2) = 1; solve it
  // independently by bisection on the closed-form expectation
  double lo = 0.5, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = (1.0 / (mid * mid)) * std::log(std::exp(1.0) + 1.0 / (mid * mid));
    (val > 1.0 ? lo : hi) = mid;
  }
  const CubeFunction one = from_values(2, 1, {{1.0}, {1.0}, {1.0}, {1.0}});
  CHECK(orlicz_norm(one, 2.0) == doctest::Approx(hi).epsilon(1e-9));
  CHECK(hi == doctest::Approx(1.121).epsilon(1e-3));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CubeFunction g = random_nonneg(3, seed);
    CHECK(orlicz_norm(scale(g, 2.0), 2.0) ==
          doctest::Approx(2.0 * orlicz_norm(g, 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("orlicz_norm is pointwise monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CubeFunction g = random_nonneg(3, seed + 50);
    std::vector<double> larger(g.flat().begin(), g.flat().end());
    CounterRng rng(seed, 9);
    for (double& v : larger) v += rng.next_double();
    const CubeFunction h(3, 1, std::move(larger));
    CHECK(orlicz_norm(g, 2.0) <= orlicz_norm(h, 2.0) + 1e-10);
  }
}

TEST_CASE("m_gradient examples") {
  // g = 1 + x1/2: D1 g = x1/2, positive part only at x1 = +1
  const CubeFunction g = from_values(1, 1, {{1.5}, {0.5}});
  const CubeFunction mg = m_gradient(g);
  CHECK(mg.value(0)[0] == doctest::Approx(0.5));
  CHECK(mg.value(1)[0] == 0.0);

  const CubeFunction c = from_values(2, 1, {{1.0}, {1.0}, {1.0}, {1.0}});
  for (std::size_t b = 0; b < 4; ++b) CHECK(m_gradient(c).value(b)[0] == 0.0);

  // g = -x1: derivative positive on the x1 = -1 side
  const CubeFunction neg = from_values(1, 1, {{-1.0}, {1.0}});
  CHECK(m_gradient(neg).value(0)[0] == 0.0);
  CHECK(m_gradient(neg).value(1)[0] == doctest::Approx(1.0));
}

TEST_CASE("gradient modes: P equals Gamma on scalar and Euclidean targets") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const bool euclid = seed % 2 == 0;
    const SpaceDescriptor sp = euclid ? SpaceDescriptor::euclidean(3) : SpaceDescriptor::scalar();
    const CubeFunction f = random_cube(3, sp.ambient_dim(), seed + 300);
    for (std::size_t b = 0; b < f.vertex_count(); ++b) {
      const double gam = gradient_sq(f, sp, GradientMode::gamma(), b);
      const double pex = gradient_sq(f, sp, GradientMode::p_exact(), b);
      CHECK(std::abs(gam - pex) < 1e-10 * (1.0 + gam));
    }
  }
}

TEST_CASE("weak gradient below P gradient on Euclidean targets") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SpaceDescriptor sp = SpaceDescriptor::euclidean(3);
    const CubeFunction f = random_cube(3, 3, seed + 900);
    for (std::size_t b = 0; b < f.vertex_count(); ++b) {
      const double weak = gradient_sq(f, sp, GradientMode::weak(), b);
      const double pex = gradient_sq(f, sp, GradientMode::p_exact(), b);
      CHECK(weak <= pex + 1e-10 * (1.0 + pex));
    }
  }
}

TEST_CASE("gradient values: identity pair, single-coordinate Schatten") {
  // f(x) = (x1, x2): derivative matrix is the 2x2 identity
  const CubeFunction f = from_values(2, 2, {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}});
  const SpaceDescriptor e2 = SpaceDescriptor::euclidean(2);
  for (std::size_t b = 0; b < 4; ++b) {
    CHECK(gradient_sq(f, e2, GradientMode::weak(), b) == doctest::Approx(1.0));
    CHECK(gradient_sq(f, e2, GradientMode::gamma(), b) == doctest::Approx(2.0));
    CHECK(gradient_sq(f, e2, GradientMode::p_exact(), b) == doctest::Approx(2.0));
  }

  // f = x1 * diag(1, 0) into S_4
  const SpaceDescriptor s4 = SpaceDescriptor::schatten(4.0, 2);
  const CubeFunction m = from_values(1, 4, {{1, 0, 0, 0}, {-1, 0, 0, 0}});
  CHECK(gradient_sq(m, s4, GradientMode::p_exact(), 0) == doctest::Approx(1.0));
}

TEST_CASE("sup_gradient_sq examples") {
  // f = sum_i x_i / sqrt(n)
  const int n = 4;
  std::vector<std::vector<double>> values(1 << n);
  for (std::size_t b = 0; b < values.size(); ++b) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += CubeFunction::coord_sign(b, i);
    values[b] = {s / 2.0};
  }
  const CubeFunction f = from_values(n, 1, values);
  CHECK(sup_gradient_sq(f, SpaceDescriptor::scalar(), GradientMode::gamma()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const CubeFunction c = from_values(2, 1, {{1.0}, {1.0}, {1.0}, {1.0}});
  CHECK(sup_gradient_sq(c, SpaceDescriptor::scalar(), GradientMode::gamma()) == 0.0);

  // f = x1 x2: both derivatives equal x1 x2 pointwise, so Gamma^2 = 2
  const CubeFunction prod = from_values(2, 1, {{1.0}, {-1.0}, {-1.0}, {1.0}});
  CHECK(sup_gradient_sq(prod, SpaceDescriptor::scalar(), GradientMode::gamma()) ==
        doctest::Approx(2.0));
}

TEST_CASE("moment, beta, and the analytic moment derivative") {
  const CubeFunction dict = from_values(1, 1, {{1.0}, {-1.0}});
  const SpaceDescriptor sc = SpaceDescriptor::scalar();
  for (double p : {1.0, 2.0, 5.0}) CHECK(moment(dict, sc, p, true) == doctest::Approx(1.0));

  const CubeFunction two = from_values(
      2, 1, {{std::sqrt(2.0)}, {0.0}, {0.0}, {-std::sqrt(2.0)}});  // (x1+x2)/sqrt(2)
  CHECK(moment(two, sc, 2.0, true) == doctest::Approx(1.0));
  CHECK(moment_log_derivative(two, sc, 2.0, true) ==
        doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-12));

  // f = (x1+..+x4)/2: E S^4 = 3n^2 - 2n = 40 at n = 4
  std::vector<std::vector<double>> values(16);
  for (std::size_t b = 0; b < 16; ++b) {
    double s = 0.0;
    for (int i = 1; i <= 4; ++i) s += CubeFunction::coord_sign(b, i);
    values[b] = {s / 2.0};
  }
  const CubeFunction f4 = from_values(4, 1, values);
  CHECK(moment(f4, sc, 4.0, true) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(beta(f4, sc, 4.0, true) == doctest::Approx(std::log(2.5) / 4.0).epsilon(1e-12));

  // beta scaling: beta(c f) = beta(f) + log c
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CubeFunction f = random_cube(3, 1, seed + 60);
    const double c = 1.7;
    CHECK(beta(scale(f, c), sc, 3.0, true) ==
          doctest::Approx(beta(f, sc, 3.0, true) + std::log(c)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(beta(from_values(1, 1, {{2.0}, {2.0}}), sc, 2.0, true), ZeroMoment);
  CHECK_THROWS_AS(moment(dict, sc, 0.5, true), InvalidExponent);
}

TEST_CASE("moment_log_derivative matches finite differences of moment") {
  const SpaceDescriptor spaces[] = {SpaceDescriptor::scalar(), SpaceDescriptor::euclidean(3)};
  for (const auto& sp : spaces) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CubeFunction f = random_cube(3, sp.ambient_dim(), seed + 500);
      for (double p : {2.0, 4.0}) {
        const double h = 1e-5;
        const double fd =
            (moment(f, sp, p + h, true) - moment(f, sp, p - h, true)) / (2.0 * h);
        CHECK(std::abs(moment_log_derivative(f, sp, p, true) - fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("exp_moment and the partial-sum series") {
  const SpaceDescriptor sc = SpaceDescriptor::scalar();
  const double tau = 1.0 / (4.0 * std::exp(1.0));

  const CubeFunction dict = from_values(1, 1, {{1.0}, {-1.0}});
  CHECK(exp_moment(dict, sc, tau) == doctest::Approx(std::exp(tau)).epsilon(1e-12));

  const CubeFunction c = from_values(2, 1, {{5.0}, {5.0}, {5.0}, {5.0}});
  CHECK(exp_moment(c, sc, 0.3) == doctest::Approx(1.0));

  // a(2n) = 1 for the dictator, so the series is exactly exp(tau)
  const auto partial = sigma_partial_sums(dict, sc, tau, 20);
  CHECK(std::abs(partial.back() - std::exp(tau)) < 1e-12);

  // partial sums increase and converge to the exact exponential moment
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CubeFunction f = random_cube(3, 1, seed + 700);
    double maxv = 0.0;
    for (double v : f.flat()) maxv = std::max(maxv, std::abs(v));
    f = scale(f, 2.0 / maxv);
    const auto sums = sigma_partial_sums(f, sc, 0.25, 150);
    const double exact = exp_moment(f, sc, 0.25);
    for (std::size_t k = 1; k < sums.size(); ++k) CHECK(sums[k] >= sums[k - 1] - 1e-15);
    CHECK(sums.back() <= exact + 1e-12);
    CHECK(exact - sums.back() < 1e-9);
  }

  const CubeFunction huge = from_values(1, 1, {{100.0}, {-100.0}});
  CHECK_THROWS_AS(exp_moment(huge, sc, 1.0), Overflow);
}

TEST_CASE("outward_chord_slope: flat, dictator, convex monotonicity") {
  const SpaceDescriptor sc = SpaceDescriptor::scalar();

  // constant along i: slope 0
  const CubeFunction cst = from_values(2, 1, {{2.0}, {2.0}, {2.0}, {2.0}});
  CHECK(std::abs(outward_chord_slope(cst, sc, 2.0, 0, 1, 1.0)) < 1e-10);

  // f = x1, h(s) = |s|: slope 1 on the x1 = +1 side
  const CubeFunction dict = from_values(1, 1, {{1.0}, {-1.0}});
  CHECK(outward_chord_slope(dict, sc, 2.0, 0, 1, 1.0) == doctest::Approx(1.0));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CubeFunction f = random_cube(3, 1, seed + 800);
    for (std::size_t b = 0; b < f.vertex_count(); ++b)
      for (int i = 1; i <= 3; ++i)
        CHECK(outward_chord_slope(f, sc, 2.0, b, i, 1.0) >=
              outward_chord_slope(f, sc, 2.0, b, i, 1e-3) - 1e-9);
  }

  CHECK_THROWS_AS(outward_chord_slope(dict, sc, 2.0, 0, 1, 0.0), InvalidEpsilon);
}

TEST_CASE("lipschitz_normalize is an exact projection and idempotent") {
  const SpaceDescriptor sc = SpaceDescriptor::scalar();
  const CubeFunction f = random_cube(4, 1, 123);
  const CubeFunction g = lipschitz_normalize(f, sc, GradientMode::gamma());
  CHECK(sup_gradient_sq(g, sc, GradientMode::gamma()) == doctest::Approx(1.0).epsilon(1e-10));
  const CubeFunction g2 = lipschitz_normalize(g, sc, GradientMode::gamma());
  for (std::size_t k = 0; k < g.flat().size(); ++k)
    CHECK(std::abs(g2.flat()[k] - g.flat()[k]) < 1e-12);

  CHECK_THROWS_AS(
      lipschitz_normalize(from_values(1, 1, {{1.0}, {1.0}}), sc, GradientMode::gamma()),
      DegenerateInput);
}
