#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/functionals.hpp"
#include "hamcube/numeric.hpp"
#include "hamcube/rng.hpp"
#include "hamcube/spaces.hpp"

namespace hamcube {

struct SearchConfig {
  int n = 4;
  SpaceDescriptor space = SpaceDescriptor::scalar();
  double p = 8.0;
  GradientMode mode = GradientMode::p_exact();  // constraint gradient
  int iterations = 2000;
  int restarts = 4;
  double step = 0.05;
  std::uint64_t seed = 0;
  bool mean_zero = true;
};

/* A feasible candidate for the extremal moment problem: the function, the
 * value (E ||f - Ef||^p)^{1/p} it achieves, and how tightly it sits on the
 * Lipschitz constraint. */
struct Witness {
  CubeFunction function;
  SpaceDescriptor space;
  double p;
  double achieved;
  double constraint_residual;
  std::vector<double> history;  // best value per restart
};

/* The normalized Rademacher sum f(x) = sum_i x_i / sqrt(n): P^2 and
 * Gamma^2 equal 1 at every vertex, so it is Lipschitz with equality. */
inline Witness baseline_witness(int n, double p) {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (n > kMaxCubeDim) throw NTooLarge("n exceeds enumeration cap of 24");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t b = 0; b < size; ++b) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += CubeFunction::coord_sign(b, i);
    values[b] = s * inv_sqrt_n;
  }
  CubeFunction f(n, 1, std::move(values));
  const SpaceDescriptor scalar = SpaceDescriptor::scalar();
  const double achieved = std::pow(moment(f, scalar, p, true), 1.0 / p);
  const double residual = sup_gradient_sq(f, scalar, GradientMode::gamma()) - 1.0;
  return Witness{std::move(f), scalar, p, achieved, residual, {}};
}

namespace detail {

// scalar baseline embedded into the first value coordinate of the space
inline CubeFunction embed_baseline(int n, const SpaceDescriptor& space) {
  const Witness base = baseline_witness(n, 2.0);
  const int dim = space.ambient_dim();
  std::vector<double> values((std::size_t{1} << n) * static_cast<std::size_t>(dim), 0.0);
  for (std::size_t b = 0; b < base.function.vertex_count(); ++b)
    values[b * dim] = base.function.value(b)[0];
  return CubeFunction(n, dim, std::move(values));
}

}  // namespace detail

/* Projected gradient ascent on (E ||f - Ef||^p)^{1/p} over the Lipschitz
 * ball: finite-difference coordinate gradients (h = 1e-4), then re-center
 * and rescale back onto the constraint.  The baseline witness is always
 * evaluated and kept as the incumbent, so the result can never be worse. */
inline Witness maximize_beta(const SearchConfig& config) {
  if (config.iterations < 1 || config.restarts < 1) throw ConfigError("iterations and restarts must be >= 1");
  if (config.step <= 0.0) throw ConfigError("step must be positive");
  if (config.mode.tag == GradientMode::Tag::P &&
      config.mode.delta == GradientMode::DeltaStrategy::Exact && config.n > kMaxExactSignEnum)
    throw BudgetExceeded("exact sign enumeration limited to n <= 20");

  const SpaceDescriptor& space = config.space;
  auto objective = [&](const CubeFunction& f) {
    return std::pow(moment(f, space, config.p, true), 1.0 / config.p);
  };
  auto project = [&](const CubeFunction& f) {
    CubeFunction g = config.mean_zero ? center(f) : f;
    return lipschitz_normalize(g, space, config.mode);
  };

  CubeFunction start = project(detail::embed_baseline(config.n, space));
  CubeFunction best_f = start;
  double best_val = objective(start);
  const double baseline_val = best_val;
  std::vector<double> history;

  const double h = 1e-4;
  const std::size_t coords = start.vertex_count() * static_cast<std::size_t>(start.dim());

  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<double> values(start.flat().begin(), start.flat().end());
    if (restart > 0) {
      CounterRng rng(config.seed, static_cast<std::uint64_t>(restart));
      for (double& v : values) v += 0.5 * rng.next_normal();
    }
    CubeFunction f(config.n, start.dim(), std::move(values));
    try {
      f = project(f);
    } catch (const DegenerateInput&) {
      history.push_back(baseline_val);
      continue;
    }
    double restart_best = objective(f);
    CubeFunction restart_best_f = f;

    std::vector<double> grad(coords);
    for (int it = 0; it < config.iterations; ++it) {
      std::vector<double> work(f.flat().begin(), f.flat().end());
      for (std::size_t c = 0; c < coords; ++c) {
        const double orig = work[c];
        work[c] = orig + h;
        const double up = objective(CubeFunction(config.n, f.dim(), work));
        work[c] = orig - h;
        const double down = objective(CubeFunction(config.n, f.dim(), work));
        work[c] = orig;
        grad[c] = (up - down) / (2.0 * h);
      }
      double gnorm_sq = 0.0;
      for (double g : grad) gnorm_sq += g * g;
      const double gnorm = std::sqrt(gnorm_sq);
      if (gnorm < 1e-14) break;
      for (std::size_t c = 0; c < coords; ++c) work[c] += config.step * grad[c] / gnorm;
      try {
        f = project(CubeFunction(config.n, f.dim(), std::move(work)));
      } catch (const DegenerateInput&) {
        break;
      }
      const double val = objective(f);
      if (val > restart_best) {
        restart_best = val;
        restart_best_f = f;
      }
    }
    history.push_back(restart_best);
    if (restart_best > best_val) {
      best_val = restart_best;
      best_f = restart_best_f;
    }
  }

  const double residual = sup_gradient_sq(best_f, space, config.mode) - 1.0;
  return Witness{std::move(best_f), space, config.p, best_val, residual, std::move(history)};
}

/* Evaluates the witness against the sharpness target: the regime asks for
 * (E ||f||^p)^{1/p} = Q at p = tau Q^2; when the target is met the series
 * lower bound log Sigma >= (tau/2) Q^2 follows. */
struct SharpnessReport {
  double Q;
  double tau;
  double p;
  double achieved;
  double target;
  bool target_met;
  double implied_log_sigma_lower;  // meaningful only when target_met
};

inline SharpnessReport sharpness_report(double Q, double tau, const Witness& witness) {
  if (tau <= 0.0) throw OutOfRange("tau must be positive");
  const double p = tau * Q * Q;
  if (p < 1.0) throw OutOfRange("tau Q^2 < 1: sharpness regime out of range");
  const double achieved = std::pow(moment(witness.function, witness.space, p, true), 1.0 / p);
  const bool met = achieved >= Q;
  return SharpnessReport{Q, tau, p, achieved, Q, met, met ? 0.5 * tau * Q * Q : 0.0};
}

}  // namespace hamcube
