#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/functionals.hpp"
#include "hamcube/report.hpp"
#include "hamcube/rng.hpp"
#include "hamcube/spaces.hpp"

namespace hamcube {

struct SuiteConfig {
  int n = 4;
  SpaceDescriptor space = SpaceDescriptor::scalar();
  int trials = 20;
  std::uint64_t seed = 0;
  std::vector<double> p_grid = {2, 3, 4, 6, 8, 12, 16};
  GradientMode mode = GradientMode::gamma();  // used by (Orlicz2)/(diff1)/(beta-ode)
  double tau = 1.0 / (4.0 * 2.718281828459045235360287471353);
  double c0_report = 1.0;
  double kappa2_report = 2.0;
  std::vector<double> epsilons = {1e-3, 1.0};
};

namespace detail {

inline std::string fmt_key(double v) { return format_double(v); }

inline std::map<std::string, std::string> base_params(const CubeFunction& f,
                                                      const SpaceDescriptor& space) {
  return {{"n", std::to_string(f.n())}, {"space", space.name()}};
}

}  // namespace detail

/* i.i.d. standard normal coordinates at every vertex; optionally rescaled so
 * the selected Lipschitz gradient has sup exactly 1, optionally centered. */
inline CubeFunction random_function(const SpaceDescriptor& space, int n, std::uint64_t seed,
                                    std::optional<GradientMode> normalize = std::nullopt,
                                    bool mean_zero = false) {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (n > kMaxCubeDim) throw NTooLarge("n exceeds enumeration cap of 24");
  const int dim = space.ambient_dim();
  for (int attempt = 0; attempt < 10; ++attempt) {
    CounterRng rng(seed, 0x8a11ULL + static_cast<std::uint64_t>(attempt));
    std::vector<double> values((std::size_t{1} << n) * static_cast<std::size_t>(dim));
    for (double& v : values) v = rng.next_normal();
    CubeFunction f(n, dim, std::move(values));
    if (mean_zero) f = center(f);
    if (!normalize) return f;
    const double sup = sup_gradient_sq(f, space, *normalize);
    if (sup <= 0.0) continue;
    return scale(f, 1.0 / std::sqrt(sup));
  }
  throw DegenerateDraw("sup gradient vanished on 10 consecutive draws");
}

// nonnegative scalar test function: square of a Gaussian field
inline CubeFunction random_nonnegative(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x900dULL);
  std::vector<double> values(std::size_t{1} << n);
  for (double& v : values) {
    const double z = rng.next_normal();
    v = z * z;
  }
  return CubeFunction(n, 1, std::move(values));
}

// same field with a uniformly random half of the vertices zeroed
inline CubeFunction random_half_zero(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x5a70ULL);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size);
  for (double& v : values) {
    const double z = rng.next_normal();
    v = z * z;
  }
  // Fisher-Yates pick of size/2 indices to zero
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  for (std::size_t i = size - 1; i > 0; --i) {
    const std::size_t j = rng.next_u64() % (i + 1);
    std::swap(idx[i], idx[j]);
  }
  for (std::size_t i = 0; i < size / 2; ++i) values[idx[i]] = 0.0;
  return CubeFunction(n, 1, std::move(values));
}

// Ent(g^2) <= 2 E sum_i (D_i g)^2
inline CheckResult check_lsi(const CubeFunction& g) {
  const double lhs = entropy_sq(g);
  std::vector<double> terms(g.n());
  for (int i = 1; i <= g.n(); ++i)
    terms[i - 1] = moment(discrete_derivative(g, i), SpaceDescriptor::scalar(), 2.0, false);
  const double rhs = 2.0 * pairwise_sum(terms);
  return CheckResult::pass_fail("lsi", lhs, rhs, {{"n", std::to_string(g.n())}});
}

// Ent(g^2) <= 4 E (Mg)^2
inline CheckResult check_entGT(const CubeFunction& g) {
  const double lhs = entropy_sq(g);
  const double rhs = 4.0 * moment(m_gradient(g), SpaceDescriptor::scalar(), 2.0, false);
  return CheckResult::pass_fail("ent-talagrand-gradient", lhs, rhs, {{"n", std::to_string(g.n())}});
}

// Ent(g^2) <= 2 ||g||^2_{L^2 log L}
inline CheckResult check_ent_orlicz(const CubeFunction& g) {
  const double lhs = entropy_sq(g);
  const double nrm = orlicz_norm(g, 2.0);
  return CheckResult::pass_fail("ent-orlicz", lhs, 2.0 * nrm * nrm,
                                {{"n", std::to_string(g.n())}});
}

/* ||g||^2_{L^2 log L} vs kappa_2 E (Mg)^2 for half-zero g.  The sharp
 * kappa_2 is unknown, so this is report-only with the empirical ratio. */
inline CheckResult check_talagrand(const CubeFunction& g, double kappa2_report = 2.0) {
  const std::size_t size = g.vertex_count();
  std::size_t zeros = 0;
  for (std::size_t b = 0; b < size; ++b) {
    if (g.value(b)[0] < 0.0) throw NegativeInput("check_talagrand requires g >= 0");
    if (g.value(b)[0] == 0.0) ++zeros;
  }
  if (2 * zeros < size) throw PreconditionViolated("zero set must cover at least half the cube");
  const double nrm = orlicz_norm(g, 2.0);
  const double mg_sq = moment(m_gradient(g), SpaceDescriptor::scalar(), 2.0, false);
  std::map<std::string, std::string> params{{"n", std::to_string(g.n())},
                                            {"kappa2", format_double(kappa2_report)}};
  if (mg_sq == 0.0) {
    params["skipped"] = "zero-gradient";
    return CheckResult::report("talagrand-orlicz", 0.0, 0.0, std::move(params));
  }
  params["ratio"] = format_double(nrm * nrm / mg_sq);
  return CheckResult::report("talagrand-orlicz", nrm * nrm, kappa2_report * mg_sq,
                             std::move(params));
}

// midpoint convexity of h(s) = ||F(..., s at i, ...)||_E^{p/2}
inline CheckResult check_separate_convexity(const CubeFunction& f, const SpaceDescriptor& space,
                                            double p, std::size_t x, int i, double s1, double s2) {
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  const auto coeffs = to_coefficients(f);
  std::vector<double> point(f.n());
  for (int j = 1; j <= f.n(); ++j) point[j - 1] = CubeFunction::coord_sign(x, j);
  auto h = [&](double s) {
    point[i - 1] = s;
    return std::pow(norm(space, coeffs.evaluate(point)), 0.5 * p);
  };
  const double lhs = h(0.5 * (s1 + s2));
  const double rhs = 0.5 * (h(s1) + h(s2));
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["i"] = std::to_string(i);
  params["x"] = std::to_string(x);
  return CheckResult::pass_fail("separate-convexity", lhs, rhs, std::move(params));
}

/* (D_i ||f||^{p/2})_+ <= outward chord slope, every vertex and coordinate.
 * The chord slope is clamped at zero: where the positive part vanishes the
 * bound is trivially 0 <= 0 and a negative outward slope carries no
 * information.  Worst slack over (x, i) is reported. */
inline CheckResult check_deriv_bound(const CubeFunction& f, const SpaceDescriptor& space, double p,
                                     double eps) {
  if (eps <= 0.0) throw InvalidEpsilon("eps must be positive");
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  const auto coeffs = to_coefficients(f);
  const CubeFunction nf = norm_function(f, space);
  double worst_slack = std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0, worst_rhs = 0.0;
  std::size_t worst_x = 0;
  int worst_i = 1;
  for (std::size_t b = 0; b < f.vertex_count(); ++b) {
    for (int i = 1; i <= f.n(); ++i) {
      const double gx = std::pow(nf.value(b)[0], 0.5 * p);
      const double gy = std::pow(nf.value(CubeFunction::flip(b, i))[0], 0.5 * p);
      const double lhs = std::max(0.0, 0.5 * (gx - gy));
      const double rhs = std::max(0.0, detail::chord_slope(coeffs, space, p, b, i, eps));
      const double slack = rhs - lhs;
      if (slack < worst_slack) {
        worst_slack = slack;
        worst_lhs = lhs;
        worst_rhs = rhs;
        worst_x = b;
        worst_i = i;
      }
    }
  }
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["eps"] = format_double(eps);
  params["worst_x"] = std::to_string(worst_x);
  params["worst_i"] = std::to_string(worst_i);
  return CheckResult::pass_fail("deriv-chord-bound", worst_lhs, worst_rhs, std::move(params));
}

namespace detail {

inline void require_lipschitz(const CubeFunction& f, const SpaceDescriptor& space,
                              const GradientMode& mode) {
  const double sup = sup_gradient_sq(f, space, mode);
  if (sup > 1.0 + 1e-9) throw NotLipschitz("sup gradient exceeds 1");
}

// scalar function ||f||^{p/2}
inline CubeFunction norm_power(const CubeFunction& f, const SpaceDescriptor& space, double p) {
  const CubeFunction nf = norm_function(f, space);
  std::vector<double> out(nf.vertex_count());
  for (std::size_t b = 0; b < nf.vertex_count(); ++b) out[b] = std::pow(nf.value(b)[0], 0.5 * p);
  return CubeFunction(f.n(), 1, std::move(out));
}

}  // namespace detail

// Ent(||f||^p) <= p^2 a(p)^{1 - 2/p} for Lipschitz f (uncentered moments)
inline CheckResult check_orlicz2(const CubeFunction& f, const SpaceDescriptor& space, double p,
                                 const GradientMode& mode) {
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  detail::require_lipschitz(f, space, mode);
  const double lhs = entropy_sq(detail::norm_power(f, space, p));
  const double a = moment(f, space, p, false);
  const double rhs = p * p * std::pow(a, 1.0 - 2.0 / p);
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["mode"] = mode.name();
  return CheckResult::pass_fail("orlicz2", lhs, rhs, std::move(params));
}

// a'(p) <= (1/p) a log a + p a^{1 - 2/p}
inline CheckResult check_diff1(const CubeFunction& f, const SpaceDescriptor& space, double p,
                               const GradientMode& mode) {
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  detail::require_lipschitz(f, space, mode);
  const double a = moment(f, space, p, false);
  const double lhs = moment_log_derivative(f, space, p, false);
  const double rhs = (a > 0.0 ? a * std::log(a) / p : 0.0) + p * std::pow(a, 1.0 - 2.0 / p);
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["mode"] = mode.name();
  return CheckResult::pass_fail("diff1", lhs, rhs, std::move(params));
}

/* 0 <= beta'(p) <= e^{-2 beta(p)}, with beta'(p) evaluated analytically as
 * a'(p)/(p a(p)) - log a(p)/p^2.  Fails on either side of the sandwich. */
inline CheckResult check_beta_ode(const CubeFunction& f, const SpaceDescriptor& space, double p,
                                  const GradientMode& mode) {
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  detail::require_lipschitz(f, space, mode);
  const double a = moment(f, space, p, false);
  if (a <= 0.0) throw ZeroMoment("a(p) = 0: function vanishes identically");
  const double beta_p = std::log(a) / p;
  const double lhs = moment_log_derivative(f, space, p, false) / (p * a) - std::log(a) / (p * p);
  const double rhs = std::exp(-2.0 * beta_p);
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["mode"] = mode.name();
  params["beta"] = format_double(beta_p);
  CheckResult r = CheckResult::pass_fail("beta-ode", lhs, rhs, std::move(params));
  if (lhs < -1e-9) {
    r.status = CheckStatus::Fail;
    r.params["monotonicity"] = "violated";
  }
  return r;
}

inline double gamma_comparison_curve(double x, double Q, double C) {
  return 0.5 * std::log(2.0 * x + C * C * Q * Q - 2.0 * Q);
}

/* beta(p) <= gamma(p) = (1/2) log(2p + C^2 Q^2 - 2Q) on the grid above Q,
 * provided the premise beta(Q) <= gamma(Q) holds; otherwise report-only.
 * Also verifies gamma' = e^{-2 gamma} by central finite difference. */
inline CheckResult check_gamma_comparison(const CubeFunction& f, const SpaceDescriptor& space,
                                          const std::vector<double>& p_grid,
                                          bool centered = true) {
  const Cotype ct = cotype_of(space);
  std::vector<double> grid;
  for (double p : p_grid)
    if (p >= ct.Q) grid.push_back(p);
  if (grid.empty()) throw EmptyGrid("no grid points at or above the cotype Q");

  double max_fd_resid = 0.0;
  const double h = 1e-4;
  for (double p : grid) {
    const double fd = (gamma_comparison_curve(p + h, ct.Q, ct.C) -
                       gamma_comparison_curve(p - h, ct.Q, ct.C)) /
                      (2.0 * h);
    const double ode = std::exp(-2.0 * gamma_comparison_curve(p, ct.Q, ct.C));
    max_fd_resid = std::max(max_fd_resid, std::abs(fd - ode));
  }

  const double beta_at_Q = beta(f, space, ct.Q, centered);
  const double gamma_at_Q = gamma_comparison_curve(ct.Q, ct.Q, ct.C);
  auto params = detail::base_params(f, space);
  params["Q"] = format_double(ct.Q);
  params["C"] = format_double(ct.C);
  params["gamma_ode_resid"] = format_double(max_fd_resid);

  double worst_slack = std::numeric_limits<double>::infinity();
  double worst_beta = 0.0, worst_gamma = 0.0, worst_p = grid.front();
  for (double p : grid) {
    const double b = beta(f, space, p, centered);
    const double g = gamma_comparison_curve(p, ct.Q, ct.C);
    if (g - b < worst_slack) {
      worst_slack = g - b;
      worst_beta = b;
      worst_gamma = g;
      worst_p = p;
    }
  }
  params["worst_p"] = format_double(worst_p);

  if (beta_at_Q > gamma_at_Q) {
    // premise of the comparison fails; nothing to assert
    params["premise"] = "beta(Q) > gamma(Q)";
    return CheckResult::report("gamma-comparison", worst_beta, worst_gamma, std::move(params));
  }
  CheckResult r =
      CheckResult::pass_fail("gamma-comparison", worst_beta, worst_gamma, std::move(params));
  if (max_fd_resid > 1e-6) r.status = CheckStatus::Fail;
  return r;
}

/* (E ||f - Ef||^p)^{1/p} against the sqrt(p) growth bound; the theorem's
 * universal constant is read as 1, so shortfalls are reported, not failed. */
inline CheckResult check_sqrtp(const CubeFunction& f, const SpaceDescriptor& space, double p,
                               const GradientMode& mode) {
  if (p < 1.0) throw InvalidExponent("exponent must be >= 1");
  detail::require_lipschitz(f, space, mode);
  const Cotype ct = cotype_of(space);
  const double lhs = std::pow(moment(f, space, p, true), 1.0 / p);
  const double rhs = p >= ct.Q ? std::sqrt(2.0 * p + ct.C * ct.C * ct.Q * ct.Q - 2.0 * ct.Q)
                               : ct.C * ct.Q;
  auto params = detail::base_params(f, space);
  params["p"] = format_double(p);
  params["Q"] = format_double(ct.Q);
  params["C"] = format_double(ct.C);
  params["mode"] = mode.name();
  if (rhs - lhs < 0.0)
    return CheckResult::report("sqrtp-growth", lhs, rhs, std::move(params));
  CheckResult r = CheckResult::pass_fail("sqrtp-growth", lhs, rhs, std::move(params));
  return r;
}

/* E e^{||f - Ef||^2 / 4e} vs e^{c0 C^2 Q^2} (c0 unknown: report-only), plus
 * the internal series identity against the order-150 partial sum, which is
 * provable and therefore demoted to fail when violated. */
inline CheckResult check_exp_moment(const CubeFunction& f, const SpaceDescriptor& space,
                                    const GradientMode& mode, double c0_report = 1.0) {
  detail::require_lipschitz(f, space, mode);
  const Cotype ct = cotype_of(space);
  const double tau = 1.0 / (4.0 * std::exp(1.0));
  const double lhs = exp_moment(f, space, tau);
  const double rhs = std::exp(c0_report * ct.C * ct.C * ct.Q * ct.Q);
  const auto partial = sigma_partial_sums(f, space, tau, 150);
  const double gap = std::abs(partial.back() - lhs);
  auto params = detail::base_params(f, space);
  params["tau"] = format_double(tau);
  params["c0"] = format_double(c0_report);
  params["Q"] = format_double(ct.Q);
  params["C"] = format_double(ct.C);
  params["series_gap"] = format_double(gap);
  params["mode"] = mode.name();
  CheckResult r = CheckResult::report("exp-moment", lhs, rhs, std::move(params));
  if (gap >= 1e-8) r.status = CheckStatus::Fail;
  return r;
}

namespace detail {

inline int worker_count() {
  if (const char* env = std::getenv("HCONC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace detail

/* Full randomized suite.  Each trial derives its generators from
 * (seed, trial), trials run in parallel up to HCONC_THREADS, and the result
 * list is sorted by (name, trial), so reports are byte-deterministic. */
inline std::vector<CheckResult> run_suite(const SuiteConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.n < 1) throw ConfigError("n must be at least 1");
  for (double p : config.p_grid)
    if (p < 1.0) throw ConfigError("p-grid entries must be >= 1");
  if (config.p_grid.empty()) throw ConfigError("p-grid must be nonempty");

  const Cotype ct = cotype_of(config.space);
  GradientMode theorem_mode = config.n <= kMaxExactSignEnum
                                  ? GradientMode::p_exact()
                                  : GradientMode::p_monte_carlo(4096, config.seed);

  auto run_trial = [&](int trial) {
    std::vector<CheckResult> out;
    const std::uint64_t tseed = config.seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    auto tag = [&](CheckResult r) {
      r.params["trial"] = std::to_string(trial);
      out.push_back(std::move(r));
    };

    // entropy chain on nonnegative scalar instances
    const CubeFunction g = random_nonnegative(config.n, tseed);
    tag(check_lsi(g));
    tag(check_entGT(g));
    tag(check_ent_orlicz(g));
    tag(check_talagrand(random_half_zero(config.n, tseed), config.kappa2_report));

    // convexity chain on a raw draw
    const CubeFunction f_raw = random_function(config.space, config.n, tseed);
    CounterRng rng(tseed, 0xc0deULL);
    for (int rep = 0; rep < 4; ++rep) {
      const double p = config.p_grid[rep % config.p_grid.size()];
      const std::size_t x = rng.next_u64() % f_raw.vertex_count();
      const int i = 1 + static_cast<int>(rng.next_u64() % f_raw.n());
      const double s1 = rng.next_uniform(-3.0, 3.0);
      const double s2 = rng.next_uniform(-3.0, 3.0);
      tag(check_separate_convexity(f_raw, config.space, p, x, i, s1, s2));
    }
    for (double eps : config.epsilons)
      tag(check_deriv_bound(f_raw, config.space, config.p_grid.front(), eps));

    // moment chain on a Lipschitz-normalized draw
    const CubeFunction f_lip = random_function(config.space, config.n, tseed, config.mode);
    for (double p : config.p_grid) {
      tag(check_orlicz2(f_lip, config.space, p, config.mode));
      tag(check_diff1(f_lip, config.space, p, config.mode));
      tag(check_beta_ode(f_lip, config.space, p, config.mode));
    }

    // concentration theorems on a mean-zero P-normalized draw
    const CubeFunction f_thm =
        random_function(config.space, config.n, tseed ^ 0x7777ULL, theorem_mode, true);
    for (double p : config.p_grid) tag(check_sqrtp(f_thm, config.space, p, theorem_mode));
    tag(check_exp_moment(f_thm, config.space, theorem_mode, config.c0_report));
    bool has_grid_point = false;
    for (double p : config.p_grid) has_grid_point = has_grid_point || p >= ct.Q;
    if (has_grid_point) tag(check_gamma_comparison(f_thm, config.space, config.p_grid));
    return out;
  };

  std::vector<std::vector<CheckResult>> per_trial(config.trials);
  const int workers = std::min(detail::worker_count(), config.trials);
  if (workers <= 1) {
    for (int t = 0; t < config.trials; ++t) per_trial[t] = run_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1))
          per_trial[t] = run_trial(t);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<CheckResult> results;
  for (auto& v : per_trial)
    for (auto& r : v) results.push_back(std::move(r));
  std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.name != b.name) return a.name < b.name;
    return std::stoi(a.params.at("trial")) < std::stoi(b.params.at("trial"));
  });
  return results;
}

}  // namespace hamcube
