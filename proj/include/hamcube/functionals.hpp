#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/numeric.hpp"
#include "hamcube/rng.hpp"
#include "hamcube/spaces.hpp"

namespace hamcube {

inline constexpr int kMaxExactSignEnum = 20;  // 2^n sign vectors per vertex

// Which Lipschitz gradient to evaluate.
struct GradientMode {
  enum class Tag { Gamma, P, Weak };
  enum class DeltaStrategy { Exact, MonteCarlo };

  Tag tag = Tag::Gamma;
  DeltaStrategy delta = DeltaStrategy::Exact;
  int mc_samples = 4096;
  std::uint64_t seed = 0;

  static GradientMode gamma() { return {Tag::Gamma}; }
  static GradientMode p_exact() { return {Tag::P, DeltaStrategy::Exact}; }
  static GradientMode p_monte_carlo(int k, std::uint64_t seed) {
    return {Tag::P, DeltaStrategy::MonteCarlo, k, seed};
  }
  static GradientMode weak() { return {Tag::Weak}; }

  const char* name() const {
    switch (tag) {
      case Tag::Gamma: return "gamma";
      case Tag::P: return delta == DeltaStrategy::Exact ? "p-exact" : "p-mc";
      case Tag::Weak: return "weak";
    }
    return "?";
  }
};

namespace detail {

// D_i f at a single vertex, without materializing the derivative function
inline void derivative_at(const CubeFunction& f, std::size_t b, int i, std::span<double> out) {
  const auto fx = f.value(b);
  const auto fy = f.value(CubeFunction::flip(b, i));
  for (int j = 0; j < f.dim(); ++j) out[j] = 0.5 * (fx[j] - fy[j]);
}

// all n derivatives at vertex b, row i-1 holds D_i f(b)
inline std::vector<double> derivative_rows(const CubeFunction& f, std::size_t b) {
  std::vector<double> rows(static_cast<std::size_t>(f.n()) * f.dim());
  for (int i = 1; i <= f.n(); ++i)
    derivative_at(f, b, i, {rows.data() + static_cast<std::size_t>(i - 1) * f.dim(),
                            static_cast<std::size_t>(f.dim())});
  return rows;
}

}  // namespace detail

// Ent(g^2) = E[g^2 log g^2] - E[g^2] log E[g^2], with 0 log 0 = 0
inline double entropy_sq(const CubeFunction& g) {
  if (g.dim() != 1) throw DimensionMismatch("entropy_sq expects a scalar function");
  const std::size_t size = g.vertex_count();
  std::vector<double> sq(size), ent(size);
  for (std::size_t b = 0; b < size; ++b) {
    const double v = g.value(b)[0];
    if (v < 0.0) throw NegativeInput("entropy_sq requires g >= 0");
    sq[b] = v * v;
    ent[b] = xlogx(v * v);
  }
  const double mean_sq = pairwise_sum(sq) / static_cast<double>(size);
  if (mean_sq == 0.0) return 0.0;
  return pairwise_sum(ent) / static_cast<double>(size) - xlogx(mean_sq);
}

/* Luxemburg norm inf{ lambda > 0 : E Psi_p(g/lambda) <= 1 } with
 * Psi_p(t) = t^p log^{p/2}(e + t^2); bisection on [1e-12 max g, 10 max g]. */
inline double orlicz_norm(const CubeFunction& g, double p = 2.0) {
  if (g.dim() != 1) throw DimensionMismatch("orlicz_norm expects a scalar function");
  if (p < 2.0) throw InvalidExponent("Orlicz exponent must be >= 2");
  const std::size_t size = g.vertex_count();
  double max_g = 0.0;
  for (std::size_t b = 0; b < size; ++b) {
    const double v = g.value(b)[0];
    if (v < 0.0) throw NegativeInput("orlicz_norm requires g >= 0");
    max_g = std::max(max_g, v);
  }
  if (max_g == 0.0) return 0.0;

  auto psi_mean = [&](double lambda) {
    std::vector<double> terms(size);
    for (std::size_t b = 0; b < size; ++b) {
      const double t = g.value(b)[0] / lambda;
      terms[b] = std::pow(t, p) * std::pow(std::log(std::exp(1.0) + t * t), 0.5 * p);
    }
    return pairwise_sum(terms) / static_cast<double>(size);
  };

  double lo = 1e-12 * max_g, hi = 10.0 * max_g;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (psi_mean(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

// Talagrand's one-sided gradient Mg(x) = (sum_i [(D_i g)_+]^2)^{1/2}
inline CubeFunction m_gradient(const CubeFunction& g) {
  if (g.dim() != 1) throw DimensionMismatch("m_gradient expects a scalar function");
  const std::size_t size = g.vertex_count();
  std::vector<double> out(size);
  for (std::size_t b = 0; b < size; ++b) {
    double s = 0.0;
    for (int i = 1; i <= g.n(); ++i) {
      const double di = 0.5 * (g.value(b)[0] - g.value(CubeFunction::flip(b, i))[0]);
      if (di > 0.0) s += di * di;
    }
    out[b] = std::sqrt(s);
  }
  return CubeFunction(g.n(), 1, std::move(out));
}

namespace detail {

// sum_i ||D_i f(x)||_E^2
inline double gamma_sq_at(const CubeFunction& f, const SpaceDescriptor& space, std::size_t b) {
  std::vector<double> di(f.dim());
  std::vector<double> terms(f.n());
  for (int i = 1; i <= f.n(); ++i) {
    derivative_at(f, b, i, di);
    const double nv = norm(space, di);
    terms[i - 1] = nv * nv;
  }
  return pairwise_sum(terms);
}

/* E_delta ||sum_i delta_i D_i f(x)||_E^2 by Gray-code enumeration: each
 * step flips one sign, so the accumulated vector updates in O(dim). */
inline double p_sq_exact_at(const CubeFunction& f, const SpaceDescriptor& space, std::size_t b) {
  if (f.n() > kMaxExactSignEnum) throw ExactTooLarge("exact sign enumeration limited to n <= 20");
  const auto rows = detail::derivative_rows(f, b);
  const int dim = f.dim();
  std::vector<double> acc(dim, 0.0);
  for (int i = 0; i < f.n(); ++i)
    for (int j = 0; j < dim; ++j) acc[j] += rows[static_cast<std::size_t>(i) * dim + j];

  const std::size_t count = std::size_t{1} << f.n();
  std::vector<double> terms(count);
  std::size_t gray = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) {
      const std::size_t next = k ^ (k >> 1);
      const std::size_t changed = gray ^ next;
      int i = 0;
      while (!((changed >> i) & 1u)) ++i;
      // sign i went from +delta to -delta or back: adjust by -+2 * current sign * row
      const double step = ((next >> i) & 1u) ? -2.0 : 2.0;
      for (int j = 0; j < dim; ++j) acc[j] += step * rows[static_cast<std::size_t>(i) * dim + j];
      gray = next;
    }
    const double nv = norm(space, acc);
    terms[k] = nv * nv;
  }
  return pairwise_sum(terms) / static_cast<double>(count);
}

inline double p_sq_monte_carlo_at(const CubeFunction& f, const SpaceDescriptor& space,
                                  std::size_t b, int samples, std::uint64_t seed) {
  const auto rows = detail::derivative_rows(f, b);
  const int dim = f.dim();
  CounterRng rng(seed, b);
  std::vector<double> acc(dim);
  std::vector<double> terms(samples);
  for (int k = 0; k < samples; ++k) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int i = 0; i < f.n(); ++i) {
      const double s = (rng.next_u64() & 1u) ? -1.0 : 1.0;
      for (int j = 0; j < dim; ++j) acc[j] += s * rows[static_cast<std::size_t>(i) * dim + j];
    }
    const double nv = norm(space, acc);
    terms[k] = nv * nv;
  }
  return pairwise_sum(terms) / static_cast<double>(samples);
}

/* Weak gradient sup_{||xi||_{E*}=1} sum_i <xi, D_i f(x)>^2.  Exact on
 * scalar (= Gamma) and Euclidean targets (top eigenvalue of the derivative
 * Gram matrix); elsewhere a projected-ascent lower bound. */
inline double weak_sq_at(const CubeFunction& f, const SpaceDescriptor& space, std::size_t b,
                         bool* exact = nullptr) {
  const int dim = f.dim();
  if (space.kind == SpaceKind::Scalar) {
    if (exact) *exact = true;
    return gamma_sq_at(f, space, b);
  }
  const auto rows = detail::derivative_rows(f, b);
  if (space.kind == SpaceKind::Euclidean) {
    if (exact) *exact = true;
    // Gram(j,k) = sum_i D_i f(x)_j D_i f(x)_k; top eigenvalue = top squared
    // singular value of the dim x n derivative matrix
    std::vector<double> gram(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < f.n(); ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          gram[static_cast<std::size_t>(j) * dim + k] +=
              rows[static_cast<std::size_t>(i) * dim + j] *
              rows[static_cast<std::size_t>(i) * dim + k];
    const auto eig = symmetric_eigenvalues(gram, dim);
    return std::max(0.0, eig.front());
  }

  if (exact) *exact = false;
  // ascent over the dual sphere; objective sum_i <xi, D_i>^2 is 2-homogeneous
  auto objective = [&](std::span<const double> xi, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double val = 0.0;
    for (int i = 0; i < f.n(); ++i) {
      double inner = 0.0;
      for (int j = 0; j < dim; ++j)
        inner += xi[j] * rows[static_cast<std::size_t>(i) * dim + j];
      val += inner * inner;
      for (int j = 0; j < dim; ++j)
        grad[j] += 2.0 * inner * rows[static_cast<std::size_t>(i) * dim + j];
    }
    return val;
  };

  double best = 0.0;
  std::vector<double> xi(dim), grad(dim);
  for (int restart = 0; restart < 40; ++restart) {
    CounterRng rng(0x5eadULL, (b << 8) | static_cast<std::size_t>(restart));
    for (double& x : xi) x = rng.next_normal();
    double dn = dual_norm(space, xi);
    if (dn == 0.0) continue;
    for (double& x : xi) x /= dn;
    double val = 0.0;
    for (int it = 0; it < 200; ++it) {
      val = objective(xi, grad);
      double gn = 0.0;
      for (double gj : grad) gn += gj * gj;
      gn = std::sqrt(gn);
      if (gn < 1e-14) break;
      const double step = 0.2 / gn * std::max(1.0, std::sqrt(val));
      for (int j = 0; j < dim; ++j) xi[j] += step * grad[j];
      dn = dual_norm(space, xi);
      if (dn == 0.0) break;
      for (double& x : xi) x /= dn;
    }
    best = std::max(best, objective(xi, grad));
  }
  return best;
}

}  // namespace detail

inline bool weak_mode_is_exact(const SpaceDescriptor& space) {
  return space.kind == SpaceKind::Scalar || space.kind == SpaceKind::Euclidean;
}

// squared Lipschitz gradient at one vertex
inline double gradient_sq(const CubeFunction& f, const SpaceDescriptor& space,
                          const GradientMode& mode, std::size_t x) {
  if (f.dim() != space.ambient_dim())
    throw DimensionMismatch("function dimension does not match space");
  switch (mode.tag) {
    case GradientMode::Tag::Gamma:
      return detail::gamma_sq_at(f, space, x);
    case GradientMode::Tag::P:
      return mode.delta == GradientMode::DeltaStrategy::Exact
                 ? detail::p_sq_exact_at(f, space, x)
                 : detail::p_sq_monte_carlo_at(f, space, x, mode.mc_samples, mode.seed);
    case GradientMode::Tag::Weak:
      return detail::weak_sq_at(f, space, x);
  }
  throw Error("unknown gradient mode");
}

inline double sup_gradient_sq(const CubeFunction& f, const SpaceDescriptor& space,
                              const GradientMode& mode) {
  double sup = 0.0;
  for (std::size_t b = 0; b < f.vertex_count(); ++b)
    sup = std::max(sup, gradient_sq(f, space, mode, b));
  return sup;
}

// scalar function ||f(x)||_E over the cube
inline CubeFunction norm_function(const CubeFunction& f, const SpaceDescriptor& space) {
  if (f.dim() != space.ambient_dim())
    throw DimensionMismatch("function dimension does not match space");
  const std::size_t size = f.vertex_count();
  std::vector<double> out(size);
  for (std::size_t b = 0; b < size; ++b) out[b] = norm(space, f.value(b));
  return CubeFunction(f.n(), 1, std::move(out));
}

// a(p) = E ||g||_E^p with g = f - Ef when centered
inline double moment(const CubeFunction& f, const SpaceDescriptor& space, double p,
                     bool centered = true) {
  if (p < 1.0) throw InvalidExponent("moment exponent must be >= 1");
  const CubeFunction g = centered ? center(f) : f;
  const std::size_t size = g.vertex_count();
  std::vector<double> terms(size);
  for (std::size_t b = 0; b < size; ++b) terms[b] = std::pow(norm(space, g.value(b)), p);
  return pairwise_sum(terms) / static_cast<double>(size);
}

// beta(p) = log a(p) / p
inline double beta(const CubeFunction& f, const SpaceDescriptor& space, double p,
                   bool centered = true) {
  const double a = moment(f, space, p, centered);
  if (a <= 0.0) throw ZeroMoment("a(p) = 0: function is constant");
  return std::log(a) / p;
}

// a'(p) = E(||g||^p log ||g||), the analytic derivative of a(p)
inline double moment_log_derivative(const CubeFunction& f, const SpaceDescriptor& space, double p,
                                    bool centered = true) {
  if (p < 1.0) throw InvalidExponent("moment exponent must be >= 1");
  const CubeFunction g = centered ? center(f) : f;
  const std::size_t size = g.vertex_count();
  std::vector<double> terms(size);
  for (std::size_t b = 0; b < size; ++b) {
    const double nv = norm(space, g.value(b));
    terms[b] = nv > 0.0 ? std::pow(nv, p) * std::log(nv) : 0.0;
  }
  return pairwise_sum(terms) / static_cast<double>(size);
}

// E exp(tau ||f - Ef||_E^2), exact vertex average
inline double exp_moment(const CubeFunction& f, const SpaceDescriptor& space, double tau) {
  if (tau <= 0.0) throw InvalidExponent("tau must be positive");
  const CubeFunction g = center(f);
  const std::size_t size = g.vertex_count();
  std::vector<double> terms(size);
  for (std::size_t b = 0; b < size; ++b) {
    const double nv = norm(space, g.value(b));
    const double arg = tau * nv * nv;
    if (arg > 700.0) throw Overflow("exponent argument exceeds 700");
    terms[b] = std::exp(arg);
  }
  return pairwise_sum(terms) / static_cast<double>(size);
}

/* Partial sums of Sigma = sum_k tau^k a(2k) / k! with centered moments.
 * Accumulated per vertex as the truncated series of exp(tau ||g||^2), which
 * is the same sum with the expectation pulled inside; avoids forming the
 * huge intermediate a(2k). */
inline std::vector<double> sigma_partial_sums(const CubeFunction& f, const SpaceDescriptor& space,
                                              double tau, int N) {
  if (tau <= 0.0) throw InvalidExponent("tau must be positive");
  if (N < 1 || N > 200) throw InvalidRange("N must be in [1, 200]");
  const CubeFunction g = center(f);
  const std::size_t size = g.vertex_count();
  std::vector<double> args(size);
  for (std::size_t b = 0; b < size; ++b) {
    const double nv = norm(space, g.value(b));
    args[b] = tau * nv * nv;
    if (args[b] > 700.0) throw Overflow("exponent argument exceeds 700");
  }
  std::vector<double> term(size, 1.0);  // tau^k ||g||^{2k} / k! per vertex
  std::vector<double> vertex_sum(size, 1.0);
  std::vector<double> partial(N);
  partial[0] = 1.0;
  for (int k = 1; k < N; ++k) {
    for (std::size_t b = 0; b < size; ++b) {
      term[b] *= args[b] / static_cast<double>(k);
      vertex_sum[b] += term[b];
    }
    partial[k] = pairwise_sum(vertex_sum) / static_cast<double>(size);
  }
  return partial;
}

/* f / sqrt(sup gradient^2): the gradients are 1-homogeneous in f after the
 * square root, so this is an exact projection onto the Lipschitz constraint
 * and the rescaled sup equals 1 up to rounding. */
inline CubeFunction lipschitz_normalize(const CubeFunction& f, const SpaceDescriptor& space,
                                        const GradientMode& mode) {
  const double sup = sup_gradient_sq(f, space, mode);
  if (sup <= 0.0) throw DegenerateInput("constant function cannot be Lipschitz-normalized");
  return scale(f, 1.0 / std::sqrt(sup));
}

/* Outward chord slope of h(s) = ||F(x with coordinate i set to s)||_E^{p/2}.
 * For x_i = +1 this is the chord over [1, 1+eps]; for x_i = -1 the chord
 * over [-1-eps, -1] with the sign folded so that "h growing outward" is
 * positive in both cases.  Convexity makes it nondecreasing in eps and, on
 * the side where (D_i h)_+ > 0, an upper bound for it. */
namespace detail {

inline double chord_slope(const FourierCoefficients& coeffs, const SpaceDescriptor& space,
                          double p, std::size_t x, int i, double eps) {
  std::vector<double> point(coeffs.n());
  for (int j = 1; j <= coeffs.n(); ++j) point[j - 1] = CubeFunction::coord_sign(x, j);
  auto h = [&](double s) {
    point[i - 1] = s;
    return std::pow(norm(space, coeffs.evaluate(point)), 0.5 * p);
  };
  const double sign = CubeFunction::coord_sign(x, i);
  if (sign > 0.0) return (h(1.0 + eps) - h(1.0)) / eps;
  return (h(-1.0 - eps) - h(-1.0)) / eps;
}

}  // namespace detail

inline double outward_chord_slope(const CubeFunction& f, const SpaceDescriptor& space, double p,
                                  std::size_t x, int i, double eps) {
  if (eps <= 0.0) throw InvalidEpsilon("eps must be positive");
  if (p < 2.0) throw InvalidExponent("exponent must be >= 2");
  if (i < 1 || i > f.n()) throw IndexOutOfRange("coordinate index out of range");
  return detail::chord_slope(to_coefficients(f), space, p, x, i, eps);
}

}  // namespace hamcube
