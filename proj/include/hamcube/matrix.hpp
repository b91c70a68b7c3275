#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/functionals.hpp"
#include "hamcube/report.hpp"
#include "hamcube/spaces.hpp"

namespace hamcube {

inline constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

/* A cube function into d x d real matrices (row-major), dim = d^2, together
 * with the Schatten exponent used for norm evaluation. */
struct MatrixFunction {
  CubeFunction f;
  int d;

  MatrixFunction(CubeFunction fn, int d_) : f(std::move(fn)), d(d_) {
    if (d < 1 || f.dim() != d * d)
      throw DimensionMismatch("matrix function requires dim = d^2 exactly");
  }

  SpaceDescriptor space(double p) const {
    return std::isinf(p) ? SpaceDescriptor::operator_norm(d) : SpaceDescriptor::schatten(p, d);
  }
};

namespace detail {

// ||B^{1/2}||_{S_p} from the eigenvalues of the PSD matrix B
inline double psd_sqrt_schatten(const std::vector<double>& eig, double p) {
  double worst = 0.0;
  for (double l : eig) worst = std::min(worst, l);
  if (worst < -1e-10) throw NotPSD("Gram sum has a negative eigenvalue");
  if (std::isinf(p)) {
    double top = 0.0;
    for (double l : eig) top = std::max(top, l);
    return std::sqrt(top);
  }
  double s = 0.0;
  for (double l : eig) s += std::pow(std::max(l, 0.0), 0.5 * p);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

/* K^2_p at vertex x: Schatten norms of the square roots of the row and
 * column Gram sums of the discrete derivatives. */
inline double k_sq_p(const MatrixFunction& mf, double p, std::size_t x) {
  if (!std::isinf(p) && p < 2.0) throw InvalidExponent("Schatten exponent must be >= 2");
  const int d = mf.d;
  const auto rows = detail::derivative_rows(mf.f, x);  // n matrices, row-major
  std::vector<double> left(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> right(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < mf.f.n(); ++i) {
    const double* a = rows.data() + static_cast<std::size_t>(i) * d * d;
    // left += A A^T, right += A^T A
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        double lsum = 0.0, rsum = 0.0;
        for (int k = 0; k < d; ++k) {
          lsum += a[r * d + k] * a[c * d + k];
          rsum += a[k * d + r] * a[k * d + c];
        }
        left[static_cast<std::size_t>(r) * d + c] += lsum;
        right[static_cast<std::size_t>(r) * d + c] += rsum;
      }
  }
  return detail::psd_sqrt_schatten(symmetric_eigenvalues(left, d), p) +
         detail::psd_sqrt_schatten(symmetric_eigenvalues(right, d), p);
}

inline double sup_k_sq_p(const MatrixFunction& mf, double p) {
  double sup = 0.0;
  for (std::size_t b = 0; b < mf.f.vertex_count(); ++b) sup = std::max(sup, k_sq_p(mf, p, b));
  return sup;
}

/* P^2_p at vertex x: (E_delta ||sum delta_i D_i f||^2_{S_p})^{1/2}, rooted
 * exactly as the matrix-space display writes it. */
inline double p_sq_p(const MatrixFunction& mf, double p, std::size_t x,
                     const GradientMode& mode = GradientMode::p_exact()) {
  const SpaceDescriptor space = mf.space(p);
  GradientMode m = mode;
  m.tag = GradientMode::Tag::P;
  return std::sqrt(gradient_sq(mf.f, space, m, x));
}

inline double sup_p_sq_p(const MatrixFunction& mf, double p,
                         const GradientMode& mode = GradientMode::p_exact()) {
  double sup = 0.0;
  for (std::size_t b = 0; b < mf.f.vertex_count(); ++b)
    sup = std::max(sup, p_sq_p(mf, p, b, mode));
  return sup;
}

/* Empirical ratio P^2_p / K^2_p against the non-commutative Khintchine
 * factor min(sqrt p, sqrt log d).  The constants c1, c2 are unspecified,
 * so this never passes or fails. */
inline CheckResult khintchine_report(const MatrixFunction& mf, double p, std::size_t x) {
  const double k = k_sq_p(mf, p, x);
  if (k == 0.0) throw ZeroDenominator("K^2_p vanishes (constant function)");
  const double pv = p_sq_p(mf, p, x);
  const double factor = std::isinf(p)
                            ? std::sqrt(std::log(static_cast<double>(mf.d)))
                            : std::min(std::sqrt(p), std::sqrt(std::log(static_cast<double>(mf.d))));
  std::map<std::string, std::string> params{
      {"n", std::to_string(mf.f.n())},
      {"d", std::to_string(mf.d)},
      {"p", format_double(p)},
      {"x", std::to_string(x)},
      {"ratio", format_double(pv / k)},
      {"factor", format_double(factor)}};
  return CheckResult::report("khintchine-ratio", pv, factor * k, std::move(params));
}

// ||A||_{S_p} <= d^{1/p} ||A||_op
inline CheckResult check_schatten_vs_operator(std::span<const double> a, int d, double p) {
  if (p < 2.0) throw InvalidExponent("Schatten exponent must be >= 2");
  const auto sigma = singular_values(a, d);
  const double lhs = schatten_norm_from_singulars(sigma, p);
  const double rhs = std::pow(static_cast<double>(d), 1.0 / p) * sigma.front();
  return CheckResult::pass_fail("schatten-vs-operator", lhs, rhs,
                                {{"d", std::to_string(d)}, {"p", format_double(p)}});
}

enum class MomentVariant { M1, M2, M3 };

/* Moment bounds for mean-zero matrix functions under the variant's own
 * Lipschitz normalization: m1 caps the operator-norm moment by log d for
 * p <= log d, m2 is the P^2_p bound (pass/fail), m3 routes through the
 * Khintchine constant c2 and is report-only. */
inline CheckResult check_matrix_moments(const MatrixFunction& mf, double p, MomentVariant variant,
                                        double c2_report = 1.0) {
  const int d = mf.d;
  const double logd = std::log(static_cast<double>(d));
  const CubeFunction g = center(mf.f);
  const MatrixFunction mg(g, d);
  std::map<std::string, std::string> params{
      {"n", std::to_string(mf.f.n())}, {"d", std::to_string(d)}, {"p", format_double(p)}};

  switch (variant) {
    case MomentVariant::M1: {
      if (p < 1.0 || p > logd + 1e-12) throw InvalidRange("m1 requires p in [1, log d]");
      const SpaceDescriptor op = SpaceDescriptor::operator_norm(d);
      const double sup = sup_gradient_sq(g, op, GradientMode::p_exact());
      if (sup > 1.0 + 1e-9) throw NotLipschitz("operator-norm P gradient exceeds 1");
      const double lhs = std::pow(moment(g, op, p, false), 1.0 / p);
      return CheckResult::pass_fail("matrix-m1", lhs, logd, std::move(params));
    }
    case MomentVariant::M2: {
      if (p < 2.0) throw InvalidRange("m2 requires p >= 2");
      const double sup = sup_p_sq_p(mg, p);
      if (sup > 1.0 + 1e-9) throw NotLipschitz("P^2_p exceeds 1");
      const SpaceDescriptor sp = mg.space(p);
      const double lhs = std::pow(moment(g, sp, p, false), 1.0 / p);
      const double high = std::sqrt((2.0 * p - 1.0) + (logd - 1.0) * (logd - 1.0));
      double rhs;
      if (std::abs(p - logd) <= 1e-12) {
        // boundary belongs to both branches; record both, assert the smaller
        params["rhs_low_branch"] = format_double(p);
        params["rhs_high_branch"] = format_double(high);
        rhs = std::min(p, high);
      } else if (p < logd) {
        rhs = p;
      } else {
        rhs = high;
      }
      return CheckResult::pass_fail("matrix-m2", lhs, rhs, std::move(params));
    }
    case MomentVariant::M3: {
      if (p < 2.0) throw InvalidRange("m3 requires p >= 2");
      const double sup = sup_k_sq_p(mg, kSchattenInf);
      if (sup > 1.0 + 1e-9) throw NotLipschitz("K^2_inf exceeds 1");
      const SpaceDescriptor sp = mg.space(p);
      const double lhs = std::pow(moment(g, sp, p, false), 1.0 / p);
      const double high = std::sqrt(logd) * std::sqrt((2.0 * p - 1.0) + (logd - 1.0) * (logd - 1.0));
      const double low = std::pow(static_cast<double>(d), 1.0 / p) * std::pow(p, 1.5);
      double rhs;
      if (std::abs(p - logd) <= 1e-12) {
        params["rhs_low_branch"] = format_double(c2_report * low);
        params["rhs_high_branch"] = format_double(c2_report * high);
        rhs = c2_report * std::min(low, high);
      } else {
        rhs = c2_report * (p < logd ? low : high);
      }
      params["c2"] = format_double(c2_report);
      return CheckResult::report("matrix-m3", lhs, rhs, std::move(params));
    }
  }
  throw Error("unknown moment variant");
}

// normalization helpers used by the suite and CLI
inline MatrixFunction normalize_p_sq(const MatrixFunction& mf, double p) {
  const double sup = sup_p_sq_p(mf, p);
  if (sup <= 0.0) throw DegenerateInput("constant matrix function");
  return MatrixFunction(scale(mf.f, 1.0 / sup), mf.d);
}

inline MatrixFunction normalize_k_inf(const MatrixFunction& mf) {
  const double sup = sup_k_sq_p(mf, kSchattenInf);
  if (sup <= 0.0) throw DegenerateInput("constant matrix function");
  return MatrixFunction(scale(mf.f, 1.0 / sup), mf.d);
}

}  // namespace hamcube
