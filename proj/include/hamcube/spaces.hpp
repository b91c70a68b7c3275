#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "hamcube/errors.hpp"

namespace hamcube {

enum class SpaceKind { Scalar, Euclidean, Schatten, OperatorNorm };

/* Which norm the target space E carries, plus the registered cotype pair
 * (Q, C(E)) consumed by the concentration bounds.  Matrices are real d x d,
 * stored row-major, so the ambient coordinate dimension is d^2. */
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::Scalar;
  int d = 1;        // vector / matrix dimension
  double p = 2.0;   // Schatten exponent, 2 <= p < inf

  static SpaceDescriptor scalar() { return {SpaceKind::Scalar, 1, 2.0}; }
  static SpaceDescriptor euclidean(int d) {
    if (d < 1) throw UnsupportedSpace("euclidean dimension must be positive");
    return {SpaceKind::Euclidean, d, 2.0};
  }
  static SpaceDescriptor schatten(double p, int d) {
    if (p < 2.0) throw InvalidExponent("Schatten exponent must be >= 2");
    if (d < 1) throw UnsupportedSpace("matrix dimension must be positive");
    return {SpaceKind::Schatten, d, p};
  }
  static SpaceDescriptor operator_norm(int d) {
    if (d < 1) throw UnsupportedSpace("matrix dimension must be positive");
    return {SpaceKind::OperatorNorm, d, 2.0};
  }

  int ambient_dim() const {
    switch (kind) {
      case SpaceKind::Scalar: return 1;
      case SpaceKind::Euclidean: return d;
      case SpaceKind::Schatten:
      case SpaceKind::OperatorNorm: return d * d;
    }
    throw UnsupportedSpace("unknown space kind");
  }

  std::string name() const {
    switch (kind) {
      case SpaceKind::Scalar: return "scalar";
      case SpaceKind::Euclidean: return "euclidean(" + std::to_string(d) + ")";
      case SpaceKind::Schatten:
        return "schatten(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ")";
      case SpaceKind::OperatorNorm: return "operator(" + std::to_string(d) + ")";
    }
    return "?";
  }
};

/* Singular values of a d x d real matrix (row-major), nonincreasing.
 * One-sided Jacobi: orthogonalize column pairs until every off-diagonal
 * inner product is below 1e-14 * ||A||_F^2; at most 60 sweeps. */
inline std::vector<double> singular_values(std::span<const double> a_rowmajor, int d) {
  if (d < 1 || a_rowmajor.size() != static_cast<std::size_t>(d) * d)
    throw DimensionMismatch("matrix buffer does not match dimension");
  // work on columns: col[j][i] = A(i,j)
  std::vector<double> col(static_cast<std::size_t>(d) * d);
  double frob_sq = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double v = a_rowmajor[static_cast<std::size_t>(i) * d + j];
      if (!std::isfinite(v)) throw NonFinite("non-finite matrix entry");
      col[static_cast<std::size_t>(j) * d + i] = v;
      frob_sq += v * v;
    }
  std::vector<double> sigma(d, 0.0);
  if (frob_sq == 0.0) return sigma;

  const double tol = 1e-14 * frob_sq;
  auto dot = [&](int j, int k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += col[static_cast<std::size_t>(j) * d + i] *
                                      col[static_cast<std::size_t>(k) * d + i];
    return s;
  };

  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (int j = 0; j < d - 1; ++j) {
      for (int k = j + 1; k < d; ++k) {
        const double apq = dot(j, k);
        if (std::abs(apq) <= tol) continue;
        converged = false;
        const double app = dot(j, j);
        const double aqq = dot(k, k);
        // Jacobi rotation annihilating the (j,k) Gram entry
        const double theta = 0.5 * std::atan2(2.0 * apq, app - aqq);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int i = 0; i < d; ++i) {
          const double u = col[static_cast<std::size_t>(j) * d + i];
          const double v = col[static_cast<std::size_t>(k) * d + i];
          col[static_cast<std::size_t>(j) * d + i] = c * u + s * v;
          col[static_cast<std::size_t>(k) * d + i] = -s * u + c * v;
        }
      }
    }
  }
  if (!converged) throw NoConvergence("Jacobi SVD did not converge in 60 sweeps");

  for (int j = 0; j < d; ++j) sigma[j] = std::sqrt(dot(j, j));
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

/* Eigenvalues of a symmetric d x d matrix (row-major), nonincreasing.
 * Classical two-sided Jacobi; used for the PSD Gram sums in the matrix
 * gradients and the exact Euclidean weak-Lipschitz norm. */
inline std::vector<double> symmetric_eigenvalues(std::span<const double> a_rowmajor, int d) {
  if (d < 1 || a_rowmajor.size() != static_cast<std::size_t>(d) * d)
    throw DimensionMismatch("matrix buffer does not match dimension");
  std::vector<double> a(a_rowmajor.begin(), a_rowmajor.end());
  double frob_sq = 0.0;
  for (double v : a) frob_sq += v * v;
  if (frob_sq == 0.0) return std::vector<double>(d, 0.0);
  const double tol = 1e-14 * std::sqrt(frob_sq);

  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * d + j]; };
  bool converged = false;
  for (int sweep = 0; sweep < 80 && !converged; ++sweep) {
    converged = true;
    for (int i = 0; i < d - 1; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double apq = at(i, j);
        if (std::abs(apq) <= tol) continue;
        converged = false;
        const double theta = 0.5 * std::atan2(2.0 * apq, at(i, i) - at(j, j));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < d; ++k) {
          const double u = at(i, k), v = at(j, k);
          at(i, k) = c * u + s * v;
          at(j, k) = -s * u + c * v;
        }
        for (int k = 0; k < d; ++k) {
          const double u = at(k, i), v = at(k, j);
          at(k, i) = c * u + s * v;
          at(k, j) = -s * u + c * v;
        }
      }
    }
  }
  if (!converged) throw NoConvergence("Jacobi eigensolver did not converge in 80 sweeps");

  std::vector<double> eig(d);
  for (int i = 0; i < d; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

inline double schatten_norm_from_singulars(const std::vector<double>& sigma, double p) {
  double s = 0.0;
  for (double v : sigma) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

// ||v||_E
inline double norm(const SpaceDescriptor& space, std::span<const double> v) {
  if (v.size() != static_cast<std::size_t>(space.ambient_dim()))
    throw DimensionMismatch("value dimension does not match space");
  switch (space.kind) {
    case SpaceKind::Scalar:
      return std::abs(v[0]);
    case SpaceKind::Euclidean: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case SpaceKind::Schatten: {
      if (space.p < 2.0) throw InvalidExponent("Schatten exponent must be >= 2");
      return schatten_norm_from_singulars(singular_values(v, space.d), space.p);
    }
    case SpaceKind::OperatorNorm: {
      const auto sigma = singular_values(v, space.d);
      return sigma.empty() ? 0.0 : sigma.front();
    }
  }
  throw UnsupportedSpace("unknown space kind");
}

/* Registered cotype pair (Q, C(E)).  Schatten(p,d) -> (p, 1) and
 * operator norm -> (log d, 1), natural log.  The Hilbert-space pair (2, 1)
 * for scalar/Euclidean targets is a standard fact recorded here for
 * completeness; it is not sourced from the registry's primary reference. */
struct Cotype {
  double Q;
  double C;
};

inline Cotype cotype_of(const SpaceDescriptor& space) {
  switch (space.kind) {
    case SpaceKind::Scalar:
    case SpaceKind::Euclidean:
      return {2.0, 1.0};
    case SpaceKind::Schatten:
      return {space.p, 1.0};
    case SpaceKind::OperatorNorm:
      if (space.d < 3)
        throw UnsupportedSpace("operator-norm cotype registry requires d >= 3 (Q = log d > 1)");
      return {std::log(static_cast<double>(space.d)), 1.0};
  }
  throw UnsupportedSpace("unknown space kind");
}

/* Dual norm ||.||_{E*}: Euclidean and scalar are self-dual, S_p pairs with
 * S_q (1/p + 1/q = 1), operator norm pairs with the trace norm.  Used only
 * by the weak-gradient ascent. */
inline double dual_norm(const SpaceDescriptor& space, std::span<const double> v) {
  switch (space.kind) {
    case SpaceKind::Scalar:
    case SpaceKind::Euclidean:
      return norm(space, v);
    case SpaceKind::Schatten: {
      const double q = space.p / (space.p - 1.0);
      const auto sigma = singular_values(v, space.d);
      double s = 0.0;
      for (double x : sigma) s += std::pow(x, q);
      return std::pow(s, 1.0 / q);
    }
    case SpaceKind::OperatorNorm: {
      const auto sigma = singular_values(v, space.d);
      double s = 0.0;
      for (double x : sigma) s += x;
      return s;
    }
  }
  throw UnsupportedSpace("unknown space kind");
}

}  // namespace hamcube
