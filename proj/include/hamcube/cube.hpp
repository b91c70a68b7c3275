#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hamcube/errors.hpp"
#include "hamcube/numeric.hpp"

namespace hamcube {

inline constexpr int kMaxCubeDim = 24;  // 2^n enumeration budget

/* A function f : {-1,1}^n -> R^dim, stored by vertex index.
 *
 * Vertex index b encodes the point x(b) with x(b)_i = +1 if bit (i-1) of b
 * is 0 and -1 if that bit is 1.  Values are stored flat, vertex-major:
 * value(b) = values[b*dim .. b*dim+dim).  Immutable after construction. */
class CubeFunction {
 public:
  CubeFunction(int n, int dim, std::vector<double> flat_values)
      : n_(n), dim_(dim), values_(std::move(flat_values)) {
    if (n < 1 || dim < 1) throw LengthMismatch("n and dim must be positive");
    if (n > kMaxCubeDim) throw NTooLarge("n exceeds enumeration cap of 24");
    if (values_.size() != (std::size_t{1} << n) * static_cast<std::size_t>(dim))
      throw LengthMismatch("value array has wrong length");
    for (double v : values_)
      if (!std::isfinite(v)) throw NonFinite("non-finite function value");
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  std::size_t vertex_count() const { return std::size_t{1} << n_; }
  std::span<const double> value(std::size_t b) const {
    return {values_.data() + b * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> flat() const { return values_; }

  // sign of coordinate i (1-based) at vertex b
  static double coord_sign(std::size_t b, int i) {
    return (b >> (i - 1)) & 1u ? -1.0 : 1.0;
  }
  static std::size_t flip(std::size_t b, int i) { return b ^ (std::size_t{1} << (i - 1)); }

 private:
  int n_;
  int dim_;
  std::vector<double> values_;
};

/* Walsh-Fourier coefficients of a CubeFunction: entry at mask m is
 * fhat(S(m)) with S(m) = { i : bit (i-1) of m set }.  Also evaluates the
 * multilinear extension F on all of R^n. */
class FourierCoefficients {
 public:
  FourierCoefficients(int n, int dim, std::vector<double> flat_coeffs)
      : n_(n), dim_(dim), coeffs_(std::move(flat_coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << n) * static_cast<std::size_t>(dim))
      throw LengthMismatch("coefficient array has wrong length");
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  std::span<const double> coeff(std::size_t mask) const {
    return {coeffs_.data() + mask * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> flat() const { return coeffs_; }

  /* F(point) = sum_S fhat(S) prod_{i in S} point_i, by folding one
   * coordinate at a time (O(2^n * dim) total). */
  std::vector<double> evaluate(std::span<const double> point) const {
    if (point.size() != static_cast<std::size_t>(n_))
      throw LengthMismatch("point has wrong length");
    for (double t : point)
      if (!std::isfinite(t)) throw NonFinite("non-finite evaluation point");
    std::vector<double> work(coeffs_);
    std::size_t size = std::size_t{1} << n_;
    for (int i = 0; i < n_; ++i) {
      const double t = point[i];
      const std::size_t bit = std::size_t{1} << i;
      // fold masks with bit i set into their bit-cleared partner
      for (std::size_t m = 0; m < size; ++m) {
        if (m & bit) continue;
        for (int j = 0; j < dim_; ++j)
          work[m * dim_ + j] += t * work[(m | bit) * dim_ + j];
      }
    }
    return {work.begin(), work.begin() + dim_};
  }

 private:
  int n_;
  int dim_;
  std::vector<double> coeffs_;
};

inline CubeFunction from_values(int n, int dim, const std::vector<std::vector<double>>& values) {
  if (n < 1 || n > kMaxCubeDim) {
    if (n > kMaxCubeDim) throw NTooLarge("n exceeds enumeration cap of 24");
    throw LengthMismatch("n must be at least 1");
  }
  if (values.size() != (std::size_t{1} << n)) throw LengthMismatch("expected 2^n value vectors");
  std::vector<double> flat;
  flat.reserve(values.size() * dim);
  for (const auto& v : values) {
    if (v.size() != static_cast<std::size_t>(dim))
      throw LengthMismatch("value vector has wrong dimension");
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return CubeFunction(n, dim, std::move(flat));
}

namespace detail {

/* In-place fast Walsh-Hadamard butterfly over one coordinate slice of
 * stride `dim`; unnormalized. */
inline void fwht(std::vector<double>& a, int n, int dim) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t b = 0; b < size; b += len << 1) {
      for (std::size_t k = b; k < b + len; ++k) {
        for (int j = 0; j < dim; ++j) {
          const double u = a[k * dim + j];
          const double v = a[(k + len) * dim + j];
          a[k * dim + j] = u + v;
          a[(k + len) * dim + j] = u - v;
        }
      }
    }
  }
}

}  // namespace detail

/* coeffs[m] = E[f(x) prod_{i in S(m)} x_i].  With the bit convention above
 * the character is (-1)^popcount(b & m), which is exactly the Hadamard
 * kernel, so a single FWHT plus one final 2^-n scaling does it. */
inline FourierCoefficients to_coefficients(const CubeFunction& f) {
  std::vector<double> a(f.flat().begin(), f.flat().end());
  detail::fwht(a, f.n(), f.dim());
  const double scale = 1.0 / static_cast<double>(f.vertex_count());
  for (double& v : a) v *= scale;
  return FourierCoefficients(f.n(), f.dim(), std::move(a));
}

// Exact inverse of to_coefficients (the unnormalized butterfly is an involution up to 2^n).
inline CubeFunction to_values(const FourierCoefficients& c) {
  std::vector<double> a(c.flat().begin(), c.flat().end());
  detail::fwht(a, c.n(), c.dim());
  return CubeFunction(c.n(), c.dim(), std::move(a));
}

inline std::vector<double> evaluate_extension(const FourierCoefficients& c,
                                              std::span<const double> point) {
  return c.evaluate(point);
}

// (D_i f)(x) = (f(x) - f(x with coordinate i flipped)) / 2
inline CubeFunction discrete_derivative(const CubeFunction& f, int i) {
  if (i < 1 || i > f.n()) throw IndexOutOfRange("coordinate index out of range");
  const std::size_t size = f.vertex_count();
  std::vector<double> out(size * f.dim());
  for (std::size_t b = 0; b < size; ++b) {
    const auto fx = f.value(b);
    const auto fy = f.value(CubeFunction::flip(b, i));
    for (int j = 0; j < f.dim(); ++j) out[b * f.dim() + j] = 0.5 * (fx[j] - fy[j]);
  }
  return CubeFunction(f.n(), f.dim(), std::move(out));
}

// E f, one pairwise-summed mean per value coordinate
inline std::vector<double> expectation(const CubeFunction& f) {
  const std::size_t size = f.vertex_count();
  std::vector<double> mean(f.dim());
  std::vector<double> column(size);
  for (int j = 0; j < f.dim(); ++j) {
    for (std::size_t b = 0; b < size; ++b) column[b] = f.value(b)[j];
    mean[j] = pairwise_sum(column) / static_cast<double>(size);
  }
  return mean;
}

// f - E f
inline CubeFunction center(const CubeFunction& f) {
  const auto mean = expectation(f);
  std::vector<double> out(f.flat().begin(), f.flat().end());
  for (std::size_t b = 0; b < f.vertex_count(); ++b)
    for (int j = 0; j < f.dim(); ++j) out[b * f.dim() + j] -= mean[j];
  return CubeFunction(f.n(), f.dim(), std::move(out));
}

inline CubeFunction scale(const CubeFunction& f, double c) {
  std::vector<double> out(f.flat().begin(), f.flat().end());
  for (double& v : out) v *= c;
  return CubeFunction(f.n(), f.dim(), std::move(out));
}

}  // namespace hamcube
