#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>

namespace hamcube {

/* Pairwise (tree) summation.  Fixed reduction order, so results are
 * reproducible run-to-run regardless of how callers partition work, and
 * rounding error grows like log(n) instead of n. */
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// x*log(x) with the 0*log(0) = 0 convention
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Fixed 17-significant-digit formatting used by every report writer.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace hamcube
