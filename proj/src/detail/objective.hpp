#pragma once

#include <cmath>

namespace mmr::detail {

// x log2(x / total), with 0 log 0 = 0.
inline double xlog(double x, double total) { return x > 0.0 ? x * std::log2(x / total) : 0.0; }

// Per-spin term E_j of the average post-measurement entropy.
inline double spin_term(double p0, double p1) {
  const double s = p0 + p1;
  const double t = 2.0 - s;
  return -0.5 * (xlog(p0, s) + xlog(p1, s)) - 0.5 * (xlog(1.0 - p0, t) + xlog(1.0 - p1, t));
}

// dE_j/dp0 at an interior point; dE_j/dp1 is the same with the arguments swapped.
inline double partial_p0(double p0, double p1) {
  const double s = p0 + p1;
  return -0.5 * (std::log2(p0 / s) - std::log2((1.0 - p0) / (2.0 - s)));
}

inline double partial_p1(double p0, double p1) { return partial_p0(p1, p0); }

}  // namespace mmr::detail
