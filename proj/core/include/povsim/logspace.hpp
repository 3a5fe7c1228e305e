#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace povsim::logspace {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(0) is -inf, not an error.
inline double safe_log(double v) noexcept {
  return v > 0.0 ? std::log(v) : kNegInf;
}

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// exp(log_one) / (exp(log_zero) + exp(log_one)); requires not both -inf.
inline double normalize_pair(double log_zero, double log_one) noexcept {
  if (log_one == kNegInf) return 0.0;
  if (log_zero == kNegInf) return 1.0;
  return 1.0 / (1.0 + std::exp(log_zero - log_one));
}

} // namespace povsim::logspace
