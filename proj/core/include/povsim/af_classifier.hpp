#pragma once

#include "povsim/config.hpp"

#include <cstdint>
#include <span>

namespace povsim {

struct AfDecision {
  double weighted_count = 0.0;
  bool is_poor = false;
};

/// sum_i weights[i] * x[i]. Throws ConfigError on a length mismatch.
double deprivation_count(std::span<const std::uint8_t> x,
                         std::span<const double> weights);

/// Alkire-Foster identification: poor iff the weighted count is at least k.
AfDecision decide_af(std::span<const std::uint8_t> x,
                     std::span<const double> weights, std::size_t k);

/// decide_af with cfg's weights and threshold.
bool classify_af(std::span<const std::uint8_t> x, const SimConfig &cfg);

} // namespace povsim
