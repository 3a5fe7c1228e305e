#include "povsim/af_classifier.hpp"

#include "povsim/error.hpp"

#include <string>

namespace povsim {

double deprivation_count(std::span<const std::uint8_t> x, std::span<const double> weights) {
  if (x.size() != weights.size()) {
    throw ConfigError("indicator vector has " + std::to_string(x.size()) +
                      " entries but " + std::to_string(weights.size()) + " weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) sum += weights[i];
  }
  return sum;
}

AfDecision decide_af(std::span<const std::uint8_t> x, std::span<const double> weights,
                     std::size_t k) {
  const double count = deprivation_count(x, weights);
  return {count, count >= static_cast<double>(k)};
}

bool classify_af(std::span<const std::uint8_t> x, const SimConfig &cfg) {
  if (cfg.af_weights.empty()) {
    if (x.size() != cfg.n_indicators) {
      throw ConfigError("indicator vector has " + std::to_string(x.size()) +
                        " entries, expected " + std::to_string(cfg.n_indicators));
    }
    std::size_t flagged = 0;
    for (auto xi : x) flagged += xi ? 1 : 0;
    return flagged >= cfg.af_threshold;
  }
  return decide_af(x, cfg.af_weights, cfg.af_threshold).is_poor;
}

} // namespace povsim
