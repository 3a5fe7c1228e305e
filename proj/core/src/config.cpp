#include "povsim/config.hpp"

#include "povsim/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace povsim {

namespace {

void require_probability(double v, const char *name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

} // namespace

void SimConfig::validate() const {
  require_probability(p_poor, "p_poor");
  require_probability(p_dep_poor, "p_dep_poor");
  require_probability(p_dep_nonpoor, "p_dep_nonpoor");
  require_probability(match_prob, "match_prob");
  require_probability(posterior_threshold, "posterior_threshold");
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw ConfigError("train_frac must lie in (0, 1), got " + std::to_string(train_frac));
  }
  if (n_indicators < 2) throw ConfigError("n_indicators must be at least 2");
  if (af_threshold < 1 || af_threshold > n_indicators) {
    throw ConfigError("af_threshold must lie in [1, n_indicators], got " +
                      std::to_string(af_threshold));
  }
  if (!af_weights.empty()) {
    if (af_weights.size() != n_indicators) {
      throw ConfigError("af_weights has " + std::to_string(af_weights.size()) +
                        " entries, expected " + std::to_string(n_indicators));
    }
    for (double w : af_weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ConfigError("af_weights must be finite and nonnegative");
      }
    }
    if (!(std::accumulate(af_weights.begin(), af_weights.end(), 0.0) > 0.0)) {
      throw ConfigError("af_weights must have a positive sum");
    }
  }
  if (n_individuals < 1) throw ConfigError("n_individuals must be at least 1");
  if (n_runs < 1) throw ConfigError("n_runs must be at least 1");
  if (!(smoothing_epsilon >= 0.0) || !std::isfinite(smoothing_epsilon)) {
    throw ConfigError("smoothing_epsilon must be finite and nonnegative");
  }
}

std::vector<double> SimConfig::effective_weights() const {
  if (af_weights.empty()) return std::vector<double>(n_indicators, 1.0);
  return af_weights;
}

std::size_t SimConfig::train_size(std::size_t n) const {
  return static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(n)));
}

} // namespace povsim
