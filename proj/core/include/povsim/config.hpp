#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace povsim {

/// Every generative, split, threshold and repetition parameter of one
/// experiment. Defaults reproduce the reference study.
struct SimConfig {
  std::size_t n_individuals = 50000;
  std::size_t n_indicators = 10;
  double p_poor = 0.3;
  double p_dep_poor = 0.7;
  double p_dep_nonpoor = 0.2;
  double match_prob = 0.1;
  double train_frac = 0.75;
  std::size_t af_threshold = 4;
  // Empty means unit weight on every indicator.
  std::vector<double> af_weights;
  double posterior_threshold = 0.5;
  std::size_t n_runs = 50;
  std::uint64_t base_seed = 0;
  double smoothing_epsilon = 0.0;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  /// af_weights if set, otherwise D ones.
  std::vector<double> effective_weights() const;

  /// floor(train_frac * n).
  std::size_t train_size(std::size_t n) const;
};

} // namespace povsim
