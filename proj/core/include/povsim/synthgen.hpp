#pragma once

#include "povsim/config.hpp"
#include "povsim/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace povsim {

/// One individual: latent status and D binary indicators (1 = deprived).
struct Record {
  std::uint64_t id = 0; // 1-based position in the generated population
  std::uint8_t z = 0;
  std::vector<std::uint8_t> x;

  friend bool operator==(const Record &, const Record &) = default;
};

struct Provenance {
  std::uint64_t base_seed = 0;
  std::uint64_t run_index = 0;

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct Dataset {
  std::vector<Record> records;
  Provenance provenance;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  /// Indicator count shared by all records (0 when empty).
  std::size_t n_indicators() const noexcept {
    return records.empty() ? 0 : records.front().x.size();
  }

  std::vector<std::uint8_t> truth() const;

  friend bool operator==(const Dataset &, const Dataset &) = default;
};

/// Uniform draws consumed per generated record: 1 + D + (D - 1).
constexpr std::uint64_t draws_per_record(std::size_t d) noexcept {
  return 2 * static_cast<std::uint64_t>(d);
}

/// z ~ Bernoulli(p_poor), then x_1..x_D independently given z.
Record sample_individual(RngStream &rng, const SimConfig &cfg);

/// For i = 1..D-1 in order: with probability match_prob set x[i+1] = x[i].
/// Always consumes exactly D - 1 uniforms.
void inject_correlation(std::span<std::uint8_t> x, RngStream &rng,
                        const SimConfig &cfg);

/// n_individuals records from derive_stream(base_seed, run_index).
Dataset generate_population(const SimConfig &cfg, std::uint64_t run_index);

/// Same, but continues on a caller-owned stream (left positioned after the
/// last record).
Dataset generate_population(const SimConfig &cfg, RngStream &rng,
                            Provenance provenance);

/// Fisher-Yates shuffle driven by `rng` (for i = n-1..1, j = below(i + 1)),
/// then the first floor(train_frac * n) records are the training set.
std::pair<Dataset, Dataset> split(const Dataset &data, RngStream &rng,
                                  const SimConfig &cfg);

} // namespace povsim
