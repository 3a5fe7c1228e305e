#pragma once

#include "povsim/synthgen.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace povsim {

struct ConfusionMatrix {
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tp = 0;

  std::uint64_t total() const noexcept { return tn + fp + fn + tp; }
  ConfusionMatrix &operator+=(const ConfusionMatrix &o) noexcept;

  friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;
};

/// A rate whose denominator may be zero. nullopt is rendered blank.
using Rate = std::optional<double>;

/// Tally with `truth` as ground truth. Throws EvaluationError on a length
/// mismatch.
ConfusionMatrix confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> truth);

Rate accuracy(const ConfusionMatrix &cm) noexcept;
Rate ppv(const ConfusionMatrix &cm) noexcept;
Rate npv(const ConfusionMatrix &cm) noexcept;

struct MeanCi {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// mean ± 1.96 * s / sqrt(n) with s the sample standard deviation.
/// Throws EvaluationError for fewer than two values.
MeanCi mean_ci(std::span<const double> values);

/// Fraction of positions where the two label vectors agree.
double agreement(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

struct DisagreementRow {
  std::uint64_t id = 0; // record id in the source population
  std::uint8_t z = 0;
  std::vector<std::uint8_t> x;
  std::uint8_t mrf_pred = 0;
  std::uint8_t af_pred = 0;

  friend bool operator==(const DisagreementRow &, const DisagreementRow &) = default;
};

/// First `limit` test records, in order, on which the two methods differ.
std::vector<DisagreementRow> disagreements(const Dataset &test,
                                           std::span<const std::uint8_t> pred_mrf,
                                           std::span<const std::uint8_t> pred_af,
                                           std::size_t limit);

} // namespace povsim
