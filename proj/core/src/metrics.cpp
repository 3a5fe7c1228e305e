#include "povsim/metrics.hpp"

#include "povsim/error.hpp"

#include <cmath>
#include <string>

namespace povsim {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char *what) {
  if (a != b) {
    throw EvaluationError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

Rate ratio(std::uint64_t num, std::uint64_t den) noexcept {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

ConfusionMatrix &ConfusionMatrix::operator+=(const ConfusionMatrix &o) noexcept {
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  tp += o.tp;
  return *this;
}

ConfusionMatrix confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> truth) {
  require_same_length(pred.size(), truth.size(), "confusion");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool t = truth[i] != 0;
    if (t) {
      ++(p ? cm.tp : cm.fn);
    } else {
      ++(p ? cm.fp : cm.tn);
    }
  }
  return cm;
}

Rate accuracy(const ConfusionMatrix &cm) noexcept { return ratio(cm.tn + cm.tp, cm.total()); }
Rate ppv(const ConfusionMatrix &cm) noexcept { return ratio(cm.tp, cm.tp + cm.fp); }
Rate npv(const ConfusionMatrix &cm) noexcept { return ratio(cm.tn, cm.tn + cm.fn); }

MeanCi mean_ci(std::span<const double> values) {
  if (values.size() < 2) {
    throw EvaluationError("a confidence interval needs at least 2 values, got " +
                          std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double half = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

double agreement(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  require_same_length(a.size(), b.size(), "agreement");
  if (a.empty()) throw EvaluationError("agreement of empty label vectors is undefined");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += (a[i] != 0) == (b[i] != 0) ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

std::vector<DisagreementRow> disagreements(const Dataset &test,
                                           std::span<const std::uint8_t> pred_mrf,
                                           std::span<const std::uint8_t> pred_af,
                                           std::size_t limit) {
  require_same_length(test.size(), pred_mrf.size(), "disagreements");
  require_same_length(test.size(), pred_af.size(), "disagreements");
  std::vector<DisagreementRow> rows;
  for (std::size_t i = 0; i < test.size() && rows.size() < limit; ++i) {
    if ((pred_mrf[i] != 0) == (pred_af[i] != 0)) continue;
    const Record &r = test.records[i];
    rows.push_back({r.id, r.z, r.x, pred_mrf[i], pred_af[i]});
  }
  return rows;
}

} // namespace povsim
