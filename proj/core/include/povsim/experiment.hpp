#pragma once

#include "povsim/config.hpp"
#include "povsim/error.hpp"
#include "povsim/metrics.hpp"
#include "povsim/mrf.hpp"
#include "povsim/synthgen.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace povsim {

/// Per-record outputs of both classifiers on one dataset.
struct Predictions {
  std::vector<double> posterior; // NaN where the posterior is undefined
  std::vector<std::uint8_t> mrf;
  std::vector<std::uint8_t> af;
  std::size_t undefined_posteriors = 0;
};

/// Scores every record of `data` with both methods. An undefined posterior
/// is rethrown when cfg.smoothing_epsilon == 0; otherwise it is counted and
/// the record is labelled non-poor.
Predictions score(const MrfModel &model, const Dataset &data, const SimConfig &cfg);

struct RunResult {
  std::uint64_t seed = 0; // run index within the family
  ConfusionMatrix cm_mrf;
  ConfusionMatrix cm_af;
  double agreement = 0.0;
  std::uint64_t n_agree = 0;
  std::uint64_t n_af_only = 0;  // af = 1, mrf = 0
  std::uint64_t n_mrf_only = 0; // af = 0, mrf = 1
  std::size_t undefined_posterior_count = 0;
  std::vector<DisagreementRow> sample_disagreements;

  std::uint64_t test_size() const noexcept { return cm_mrf.total(); }
};

struct AggregateReport {
  std::vector<RunResult> runs; // ascending seed
  double mean_acc_mrf = 0.0;
  double mean_acc_af = 0.0;
  // Absent with a single run.
  std::optional<MeanCi> ci_mrf;
  std::optional<MeanCi> ci_af;
  double mean_agreement = 0.0;   // average of per-run agreement
  double pooled_agreement = 0.0; // agreeing records / all test records
  std::size_t total_undefined_posteriors = 0;

  /// Rebuilds every summary field from `runs`.
  static AggregateReport from_runs(std::vector<RunResult> runs);
};

struct ExperimentOptions {
  std::size_t threads = 0;            // 0 = hardware concurrency
  std::size_t disagreement_limit = 10; // rows kept per run
};

/// A run failed; carries the runs that did complete.
class ExperimentError : public Error {
public:
  ExperimentError(std::uint64_t failed_run, const std::string &what,
                  std::vector<RunResult> completed);

  std::uint64_t failed_run() const noexcept { return failed_run_; }
  const std::vector<RunResult> &completed() const noexcept { return completed_; }

private:
  std::uint64_t failed_run_;
  std::vector<RunResult> completed_;
};

/// Generate, split, fit and evaluate one run.
RunResult evaluate_run(const SimConfig &cfg, std::uint64_t run_index,
                       std::size_t disagreement_limit = 10);

/// Runs 0..n_runs-1 on a worker pool; results are ordered by run index.
AggregateReport run_experiment(const SimConfig &cfg, const ExperimentOptions &opts = {});

} // namespace povsim
