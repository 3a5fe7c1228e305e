#include "povsim/experiment.hpp"

#include "povsim/af_classifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace povsim {

Predictions score(const MrfModel &model, const Dataset &data, const SimConfig &cfg) {
  const std::vector<double> weights = cfg.effective_weights();
  Predictions out;
  out.posterior.reserve(data.size());
  out.mrf.reserve(data.size());
  out.af.reserve(data.size());
  for (const Record &r : data.records) {
    double post = std::numeric_limits<double>::quiet_NaN();
    try {
      post = posterior_z(model, Evidence::full(r.x));
    } catch (const UndefinedPosterior &) {
      if (cfg.smoothing_epsilon == 0.0) throw;
      ++out.undefined_posteriors;
    }
    out.posterior.push_back(post);
    out.mrf.push_back(post >= cfg.posterior_threshold ? 1 : 0); // NaN compares false
    out.af.push_back(decide_af(r.x, weights, cfg.af_threshold).is_poor ? 1 : 0);
  }
  return out;
}

AggregateReport AggregateReport::from_runs(std::vector<RunResult> runs) {
  AggregateReport rep;
  rep.runs = std::move(runs);
  if (rep.runs.empty()) return rep;

  std::vector<double> acc_mrf;
  std::vector<double> acc_af;
  std::uint64_t agree = 0;
  std::uint64_t total = 0;
  double agreement_sum = 0.0;
  for (const RunResult &r : rep.runs) {
    acc_mrf.push_back(accuracy(r.cm_mrf).value_or(0.0));
    acc_af.push_back(accuracy(r.cm_af).value_or(0.0));
    agree += r.n_agree;
    total += r.test_size();
    agreement_sum += r.agreement;
    rep.total_undefined_posteriors += r.undefined_posterior_count;
  }
  const double n = static_cast<double>(rep.runs.size());
  auto mean = [n](const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / n;
  };
  rep.mean_acc_mrf = mean(acc_mrf);
  rep.mean_acc_af = mean(acc_af);
  if (rep.runs.size() >= 2) {
    rep.ci_mrf = mean_ci(acc_mrf);
    rep.ci_af = mean_ci(acc_af);
  }
  rep.mean_agreement = agreement_sum / n;
  rep.pooled_agreement = total ? static_cast<double>(agree) / static_cast<double>(total) : 0.0;
  return rep;
}

ExperimentError::ExperimentError(std::uint64_t failed_run, const std::string &what,
                                 std::vector<RunResult> completed)
    : Error("run " + std::to_string(failed_run) + " failed: " + what + " (" +
            std::to_string(completed.size()) + " runs completed)"),
      failed_run_(failed_run), completed_(std::move(completed)) {}

RunResult evaluate_run(const SimConfig &cfg, std::uint64_t run_index,
                       std::size_t disagreement_limit) {
  // One stream per run: the population consumes 2D draws per record, the
  // split continues where generation stopped.
  RngStream rng = derive_stream(cfg.base_seed, run_index);
  const Dataset population = generate_population(cfg, rng, {cfg.base_seed, run_index});
  const auto [train, test] = split(population, rng, cfg);
  if (test.empty()) throw ConfigError("the split left no test records");

  const MrfModel model = fit(train, cfg);
  const Predictions pred = score(model, test, cfg);
  const std::vector<std::uint8_t> truth = test.truth();

  RunResult r;
  r.seed = run_index;
  r.cm_mrf = confusion(pred.mrf, truth);
  r.cm_af = confusion(pred.af, truth);
  r.agreement = agreement(pred.mrf, pred.af);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (pred.mrf[i] == pred.af[i]) {
      ++r.n_agree;
    } else if (pred.af[i]) {
      ++r.n_af_only;
    } else {
      ++r.n_mrf_only;
    }
  }
  r.undefined_posterior_count = pred.undefined_posteriors;
  r.sample_disagreements = disagreements(test, pred.mrf, pred.af, disagreement_limit);
  return r;
}

AggregateReport run_experiment(const SimConfig &cfg, const ExperimentOptions &opts) {
  cfg.validate();
  const std::size_t n_runs = cfg.n_runs;
  std::size_t n_threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<std::size_t>(n_threads, 1, n_runs);

  std::vector<std::optional<RunResult>> results(n_runs);
  std::vector<std::string> failures(n_runs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_runs || failed.load()) return;
      try {
        results[i] = evaluate_run(cfg, i, opts.disagreement_limit);
      } catch (const std::exception &e) {
        failures[i] = e.what();
        failed.store(true);
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::vector<RunResult> done;
  done.reserve(n_runs);
  for (auto &r : results) {
    if (r) done.push_back(std::move(*r));
  }
  if (failed.load()) {
    const auto first = std::find_if(failures.begin(), failures.end(),
                                     [](const std::string &s) { return !s.empty(); });
    throw ExperimentError(static_cast<std::uint64_t>(first - failures.begin()), *first,
                          std::move(done));
  }
  return AggregateReport::from_runs(std::move(done));
}

} // namespace povsim
