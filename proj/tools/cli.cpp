#include "cli.hpp"

#include "povsim/af_classifier.hpp"
#include "povsim/config.hpp"
#include "povsim/error.hpp"
#include "povsim/experiment.hpp"
#include "povsim/metrics.hpp"
#include "povsim/mrf.hpp"
#include "povsim/report_io.hpp"
#include "povsim/synthgen.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace povsim::cli {

namespace {

// Every SimConfig field as a flag.
void add_sim_flags(CLI::App &app, SimConfig &cfg, std::string &config_path) {
  app.add_option("--config", config_path,
                 "Flat key=value file using the flag names; command-line flags win");

  auto unit = CLI::Range(0.0, 1.0);
  app.add_option("--n", cfg.n_individuals, "Population size")->capture_default_str();
  app.add_option("--d", cfg.n_indicators, "Number of binary indicators")->capture_default_str();
  app.add_option("--p-poor", cfg.p_poor, "P(Z = 1)")->check(unit)->capture_default_str();
  app.add_option("--p-dep-poor", cfg.p_dep_poor, "P(X_i = 1 | Z = 1)")
      ->check(unit)
      ->capture_default_str();
  app.add_option("--p-dep-nonpoor", cfg.p_dep_nonpoor, "P(X_i = 1 | Z = 0)")
      ->check(unit)
      ->capture_default_str();
  app.add_option("--match-prob", cfg.match_prob, "Adjacent-indicator copy probability")
      ->check(unit)
      ->capture_default_str();
  app.add_option("--train-frac", cfg.train_frac, "Training fraction")->capture_default_str();
  app.add_option("--k", cfg.af_threshold, "AF deprivation threshold")->capture_default_str();
  app.add_option("--weights", cfg.af_weights, "AF indicator weights (comma separated)")
      ->delimiter(',');
  app.add_option("--theta", cfg.posterior_threshold, "MRF posterior threshold")
      ->check(unit)
      ->capture_default_str();
  app.add_option("--runs", cfg.n_runs, "Number of runs")->capture_default_str();
  app.add_option("--seed", cfg.base_seed, "Base seed of the run family")->capture_default_str();
  app.add_option("--epsilon", cfg.smoothing_epsilon, "Additive smoothing on every factor cell")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Applies `key=value` lines to options of `app` that were not given on the
// command line. Keys are flag names without the leading dashes; '_' is
// accepted for '-'. Blank lines and '#' comments are skipped.
void apply_config_file(CLI::App &app, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw CLI::ConversionError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") {
      throw CLI::ConversionError(path + ":" + std::to_string(line_no) + ": nested config");
    }

    CLI::Option *opt = nullptr;
    try {
      opt = app.get_option("--" + key);
    } catch (const CLI::OptionNotFound &) {
      throw CLI::ExtrasError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'",
                             CLI::ExitCodes::ExtrasError);
    }
    if (opt->count() > 0) continue;
    std::vector<std::string> parts;
    if (opt->get_items_expected_max() > 1) {
      std::stringstream ss(value);
      for (std::string item; std::getline(ss, item, ',');) parts.push_back(trim(item));
    } else {
      parts.push_back(value);
    }
    opt->add_result(parts);
    opt->run_callback();
  }
}

void print_rates(std::ostream &out, const char *name, const ConfusionMatrix &cm) {
  auto r = [](const Rate &v) { return v ? format_rate(*v) : std::string("NA"); };
  out << name << ": tn=" << cm.tn << " fp=" << cm.fp << " fn=" << cm.fn << " tp=" << cm.tp
      << " accuracy=" << r(accuracy(cm)) << " ppv=" << r(ppv(cm)) << " npv=" << r(npv(cm))
      << '\n';
}

int cmd_run(const SimConfig &cfg, const std::string &out_dir, std::size_t threads,
            std::size_t limit, std::ostream &out) {
  ExperimentOptions opts;
  opts.threads = threads;
  opts.disagreement_limit = limit;
  const AggregateReport report = run_experiment(cfg, opts);
  const ExperimentOutput files = write_experiment_outputs(report, cfg, out_dir);
  write_summary(report, cfg, out);
  out << "wrote " << files.results_csv.string() << ", " << files.disagreements_csv.string()
      << ", " << files.figure.string() << ", " << files.summary.string() << '\n';
  return 0;
}

int cmd_gen(const SimConfig &cfg, std::uint64_t run_index, const std::string &path,
            std::ostream &out) {
  const Dataset data = generate_population(cfg, run_index);
  write_population_csv(data, std::filesystem::path(path));
  out << "wrote " << data.size() << " records to " << path << '\n';
  return 0;
}

int cmd_classify(SimConfig cfg, const std::string &input, const std::string &train_path,
                 std::uint64_t run_index, const std::string &predictions_path,
                 const std::string &model_path, std::ostream &out) {
  const Dataset population = read_population_csv(std::filesystem::path(input));
  if (population.empty()) throw Error(input + ": no records");
  if (population.n_indicators() != cfg.n_indicators) {
    // The file defines D; weights, if given, must still match it.
    cfg.n_indicators = population.n_indicators();
    cfg.validate();
  }

  Dataset train;
  Dataset test;
  if (!train_path.empty()) {
    train = read_population_csv(std::filesystem::path(train_path));
    test = population;
  } else {
    // Reproduce the split `run` would make on this population: same stream,
    // advanced past the draws generation consumed.
    RngStream rng = derive_stream(cfg.base_seed, run_index);
    rng.discard(population.size() * draws_per_record(cfg.n_indicators));
    std::tie(train, test) = split(population, rng, cfg);
  }
  if (test.empty()) throw Error("no records to classify");

  const MrfModel model = fit(train, cfg);
  if (!model_path.empty()) {
    std::ofstream mo(model_path);
    if (!mo) throw IoError(model_path, "cannot open for writing");
    dump_model(model, mo);
    if (!mo) throw IoError(model_path, "write failed");
  }
  const Predictions pred = score(model, test, cfg);
  const auto truth = test.truth();

  out << "train=" << train.size() << " test=" << test.size() << '\n';
  print_rates(out, "mrf", confusion(pred.mrf, truth));
  print_rates(out, "af", confusion(pred.af, truth));
  out << "agreement=" << format_rate(agreement(pred.mrf, pred.af))
      << " undefined_posteriors=" << pred.undefined_posteriors << '\n';

  if (!predictions_path.empty()) {
    std::ofstream po(predictions_path, std::ios::binary);
    if (!po) throw IoError(predictions_path, "cannot open for writing");
    po << "id,Z,posterior,mrf_pred,af_pred\n";
    char buf[32];
    for (std::size_t i = 0; i < test.size(); ++i) {
      if (pred.posterior[i] == pred.posterior[i]) {
        std::snprintf(buf, sizeof buf, "%.9f", pred.posterior[i]);
      } else {
        buf[0] = '\0';
      }
      po << test.records[i].id << ',' << int{test.records[i].z} << ',' << buf << ','
         << int{pred.mrf[i]} << ',' << int{pred.af[i]} << '\n';
    }
    if (!po) throw IoError(predictions_path, "write failed");
  }
  return 0;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Alkire-Foster vs. pairwise MRF poverty classification simulator", "povsim"};
  app.require_subcommand(1);

  SimConfig cfg;
  std::string out_dir = "out";
  std::size_t threads = 0;
  std::size_t limit = 10;
  std::uint64_t run_index = 0;
  std::string gen_path;
  std::string input;
  std::string train_path;
  std::string predictions_path;
  std::string model_path;
  std::string config_path;

  CLI::App *run = app.add_subcommand("run", "Run the full multi-seed experiment");
  add_sim_flags(*run, cfg, config_path);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--threads", threads, "Worker threads (0 = hardware)")->capture_default_str();
  run->add_option("--disagreements", limit, "Disagreement rows to keep")->capture_default_str();

  CLI::App *gen = app.add_subcommand("gen", "Write one generated population as CSV");
  add_sim_flags(*gen, cfg, config_path);
  gen->add_option("--run-index", run_index, "Run index within the seed family")
      ->capture_default_str();
  gen->add_option("--out", gen_path, "Output CSV path")->required();

  CLI::App *classify = app.add_subcommand("classify", "Score a population CSV with both methods");
  add_sim_flags(*classify, cfg, config_path);
  classify->add_option("--input", input, "Population CSV (id,Z,X1,...)")->required();
  classify->add_option("--train", train_path,
                       "Fit on this CSV and score all of --input (default: split --input)");
  classify->add_option("--run-index", run_index, "Run index used to reproduce the split")
      ->capture_default_str();
  classify->add_option("--predictions", predictions_path, "Per-record predictions CSV");
  classify->add_option("--dump-model", model_path, "Write the fitted factor tables here");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      for (CLI::App *sub : app.get_subcommands()) apply_config_file(*sub, config_path);
    }
    cfg.validate();
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "povsim: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError &e) {
    err << "povsim: invalid configuration: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*run) return cmd_run(cfg, out_dir, threads, limit, out);
    if (*gen) return cmd_gen(cfg, run_index, gen_path, out);
    return cmd_classify(cfg, input, train_path, run_index, predictions_path, model_path, out);
  } catch (const std::exception &e) {
    err << "povsim: " << e.what() << '\n';
    return 1;
  }
}

} // namespace povsim::cli
