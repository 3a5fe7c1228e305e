#pragma once

// File formats written by the experiment driver:
//
//   results.csv        seed,acc_mrf,tn_mrf,fp_mrf,fn_mrf,tp_mrf,acc_af,tn_af,fp_af,fn_af,tp_af
//   disagreements.csv  ID,Z,X1,...,XD,mrf_pred,af_pred
//   population.csv     id,Z,X1,...,XD
//   ppv_npv.csv        seed,method,ppv,npv   (sidecar of the SVG figure)
//   summary.txt        human-readable means, intervals and agreement

#include "povsim/experiment.hpp"
#include "povsim/metrics.hpp"
#include "povsim/synthgen.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace povsim {

inline constexpr const char *kResultsHeader =
    "seed,acc_mrf,tn_mrf,fp_mrf,fn_mrf,tp_mrf,acc_af,tn_af,fp_af,fn_af,tp_af";

/// Rounded to 5 decimals with trailing zeros dropped: 0.7584, 0.75648, 1.0.
std::string format_rate(double v);

/// One results row, e.g. "0,0.75648,8815,0,3044,641,0.89632,7595,1220,76,3609".
std::string results_row(const RunResult &run);

void write_results_csv(const AggregateReport &report, std::ostream &out);
void write_results_csv(const AggregateReport &report, const std::filesystem::path &path);

/// Parsed results row. Accuracies are the printed (rounded) values.
struct ResultsRow {
  std::uint64_t seed = 0;
  double acc_mrf = 0.0;
  ConfusionMatrix cm_mrf;
  double acc_af = 0.0;
  ConfusionMatrix cm_af;
};

/// Accepts comma- or whitespace-separated rows under the results header.
std::vector<ResultsRow> read_results_csv(std::istream &in);
std::vector<ResultsRow> read_results_csv(const std::filesystem::path &path);

std::string disagreements_header(std::size_t d);
void write_disagreements_csv(const std::vector<DisagreementRow> &rows,
                             std::size_t d, std::ostream &out);
void write_disagreements_csv(const std::vector<DisagreementRow> &rows,
                             std::size_t d, const std::filesystem::path &path);

void write_population_csv(const Dataset &data, std::ostream &out);
void write_population_csv(const Dataset &data, const std::filesystem::path &path);
Dataset read_population_csv(std::istream &in);
Dataset read_population_csv(const std::filesystem::path &path);

/// Per-run PPV/NPV for both methods, rows ordered by seed then mrf, af.
void write_ppv_npv_csv(const AggregateReport &report, std::ostream &out);

/// Two-panel strip chart (MRF left, AF right) of per-run PPV and NPV. The
/// output carries no timestamps, so it is a pure function of the report.
void write_ppv_npv_svg(const AggregateReport &report, std::ostream &out);

/// Writes `path` and the sidecar CSV next to it (same stem, .csv).
void emit_ppv_npv_figure(const AggregateReport &report,
                         const std::filesystem::path &path);

void write_summary(const AggregateReport &report, const SimConfig &cfg,
                   std::ostream &out);

/// Paths of everything emitted by write_experiment_outputs.
struct ExperimentOutput {
  std::filesystem::path results_csv;
  std::filesystem::path disagreements_csv;
  std::filesystem::path figure;
  std::filesystem::path figure_data;
  std::filesystem::path summary;
};

/// results.csv, disagreements.csv (sampled from the first run),
/// ppv_npv.svg + ppv_npv.csv and summary.txt under `dir`, created if needed.
ExperimentOutput write_experiment_outputs(const AggregateReport &report,
                                          const SimConfig &cfg,
                                          const std::filesystem::path &dir);

} // namespace povsim
