#include "povsim/report_io.hpp"

#include "povsim/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace povsim {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

void finish_write(std::ofstream &out, const fs::path &path) {
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::ifstream open_for_read(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return in;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string rate_or_blank(const Rate &r) { return r ? fixed(*r, 6) : std::string(); }

// Splits on commas, or on runs of whitespace when the line has no comma.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      out.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

template <class T> T parse_number(std::string_view s, std::size_t line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) + "'");
  }
  return v;
}

std::uint8_t parse_bit(std::string_view s, std::size_t line_no) {
  const auto v = parse_number<unsigned>(s, line_no);
  if (v > 1) {
    throw Error("line " + std::to_string(line_no) + ": expected 0 or 1, got '" +
                std::string(s) + "'");
  }
  return static_cast<std::uint8_t>(v);
}

} // namespace

std::string format_rate(double v) {
  std::string s = fixed(v, 5);
  const std::size_t dot = s.find('.');
  if (dot == std::string::npos) return s;
  std::size_t end = s.size();
  while (end > dot + 2 && s[end - 1] == '0') --end;
  s.resize(end);
  return s;
}

std::string results_row(const RunResult &run) {
  std::ostringstream os;
  auto cm = [&os](const ConfusionMatrix &m) {
    os << ',' << format_rate(accuracy(m).value_or(0.0)) << ',' << m.tn << ',' << m.fp << ','
       << m.fn << ',' << m.tp;
  };
  os << run.seed;
  cm(run.cm_mrf);
  cm(run.cm_af);
  return os.str();
}

void write_results_csv(const AggregateReport &report, std::ostream &out) {
  if (report.runs.empty()) throw EvaluationError("refusing to write an empty results table");
  out << kResultsHeader << '\n';
  for (const RunResult &r : report.runs) out << results_row(r) << '\n';
}

void write_results_csv(const AggregateReport &report, const fs::path &path) {
  if (report.runs.empty()) throw EvaluationError("refusing to write an empty results table");
  auto out = open_for_write(path);
  write_results_csv(report, out);
  finish_write(out, path);
}

std::vector<ResultsRow> read_results_csv(std::istream &in) {
  std::vector<ResultsRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto f = split_fields(line);
    if (f.front() == "seed") continue;
    if (f.size() != 11) {
      throw Error("line " + std::to_string(line_no) + ": expected 11 fields, got " +
                  std::to_string(f.size()));
    }
    ResultsRow r;
    r.seed = parse_number<std::uint64_t>(f[0], line_no);
    r.acc_mrf = parse_number<double>(f[1], line_no);
    r.cm_mrf = {parse_number<std::uint64_t>(f[2], line_no), parse_number<std::uint64_t>(f[3], line_no),
                parse_number<std::uint64_t>(f[4], line_no), parse_number<std::uint64_t>(f[5], line_no)};
    r.acc_af = parse_number<double>(f[6], line_no);
    r.cm_af = {parse_number<std::uint64_t>(f[7], line_no), parse_number<std::uint64_t>(f[8], line_no),
               parse_number<std::uint64_t>(f[9], line_no), parse_number<std::uint64_t>(f[10], line_no)};
    rows.push_back(r);
  }
  return rows;
}

std::vector<ResultsRow> read_results_csv(const fs::path &path) {
  auto in = open_for_read(path);
  try {
    return read_results_csv(in);
  } catch (const IoError &) {
    throw;
  } catch (const Error &e) {
    throw IoError(path.string(), e.what());
  }
}

std::string disagreements_header(std::size_t d) {
  std::string h = "ID,Z";
  for (std::size_t i = 1; i <= d; ++i) h += ",X" + std::to_string(i);
  return h + ",mrf_pred,af_pred";
}

void write_disagreements_csv(const std::vector<DisagreementRow> &rows, std::size_t d,
                             std::ostream &out) {
  out << disagreements_header(d) << '\n';
  std::size_t id = 1;
  for (const DisagreementRow &r : rows) {
    if (r.x.size() != d) throw EvaluationError("disagreement row has the wrong indicator count");
    out << id++ << ',' << int{r.z};
    for (auto xi : r.x) out << ',' << int{xi};
    out << ',' << int{r.mrf_pred} << ',' << int{r.af_pred} << '\n';
  }
}

void write_disagreements_csv(const std::vector<DisagreementRow> &rows, std::size_t d,
                             const fs::path &path) {
  auto out = open_for_write(path);
  write_disagreements_csv(rows, d, out);
  finish_write(out, path);
}

void write_population_csv(const Dataset &data, std::ostream &out) {
  const std::size_t d = data.n_indicators();
  out << "id,Z";
  for (std::size_t i = 1; i <= d; ++i) out << ",X" << i;
  out << '\n';
  for (const Record &r : data.records) {
    out << r.id << ',' << int{r.z};
    for (auto xi : r.x) out << ',' << int{xi};
    out << '\n';
  }
}

void write_population_csv(const Dataset &data, const fs::path &path) {
  auto out = open_for_write(path);
  write_population_csv(data, out);
  finish_write(out, path);
}

Dataset read_population_csv(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t d = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto f = split_fields(line);
    if (f.size() < 4 || f[0] != "id" || f[1] != "Z") {
      throw Error("line " + std::to_string(line_no) + ": expected header id,Z,X1,...,XD");
    }
    for (std::size_t i = 2; i < f.size(); ++i) {
      if (f[i] != "X" + std::to_string(i - 1)) {
        throw Error("line " + std::to_string(line_no) + ": unexpected column '" +
                    std::string(f[i]) + "'");
      }
    }
    d = f.size() - 2;
    break;
  }
  if (d == 0) throw Error("missing header");

  Dataset data;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != d + 2) {
      throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(d + 2) +
                  " fields, got " + std::to_string(f.size()));
    }
    Record r;
    r.id = parse_number<std::uint64_t>(f[0], line_no);
    r.z = parse_bit(f[1], line_no);
    r.x.reserve(d);
    for (std::size_t i = 0; i < d; ++i) r.x.push_back(parse_bit(f[i + 2], line_no));
    data.records.push_back(std::move(r));
  }
  return data;
}

Dataset read_population_csv(const fs::path &path) {
  auto in = open_for_read(path);
  try {
    return read_population_csv(in);
  } catch (const IoError &) {
    throw;
  } catch (const Error &e) {
    throw IoError(path.string(), e.what());
  }
}

void write_ppv_npv_csv(const AggregateReport &report, std::ostream &out) {
  out << "seed,method,ppv,npv\n";
  for (const RunResult &r : report.runs) {
    out << r.seed << ",mrf," << rate_or_blank(ppv(r.cm_mrf)) << ','
        << rate_or_blank(npv(r.cm_mrf)) << '\n';
    out << r.seed << ",af," << rate_or_blank(ppv(r.cm_af)) << ','
        << rate_or_blank(npv(r.cm_af)) << '\n';
  }
}

void write_ppv_npv_svg(const AggregateReport &report, std::ostream &out) {
  constexpr double kWidth = 760;
  constexpr double kHeight = 420;
  constexpr double kPanelWidth = 330;
  constexpr double kTop = 50;
  constexpr double kBottom = 360;
  constexpr double kLeft[2] = {70, 420};

  // Shared y range: from the lowest defined value, rounded down to 0.05, to 1.
  double lo = 1.0;
  for (const RunResult &r : report.runs) {
    for (const Rate &v : {ppv(r.cm_mrf), npv(r.cm_mrf), ppv(r.cm_af), npv(r.cm_af)}) {
      if (v) lo = std::min(lo, *v);
    }
  }
  lo = std::clamp(std::floor(lo * 20.0) / 20.0, 0.0, 0.95);
  const double hi = 1.0;
  auto y_of = [&](double v) { return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const char *titles[2] = {"MRF", "AF"};
  const char *colors[2] = {"#1f77b4", "#d62728"}; // PPV, NPV
  for (int panel = 0; panel < 2; ++panel) {
    const double x0 = kLeft[panel];
    out << "<g class=\"panel\" id=\"" << (panel == 0 ? "mrf" : "af") << "\">\n";
    out << "<text x=\"" << fixed(x0 + kPanelWidth / 2, 1) << "\" y=\"30\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << titles[panel] << "</text>\n";
    out << "<rect x=\"" << x0 << "\" y=\"" << kTop << "\" width=\"" << kPanelWidth
        << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t = lo; t <= hi + 1e-9; t += 0.05) {
      const std::string y = fixed(y_of(t), 2);
      out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
          << "\" stroke=\"#444\"/>";
      out << "<text x=\"" << x0 - 8 << "\" y=\"" << y << "\" dy=\"4\" text-anchor=\"end\">"
          << fixed(t, 2) << "</text>\n";
    }

    for (int series = 0; series < 2; ++series) {
      const double cx = x0 + kPanelWidth * (series == 0 ? 0.3 : 0.7);
      out << "<text x=\"" << fixed(cx, 1) << "\" y=\"" << kBottom + 20
          << "\" text-anchor=\"middle\">" << (series == 0 ? "PPV" : "NPV") << "</text>\n";
      double sum = 0.0;
      std::size_t count = 0;
      for (const RunResult &r : report.runs) {
        const ConfusionMatrix &cm = panel == 0 ? r.cm_mrf : r.cm_af;
        const Rate v = series == 0 ? ppv(cm) : npv(cm);
        if (!v) continue;
        // Deterministic golden-ratio jitter keyed on the seed.
        const double frac = std::fmod(static_cast<double>(r.seed) * 0.6180339887498949, 1.0);
        const double jx = cx + (frac - 0.5) * 60.0;
        out << "<circle cx=\"" << fixed(jx, 2) << "\" cy=\"" << fixed(y_of(*v), 2)
            << "\" r=\"3\" fill=\"" << colors[series] << "\" fill-opacity=\"0.6\">"
            << "<title>seed " << r.seed << ": " << fixed(*v, 5) << "</title></circle>\n";
        sum += *v;
        ++count;
      }
      if (count) {
        const std::string y = fixed(y_of(sum / static_cast<double>(count)), 2);
        out << "<line x1=\"" << fixed(cx - 40, 1) << "\" y1=\"" << y << "\" x2=\""
            << fixed(cx + 40, 1) << "\" y2=\"" << y << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "<text x=\"20\" y=\"" << fixed((kTop + kBottom) / 2, 1)
      << "\" transform=\"rotate(-90 20 " << fixed((kTop + kBottom) / 2, 1)
      << ")\" text-anchor=\"middle\">predictive value</text>\n";
  out << "</svg>\n";
}

void emit_ppv_npv_figure(const AggregateReport &report, const fs::path &path) {
  if (report.runs.empty()) throw EvaluationError("refusing to plot an empty report");
  {
    auto out = open_for_write(path);
    write_ppv_npv_svg(report, out);
    finish_write(out, path);
  }
  fs::path sidecar = path;
  sidecar.replace_extension(".csv");
  auto out = open_for_write(sidecar);
  write_ppv_npv_csv(report, out);
  finish_write(out, sidecar);
}

void write_summary(const AggregateReport &report, const SimConfig &cfg, std::ostream &out) {
  auto pct = [](double v) { return fixed(100.0 * v, 2) + "%"; };
  auto ci = [&](const std::optional<MeanCi> &c) {
    return c ? " (95% CI " + pct(c->low) + " - " + pct(c->high) + ")" : std::string();
  };
  std::uint64_t af_only = 0;
  std::uint64_t mrf_only = 0;
  for (const RunResult &r : report.runs) {
    af_only += r.n_af_only;
    mrf_only += r.n_mrf_only;
  }
  out << "runs: " << report.runs.size() << " (base seed " << cfg.base_seed << ")\n";
  out << "population: " << cfg.n_individuals << " individuals, " << cfg.n_indicators
      << " indicators, train fraction " << cfg.train_frac << '\n';
  out << "AF mean accuracy:  " << pct(report.mean_acc_af) << ci(report.ci_af) << '\n';
  out << "MRF mean accuracy: " << pct(report.mean_acc_mrf) << ci(report.ci_mrf) << '\n';
  out << "agreement (pooled): " << pct(report.pooled_agreement) << '\n';
  out << "agreement (mean of runs): " << pct(report.mean_agreement) << '\n';
  out << "disagreements with af=1, mrf=0: " << af_only << '\n';
  out << "disagreements with af=0, mrf=1: " << mrf_only << '\n';
  out << "undefined posteriors: " << report.total_undefined_posteriors << '\n';
}

ExperimentOutput write_experiment_outputs(const AggregateReport &report, const SimConfig &cfg,
                                          const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), ec.message());

  ExperimentOutput o{dir / "results.csv", dir / "disagreements.csv", dir / "ppv_npv.svg",
                     dir / "ppv_npv.csv", dir / "summary.txt"};
  write_results_csv(report, o.results_csv);
  const std::vector<DisagreementRow> none;
  write_disagreements_csv(report.runs.empty() ? none : report.runs.front().sample_disagreements,
                          cfg.n_indicators, o.disagreements_csv);
  emit_ppv_npv_figure(report, o.figure);
  auto out = open_for_write(o.summary);
  write_summary(report, cfg, out);
  finish_write(out, o.summary);
  return o;
}

} // namespace povsim
