#include "cli.hpp"

#include "povsim/report_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace povsim::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "povsim");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("povsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST(Cli, SmokeRunWritesAllOutputs) {
  const fs::path dir = scratch("smoke");
  const auto r = invoke({"run", "--runs", "1", "--n", "100", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char *f : {"results.csv", "disagreements.csv", "ppv_npv.svg", "ppv_npv.csv",
                        "summary.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto rows = read_results_csv(dir / "results.csv");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].cm_af.total(), 25u);
}

TEST(Cli, IdenticalFlagsGiveIdenticalFiles) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const std::vector<std::string> flags{"--runs", "3", "--n", "2000", "--threads", "2"};
  auto args_a = flags;
  args_a.insert(args_a.begin(), "run");
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = flags;
  args_b.insert(args_b.begin(), "run");
  args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "1"});
  ASSERT_EQ(invoke(args_a).code, 0);
  ASSERT_EQ(invoke(args_b).code, 2); // --threads given twice
  args_b.pop_back();
  args_b.pop_back();
  ASSERT_EQ(invoke(args_b).code, 0);
  for (const char *f : {"results.csv", "disagreements.csv", "ppv_npv.csv", "ppv_npv.svg",
                        "summary.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Cli, ConfigFileSetsValuesAndFlagsOverride) {
  const fs::path dir = scratch("config");
  write_file(dir / "sim.cfg", "# smoke config\nn = 400\nruns=2\np_poor=0.5\nseed=9\n");
  auto r = invoke({"run", "--config", (dir / "sim.cfg").string(), "--runs", "3", "--out",
                   (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_results_csv(dir / "out" / "results.csv").size(), 3u);
  EXPECT_NE(r.out.find("population: 400 individuals"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("base seed 9"), std::string::npos) << r.out;
}

TEST(Cli, ConfigWeightsList) {
  const fs::path dir = scratch("weights");
  write_file(dir / "w.cfg", "d=3\nk=2\nweights=1, 1, 2\nn=300\nruns=1\n");
  const auto r = invoke({"run", "--config", (dir / "w.cfg").string(), "--out",
                         (dir / "out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto bad = invoke({"run", "--d", "3", "--k", "2", "--weights", "1,1", "--out",
                           (dir / "out").string()});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  const fs::path dir = scratch("usage");
  EXPECT_EQ(invoke({"run", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"run", "--p-poor", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"run", "--n", "lots"}).code, 2);
  EXPECT_EQ(invoke({"run", "--k", "0"}).code, 2);
  EXPECT_EQ(invoke({"run", "--train-frac", "1"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"run", "--config", (dir / "missing.cfg").string()}).code, 2);
  write_file(dir / "unknown.cfg", "colour=blue\n");
  const auto unknown = invoke({"run", "--config", (dir / "unknown.cfg").string()});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("colour"), std::string::npos);
  write_file(dir / "noeq.cfg", "runs 3\n");
  EXPECT_EQ(invoke({"run", "--config", (dir / "noeq.cfg").string()}).code, 2);
  write_file(dir / "range.cfg", "match-prob=7\n");
  EXPECT_EQ(invoke({"run", "--config", (dir / "range.cfg").string()}).code, 2);
  EXPECT_EQ(invoke({"gen"}).code, 2); // --out is required
  // Diagnostics are a single line.
  const auto r = invoke({"run", "--bogus"});
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
  EXPECT_EQ(invoke({"run", "--help"}).code, 0);
}

TEST(Cli, RuntimeFailureExitsOne) {
  const fs::path dir = scratch("runtime");
  write_file(dir / "blocker", "not a directory");
  const auto r = invoke({"run", "--runs", "1", "--n", "100", "--out", (dir / "blocker").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("blocker"), std::string::npos);
  EXPECT_EQ(invoke({"classify", "--input", (dir / "absent.csv").string()}).code, 1);
}

TEST(Cli, GenThenClassifyReproducesRunRow) {
  const fs::path dir = scratch("gen_classify");
  const std::vector<std::string> sim{"--n", "6000", "--seed", "5"};
  auto run_args = sim;
  run_args.insert(run_args.begin(), "run");
  run_args.insert(run_args.end(), {"--runs", "3", "--out", (dir / "run").string()});
  ASSERT_EQ(invoke(run_args).code, 0);
  const auto rows = read_results_csv(dir / "run" / "results.csv");

  auto gen_args = sim;
  gen_args.insert(gen_args.begin(), "gen");
  gen_args.insert(gen_args.end(), {"--run-index", "2", "--out", (dir / "pop.csv").string()});
  ASSERT_EQ(invoke(gen_args).code, 0);
  EXPECT_EQ(slurp(dir / "pop.csv").substr(0, 36), "id,Z,X1,X2,X3,X4,X5,X6,X7,X8,X9,X10\n");

  auto cls_args = sim;
  cls_args.insert(cls_args.begin(), "classify");
  cls_args.insert(cls_args.end(),
                  {"--input", (dir / "pop.csv").string(), "--run-index", "2", "--predictions",
                   (dir / "pred.csv").string(), "--dump-model", (dir / "model.txt").string()});
  const auto r = invoke(cls_args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto &row = rows[2];
  std::ostringstream mrf;
  mrf << "mrf: tn=" << row.cm_mrf.tn << " fp=" << row.cm_mrf.fp << " fn=" << row.cm_mrf.fn
      << " tp=" << row.cm_mrf.tp;
  std::ostringstream af;
  af << "af: tn=" << row.cm_af.tn << " fp=" << row.cm_af.fp << " fn=" << row.cm_af.fn
     << " tp=" << row.cm_af.tp;
  EXPECT_NE(r.out.find(mrf.str()), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(af.str()), std::string::npos) << r.out;

  const std::string pred = slurp(dir / "pred.csv");
  EXPECT_EQ(pred.substr(0, pred.find('\n')), "id,Z,posterior,mrf_pred,af_pred");
  EXPECT_EQ(std::count(pred.begin(), pred.end(), '\n'), 1 + 1500);
  EXPECT_EQ(slurp(dir / "model.txt").substr(0, 35), "mrf d=10 trained_on=4500 epsilon=0.");
}

TEST(Cli, ClassifyWithSeparateTrainingFile) {
  const fs::path dir = scratch("classify_train");
  ASSERT_EQ(invoke({"gen", "--n", "3000", "--out", (dir / "train.csv").string()}).code, 0);
  ASSERT_EQ(invoke({"gen", "--n", "500", "--run-index", "1", "--out",
                    (dir / "score.csv").string()})
                .code,
            0);
  const auto r = invoke({"classify", "--input", (dir / "score.csv").string(), "--train",
                         (dir / "train.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("train=3000 test=500"), std::string::npos) << r.out;
}

} // namespace
} // namespace povsim::cli
