#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"
#include "tsaug/analysis.hpp"
#include "tsaug/bench.hpp"
#include "tsaug/dataset.hpp"

namespace tsaug {
namespace {

namespace fs = std::filesystem;
using testing::run_cli;
using testing::scratch_dir;
using testing::slurp;

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

fs::path write_synthetic(const fs::path& dir, const std::string& name, std::size_t count, Index length,
                         int classes, std::uint64_t seed) {
  auto ds = make_synthetic_dataset(count, length, classes, seed);
  const fs::path path = dir / (name + "_TRAIN.tsv");
  write_tsv(ds, path);
  return path;
}

TEST(CliAugment, WritesMultipliedFileDeterministically) {
  const fs::path dir = scratch_dir("cli_augment");
  const fs::path input = write_synthetic(dir, "Toy", 12, 30, 2, 1);
  const auto r = run_cli({"augment", "--method", "jittering", "--multiplier", "4", "--seed", "7", input.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const fs::path produced = dir / "Toy_jittering_x4_TRAIN.tsv";
  ASSERT_TRUE(fs::exists(produced));
  const std::string first = slurp(produced);
  EXPECT_EQ(count_lines(first), 48u);
  ASSERT_EQ(run_cli({"augment", "-m", "jittering", "-n", "4", "--seed", "7", input.string()}).code, 0);
  EXPECT_EQ(slurp(produced), first);
  ASSERT_EQ(run_cli({"augment", "-m", "jittering", "-n", "4", "--seed", "8", input.string()}).code, 0);
  EXPECT_NE(slurp(produced), first);
}

TEST(CliAugment, DefaultMultiplierIsFour) {
  const fs::path dir = scratch_dir("cli_default_mult");
  const fs::path input = write_synthetic(dir, "Toy", 5, 16, 2, 9);
  ASSERT_EQ(run_cli({"augment", "-m", "slicing", input.string()}).code, 0);
  EXPECT_EQ(count_lines(slurp(dir / "Toy_slicing_x4_TRAIN.tsv")), 20u);
}

TEST(CliAugment, OutputDirectoryOverrides) {
  const fs::path dir = scratch_dir("cli_outdir");
  const fs::path input = write_synthetic(dir, "Toy", 6, 20, 2, 2);
  ASSERT_EQ(run_cli({"augment", "-m", "scaling", "-n", "2", "-o", (dir / "out").string(), input.string()}).code, 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "Toy_scaling_x2_TRAIN.tsv"));

  ::setenv(cli::kOutputDirEnv, (dir / "env").string().c_str(), 1);
  const int code = run_cli({"augment", "-m", "scaling", "-n", "2", input.string()}).code;
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(code, 0);
  EXPECT_TRUE(fs::exists(dir / "env" / "Toy_scaling_x2_TRAIN.tsv"));
}

TEST(CliAugment, UnknownMethodOrParamExitsThree) {
  const fs::path dir = scratch_dir("cli_bad");
  const fs::path input = write_synthetic(dir, "Toy", 4, 10, 2, 3);
  const auto r = run_cli({"augment", "--method", "nosuch", input.string()});
  EXPECT_EQ(r.code, 3);
  for (Method m : kAugmentationMethods) EXPECT_NE(r.err.find(std::string(method_name(m))), std::string::npos);
  EXPECT_EQ(run_cli({"augment", "-m", "jittering", "-p", "bogus=1", input.string()}).code, 3);
  // Validation happens before the input is read.
  EXPECT_EQ(run_cli({"augment", "-m", "nosuch", (dir / "absent_TRAIN.tsv").string()}).code, 3);
}

TEST(CliAugment, ParseErrorsExitTwo) {
  const fs::path dir = scratch_dir("cli_parse");
  {
    std::ofstream(dir / "Bad_TRAIN.tsv") << "1\t0.5\n2\tx\n";
  }
  const auto r = run_cli({"augment", "-m", "jittering", (dir / "Bad_TRAIN.tsv").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2:2"), std::string::npos);
  EXPECT_EQ(run_cli({"augment", "-m", "jittering", (dir / "absent_TRAIN.tsv").string()}).code, 2);
  EXPECT_EQ(run_cli({"augment"}).code, 2);
}

TEST(CliPlot, OverlayHasTwoPolylinesPerMethod) {
  const fs::path dir = scratch_dir("cli_plot");
  const fs::path input = write_synthetic(dir, "Toy", 8, 40, 2, 4);
  const auto r = run_cli({"plot", input.string(), "-m", "jittering", "-m", "none", "-m", "dgw"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_of(slurp(dir / "Toy_overlay.svg"), "<polyline"), 6u);
  const std::string csv = slurp(dir / "Toy_overlay.csv");
  EXPECT_EQ(count_lines(csv), 1u + 3u * 2u * 40u);

  // Method "none": the generated trace repeats the original values.
  std::vector<std::string> original, generated;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.starts_with("none,")) continue;
    const auto value = line.substr(line.rfind(',') + 1);
    (line.find(",original,") != std::string::npos ? original : generated).push_back(value);
  }
  EXPECT_EQ(original.size(), 40u);
  EXPECT_EQ(original, generated);
}

TEST(CliPlot, PcaCsvRowCount) {
  const fs::path dir = scratch_dir("cli_pca");
  const fs::path input = write_synthetic(dir, "Toy", 10, 30, 2, 5);
  ASSERT_EQ(run_cli({"plot", input.string(), "-m", "scaling", "--pca", "-n", "2"}).code, 0);
  EXPECT_TRUE(fs::exists(dir / "Toy_scaling_pca.svg"));
  EXPECT_EQ(count_lines(slurp(dir / "Toy_scaling_pca.csv")), 1u + 10u + 20u);
}

TEST(CliBench, OneRowPerMethod) {
  const fs::path dir = scratch_dir("cli_bench");
  const auto r = run_cli({"bench", "--synthetic", "20x30", "-m", "jittering,scaling,wdba", "--output",
                          (dir / "t.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(dir / "t.csv");
  EXPECT_EQ(count_lines(csv), 4u);
  EXPECT_TRUE(csv.starts_with("method,"));
}

TEST(CliAnalyze, SingleClassVariancesAgree) {
  const fs::path dir = scratch_dir("cli_analyze");
  write_synthetic(dir, "One", 10, 25, 1, 6);
  const auto r = run_cli({"analyze", dir.string(), "--output", (dir / "p.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(dir / "p.csv");
  const std::string row = csv.substr(csv.find('\n') + 1);
  const auto last = row.rfind(',', row.size() - 2);
  const auto prev = row.rfind(',', last - 1);
  EXPECT_EQ(row.substr(prev + 1, last - prev - 1), row.substr(last + 1, row.size() - last - 2));
}

TEST(CliAnalyze, EmptyDirectoryExitsTwo) {
  const fs::path dir = scratch_dir("cli_empty");
  EXPECT_EQ(run_cli({"analyze", dir.string()}).code, 2);
}

TEST(CliCorrelate, SelfCorrelationAndMissingRows) {
  const fs::path dir = scratch_dir("cli_corr");
  const fs::path data = dir / "data";
  fs::create_directories(data);
  const std::size_t sizes[] = {6, 9, 14, 20};
  std::string delta = "dataset,method,delta_acc\n";
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string name = "D" + std::to_string(k);
    write_synthetic(data, name, sizes[k], 20, 2, k);
    delta += name + ",jittering," + std::to_string(sizes[k]) + "\n";
  }
  {
    std::ofstream(dir / "delta.csv") << delta;
  }
  const auto r = run_cli({"correlate", data.string(), "--delta-acc", (dir / "delta.csv").string(), "--output",
                          (dir / "c.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(dir / "c.csv");
  EXPECT_NE(csv.find("\njittering,1,"), std::string::npos) << csv;

  {
    std::ofstream(dir / "partial.csv") << "dataset,method,delta_acc\nD0,jittering,1\n";
  }
  const auto miss = run_cli({"correlate", data.string(), "--delta-acc", (dir / "partial.csv").string(), "--output",
                             (dir / "c2.csv").string()});
  EXPECT_EQ(miss.code, 4);
  EXPECT_NE(miss.err.find("D3,jittering"), std::string::npos);
}

}  // namespace
}  // namespace tsaug
