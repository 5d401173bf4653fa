// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tsaug/analysis.hpp"
#include "tsaug/augment.hpp"
#include "tsaug/bench.hpp"
#include "tsaug/dataset.hpp"
#include "tsaug/dtw.hpp"
#include "tsaug/mixing.hpp"
#include "tsaug/transforms.hpp"

namespace fs = std::filesystem;
using namespace tsaug;
using testing::random_series;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs_diff(const TimeSeries& a, const TimeSeries& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return (a - b).cwiseAbs().maxCoeff();
}

Outcome identity_limits() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<Index> len(8, 512);

  TransformParams p;
  p.jitter_sigma = 0.0;
  p.rotation_sigma = 0.0;
  p.scale_sigma = 0.0;
  p.magwarp_sigma = 0.0;
  p.permute_min_segments = p.permute_max_segments = 1;
  p.slice_ratio = 1.0;
  p.timewarp_sigma = 0.0;
  p.windowwarp_ratio = 0.25;
  p.windowwarp_scales = {1.0};

  using Fn = std::function<TimeSeries(const TimeSeries&, Rng&)>;
  const std::vector<std::pair<std::string, Fn>> transforms{
      {"jittering", [&](const TimeSeries& x, Rng& r) { return jitter(x, p, r); }},
      {"rotation", [&](const TimeSeries& x, Rng& r) { return rotate(x, p, r); }},
      {"scaling", [&](const TimeSeries& x, Rng& r) { return scale(x, p, r); }},
      {"magnitude_warping", [&](const TimeSeries& x, Rng& r) { return magnitude_warp(x, p, r); }},
      {"permutation", [&](const TimeSeries& x, Rng& r) { return permute(x, p, r); }},
      {"slicing", [&](const TimeSeries& x, Rng& r) { return window_slice(x, p, r); }},
      {"time_warping", [&](const TimeSeries& x, Rng& r) { return time_warp(x, p, r); }},
      {"window_warping", [&](const TimeSeries& x, Rng& r) { return window_warp(x, p, r); }},
  };

  double worst = 0.0;
  int checks = 0;
  for (int s = 0; s < 100; ++s) {
    const Index dims = s % 2 ? 3 : 1;
    const TimeSeries x = random_series(gen, len(gen), dims);
    for (std::size_t k = 0; k < transforms.size(); ++k) {
      if (transforms[k].first == "rotation" && dims < 2) continue;
      Rng rng({101, static_cast<std::uint64_t>(s * 16 + static_cast<int>(k))});
      const double err = max_abs_diff(transforms[k].second(x, rng), x);
      worst = std::max(worst, err);
      ++checks;
      o.require(err <= 1e-12, transforms[k].first + " deviates by " + num(err) + " on series " + std::to_string(s));
    }
  }
  const double secs = since(start);
  o.require(secs < 5.0, "runtime " + num(secs) + " s exceeds 5 s");
  if (o.pass) o.detail = std::to_string(checks) + " checks, max |err| " + num(worst) + ", " + num(secs) + " s";
  return o;
}

Outcome dtw_oracle() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 gen(202);
  std::uniform_int_distribution<int> len(1, 6);
  DtwConfig full;
  full.window_fraction = 1.0;
  int plain = 0, forced = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const TimeSeries x = random_series(gen, len(gen)), y = random_series(gen, len(gen));
    const auto r = dtw(x, y, full);
    const double oracle = testing::brute_force_dtw(x, y, 6);
    o.require(r.distance == oracle, "distance differs from enumeration on pair " + std::to_string(trial));
    o.require(path_cost(x, y, r.path) == oracle, "path cost differs from enumeration on pair " + std::to_string(trial));
    ++plain;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const TimeSeries x = random_series(gen, len(gen)), y = random_series(gen, len(gen));
    const IndexPair point{std::uniform_int_distribution<Index>(0, x.rows() - 1)(gen),
                          std::uniform_int_distribution<Index>(0, y.rows() - 1)(gen)};
    const auto r = dtw_forced_point(x, y, full, point);
    const double oracle = testing::brute_force_dtw(x, y, 6, point);
    o.require(r.distance == oracle, "forced distance differs from enumeration on pair " + std::to_string(trial));
    o.require(path_cost(x, y, r.path) == oracle, "forced path cost differs on pair " + std::to_string(trial));
    o.require(std::find(r.path.begin(), r.path.end(), point) != r.path.end(), "forced point missing from path");
    ++forced;
  }
  const double secs = since(start);
  o.require(secs < 30.0, "runtime " + num(secs) + " s exceeds 30 s");
  if (o.pass)
    o.detail = std::to_string(plain) + " plain + " + std::to_string(forced) + " forced pairs exact, " + num(secs) + " s";
  return o;
}

Outcome dba_monotonicity() {
  Outcome o;
  std::mt19937_64 gen(303);
  std::uniform_int_distribution<int> len(5, 30), count(2, 8);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double worst_rise = 0.0;
  for (int set = 0; set < 25; ++set) {
    std::vector<TimeSeries> seeds;
    std::vector<double> weights;
    const int n = count(gen);
    const Index dims = set % 3 == 0 ? 2 : 1;
    for (int s = 0; s < n; ++s) {
      seeds.push_back(random_series(gen, len(gen), dims));
      weights.push_back(u(gen));
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    std::vector<double> costs;
    dba<double>(seeds, weights, 10, DtwConfig{}, &costs);
    o.require(costs.size() == 11, "expected 11 cost samples");
    for (std::size_t k = 1; k < costs.size(); ++k) {
      worst_rise = std::max(worst_rise, costs[k] - costs[k - 1]);
      o.require(costs[k] <= costs[k - 1] + 1e-9, "cost rose by " + num(costs[k] - costs[k - 1]) + " on set " +
                                                      std::to_string(set));
    }
  }
  const TimeSeries x = random_series(gen, 40, 2);
  const std::vector<TimeSeries> one{x}, two{x, x};
  o.require(dba<double>(one, std::vector<double>{1.0}, 10, DtwConfig{}) == x, "single-seed fixed point not exact");
  o.require(dba<double>(two, std::vector<double>{0.5, 0.5}, 10, DtwConfig{}) == x,
            "duplicate-seed fixed point not exact");
  if (o.pass) o.detail = "25 seed sets, largest cost increase " + num(worst_rise) + "; fixed points exact";
  return o;
}

Outcome determinism(const fs::path& root) {
  Outcome o;
  const fs::path dir = root / "determinism";
  fs::create_directories(dir);
  const fs::path input = dir / "Synth_TRAIN.tsv";
  write_tsv(make_synthetic_dataset(30, 60, 3, 404), input);
  for (Method m : kAugmentationMethods) {
    const std::string name(method_name(m));
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "1", "8"}) {
      const fs::path out = dir / (name + "_" + std::to_string(outputs.size()));
      const auto r = testing::run_cli({"augment", input.string(), "-m", name, "--seed", "42", "-j", workers, "-o",
                                       out.string()});
      o.require(r.code == 0, name + ": augment exited " + std::to_string(r.code) + ": " + r.err);
      outputs.push_back(testing::slurp(out / augmented_file_name("Synth", m, 4)));
    }
    o.require(!outputs[0].empty(), name + ": empty output");
    o.require(outputs[0] == outputs[1], name + ": repeated run differs");
    o.require(outputs[0] == outputs[2], name + ": 1 vs 8 workers differ");
  }
  if (o.pass) o.detail = "12 methods: repeat and 1-vs-8-worker outputs byte-identical";
  return o;
}

Outcome multiplier_contract(const fs::path& root) {
  Outcome o;
  const fs::path dir = root / "multiplier";
  fs::create_directories(dir);
  const fs::path input = dir / "Hundred_TRAIN.tsv";
  write_tsv(make_synthetic_dataset(100, 50, 3, 505), input);
  const auto r = testing::run_cli({"augment", input.string(), "-m", "jittering", "-n", "4"});
  o.require(r.code == 0, "augment exited " + std::to_string(r.code));
  const LabeledDataset in = load_tsv(input);
  const LabeledDataset out = load_tsv(dir / "Hundred_jittering_x4_TRAIN.tsv");
  std::map<double, std::size_t> hin, hout;
  for (int l : in.labels) ++hin[in.class_values[static_cast<std::size_t>(l)]];
  for (int l : out.labels) ++hout[out.class_values[static_cast<std::size_t>(l)]];
  for (auto& [label, c] : hin) c *= 4;
  o.require(out.size() == 400, "generated " + std::to_string(out.size()) + " rows, expected 400");
  o.require(hin == hout, "label histogram is not 4x the input's");
  if (o.pass) o.detail = "400 rows, label histogram 4x input";
  return o;
}

Outcome timing_order() {
  Outcome o;
  const auto start = Clock::now();
  const LabeledDataset ds = make_synthetic_dataset(100, 150, 2, 606);
  const std::vector<Method> simple{Method::jittering, Method::rotation, Method::scaling, Method::permutation,
                                   Method::slicing};
  std::vector<Method> all = simple;
  all.push_back(Method::wdba);
  all.push_back(Method::dgw);
  const TimingReport report = bench_methods(ds, all, AugmentConfig{});
  for (Method m : simple) {
    o.require(report.seconds(m) < 0.5, std::string(method_name(m)) + " took " + num(report.seconds(m)) + " s");
  }
  const double jit = report.seconds(Method::jittering);
  const double wdba = report.seconds(Method::wdba), dgw = report.seconds(Method::dgw);
  o.require(wdba >= 50.0 * jit, "wdba " + num(wdba) + " s < 50x jittering " + num(jit) + " s");
  o.require(dgw >= 50.0 * jit, "dgw " + num(dgw) + " s < 50x jittering " + num(jit) + " s");
  o.require(dgw >= wdba / 3.0, "dgw " + num(dgw) + " s < wdba/3 (" + num(wdba / 3.0) + " s)");
  const double secs = since(start);
  o.require(secs < 600.0, "benchmark took " + num(secs) + " s");
  if (o.pass)
    o.detail = "jittering " + num(jit) + " s, wdba " + num(wdba) + " s, dgw " + num(dgw) + " s, total " + num(secs) + " s";
  return o;
}

Outcome statistics_oracle() {
  Outcome o;
  std::mt19937_64 gen(707);
  std::uniform_int_distribution<int> count(2, 60), len(1, 80), classes(1, 6), dims(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto ds = testing::random_dataset(gen, static_cast<std::size_t>(count(gen)), len(gen), classes(gen), dims(gen));
    const double e1 = std::abs(dataset_variance(ds) - testing::direct_dataset_variance(ds));
    const double e2 = std::abs(intra_class_variance(ds) - testing::direct_intra_class_variance(ds));
    worst = std::max({worst, e1, e2});
    o.require(e1 <= 1e-9 && e2 <= 1e-9, "dataset " + std::to_string(trial) + " differs by " + num(std::max(e1, e2)));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto ds = testing::random_dataset(gen, static_cast<std::size_t>(count(gen)), len(gen), 1);
    o.require(intra_class_variance(ds) == dataset_variance(ds), "C = 1 reduction not exact");
  }
  if (o.pass) o.detail = "20 datasets, max |err| " + num(worst) + "; C = 1 reduction exact on 20 datasets";
  return o;
}

Outcome preprocessing(const fs::path& root) {
  Outcome o;
  const fs::path dir = root / "preprocess";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "Craft_TRAIN.tsv") << "1\t0\t0.5\tNaN\t2\n2\t1\t2\t0\n1\t1.5\tNaN\n";
  }
  const LabeledDataset raw = load_tsv(dir / "Craft_TRAIN.tsv");
  const LabeledDataset norm = normalize_minmax(raw);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : norm.series)
    for (Index i = 0; i < s.size(); ++i)
      if (!std::isnan(s.data()[i])) {
        lo = std::min(lo, s.data()[i]);
        hi = std::max(hi, s.data()[i]);
      }
  o.require(lo == -1.0 && hi == 1.0, "normalized span [" + num(lo) + ", " + num(hi) + "]");
  const LabeledDataset ready = pad_and_impute(norm);
  const std::vector<std::vector<double>> expected{{-1, -0.5, 0, 1}, {0, 1, -1, 0}, {0.5, 0, 0, 0}};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    o.require(ready.series[n].rows() == 4, "series " + std::to_string(n) + " not padded to 4");
    for (std::size_t t = 0; t < 4 && ready.series[n].rows() == 4; ++t)
      o.require(ready.series[n](static_cast<Index>(t), 0) == expected[n][t],
                "series " + std::to_string(n) + " step " + std::to_string(t) + " is " +
                    num(ready.series[n](static_cast<Index>(t), 0)));
  }
  if (o.pass) o.detail = "min/max exactly -1/+1, NaN->0 and padding verified at every position";
  return o;
}

Outcome structural_properties() {
  Outcome o;
  std::mt19937_64 gen(909);
  const TransformParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const TimeSeries x = random_series(gen, 10 + trial, 1 + trial % 3);
    Rng rng({909, static_cast<std::uint64_t>(trial)});
    const TimeSeries y = permute(x, p, rng);
    std::vector<double> a(x.data(), x.data() + x.size()), b(y.data(), y.data() + y.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    o.require(a == b, "permutation changed the value multiset");
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const Index len = 8 + trial % 300;
    Rng rng({910, static_cast<std::uint64_t>(trial)});
    const auto tau = draw_time_warp(len, p, rng);
    o.require(tau.front() == 0.0 && tau.back() == static_cast<double>(len - 1), "time warp moved an endpoint");
    for (std::size_t t = 1; t < tau.size(); ++t) o.require(tau[t] > tau[t - 1], "time warp not strictly increasing");
  }
  for (Index len : {10, 11, 15, 100, 128, 333}) {
    const Index expected = static_cast<Index>(std::round(0.9 * static_cast<double>(len)));
    o.require(slice_window(len, p.slice_ratio) == expected, "slice window wrong for T = " + std::to_string(len));
  }
  o.require(slice_window(100, p.slice_ratio) == 90, "slice window for T = 100 is not 90");
  TransformParams wide = p;
  wide.rotation_sigma = 2.0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const TimeSeries x = random_series(gen, 64, 2 + trial % 4);
    Rng rng({911, static_cast<std::uint64_t>(trial)});
    const TimeSeries r = rotate(x, wide, rng);
    for (Index t = 0; t < x.rows(); ++t) worst = std::max(worst, std::abs(r.row(t).norm() - x.row(t).norm()));
  }
  o.require(worst <= 1e-10, "rotation changed a sample norm by " + num(worst));
  if (o.pass) o.detail = "multiset exact, 1000 warps monotone, W = round(0.9 T), rotation norm err " + num(worst);
  return o;
}

Outcome pca_pipeline(const fs::path& root) {
  Outcome o;
  const fs::path dir = root / "pca";
  fs::create_directories(dir);
  const fs::path input = dir / "TwoClass_TRAIN.tsv";
  write_tsv(make_synthetic_dataset(40, 80, 2, 1010), input);
  const auto r = testing::run_cli({"plot", input.string(), "-m", "dgw", "--pca", "-n", "2"});
  o.require(r.code == 0, "plot exited " + std::to_string(r.code) + ": " + r.err);
  const std::string svg = testing::slurp(dir / "TwoClass_dgw_pca.svg");
  const std::string csv = testing::slurp(dir / "TwoClass_dgw_pca.csv");
  o.require(svg.find("<svg") != std::string::npos, "PCA SVG missing");
  o.require(std::count(csv.begin(), csv.end(), '\n') == 1 + 40 + 80, "PCA CSV row count wrong");

  std::mt19937_64 gen(1011);
  const TimeSeries base = random_series(gen, 50), offset = random_series(gen, 50);
  std::vector<TimeSeries> line;
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 30; ++k) line.push_back(offset + u(gen) * base);
  const double second = pca_project(line, 2).coordinates.col(1).cwiseAbs().maxCoeff();
  o.require(second <= 1e-8, "rank-1 second component reaches " + num(second));
  if (o.pass) o.detail = "SVG + CSV (121 rows) written; rank-1 |pc2| max " + num(second);
  return o;
}

}  // namespace

int main() {
  const fs::path root = testing::scratch_dir("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"identity limits of the 8 transforms", identity_limits},
      {"DTW exhaustive-enumeration oracle", dtw_oracle},
      {"DBA cost monotonicity and fixed points", dba_monotonicity},
      {"augment determinism across runs and workers", [&] { return determinism(root); }},
      {"multiplier contract", [&] { return multiplier_contract(root); }},
      {"augmentation timing order", timing_order},
      {"variance statistics oracle", statistics_oracle},
      {"preprocessing contract", [&] { return preprocessing(root); }},
      {"transform structural properties", structural_properties},
      {"PCA figure pipeline", [&] { return pca_pipeline(root); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
