#include "tsaug/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "tsaug/analysis.hpp"
#include "tsaug/augment.hpp"
#include "tsaug/bench.hpp"
#include "tsaug/dataset.hpp"
#include "tsaug/errors.hpp"
#include "tsaug/plot.hpp"

namespace fs = std::filesystem;

namespace tsaug::cli {
namespace {

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  std::string method = "jittering";
  std::vector<std::string> methods;
  std::size_t multiplier = 4;
  std::optional<std::size_t> multiplier_flag;
  std::uint64_t seed = 0;
  std::vector<std::string> params;
  std::size_t workers = 1;
  std::string output_dir;
  std::string output;
  bool normalize = false;
  std::size_t index = 0;
  bool pca = false;
  std::vector<std::string> synthetic;
  int classes = 2;
  std::string delta_acc;
};

/// Method/parameter errors detected before any work starts.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Method require_method(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  throw UsageError("unknown method '" + name + "'; valid methods: " + method_list() + " (or none)");
}

AugmentConfig make_config(const Options& opt, Method method) {
  AugmentConfig cfg;
  cfg.method = method;
  cfg.master_seed = opt.seed;
  cfg.multiplier = opt.multiplier;
  cfg.workers = opt.workers;
  for (const auto& p : opt.params) {
    try {
      apply_param(cfg, p);
    } catch (const ArgumentError& e) {
      std::string keys;
      for (const auto& k : param_keys()) keys += (keys.empty() ? "" : ", ") + k;
      throw UsageError(std::string(e.what()) + "; valid parameters: " + keys);
    }
  }
  if (cfg.multiplier < 1) throw UsageError("multiplier must be positive");
  return cfg;
}

fs::path output_directory(const Options& opt, const fs::path& source) {
  if (!opt.output_dir.empty()) return opt.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  const fs::path parent = source.parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

LabeledDataset load_prepared(const fs::path& path, bool normalize) {
  LabeledDataset ds = load_tsv(path);
  if (normalize) ds = normalize_minmax(ds);
  return pad_and_impute(ds);
}

std::vector<fs::path> collect_datasets(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p))
        if (entry.is_regular_file() && entry.path().filename().string().ends_with("_TRAIN.tsv"))
          found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw FormatError("no such file or directory: " + in);
    }
  }
  if (files.empty()) throw FormatError("no *_TRAIN.tsv datasets found");
  return files;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_augment(const Options& opt, std::ostream& out, std::ostream& err) {
  const Method method = require_method(opt.method);
  const AugmentConfig cfg = make_config(opt, method);
  const fs::path source(opt.input);
  const LabeledDataset ds = load_prepared(source, opt.normalize);

  const auto start = std::chrono::steady_clock::now();
  const AugmentOutput result = augment_dataset(ds, cfg);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  const fs::path target = output_directory(opt, source) / augmented_file_name(ds.name, method, cfg.multiplier);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  write_tsv(result.generated, target);
  if (result.fallbacks > 0)
    err << "warning: " << result.fallbacks
        << " patterns copied unchanged (class too small or no other class for mixing)\n";
  out << "generated " << result.generated.size() << " patterns with " << method_name(method) << " in "
      << fmt6(elapsed.count()) << " s -> " << target.string() << "\n";
  return kOk;
}

int cmd_plot(const Options& opt, std::ostream& out, std::ostream&) {
  std::vector<Method> methods;
  for (const auto& name : opt.methods.empty() ? std::vector<std::string>{"jittering"} : opt.methods)
    methods.push_back(require_method(name));
  const AugmentConfig base = make_config(opt, Method::none);
  const fs::path source(opt.input);
  const LabeledDataset ds = load_prepared(source, opt.normalize);
  if (opt.index >= ds.size()) throw UsageError("--index " + std::to_string(opt.index) + " is out of range");
  const fs::path dir = output_directory(opt, source);

  std::vector<OverlayPanel> panels;
  std::string csv = "method,series,t,value\n";
  for (Method m : methods) {
    AugmentConfig cfg = base;
    cfg.method = m;
    const auto generated = generate_pattern(ds, opt.index, cfg, opt.index * cfg.multiplier).series;
    const TimeSeries& original = ds.series[opt.index];
    for (Index t = 0; t < original.rows(); ++t)
      csv += std::string(method_name(m)) + ",original," + std::to_string(t) + "," + fmt6(original(t, 0)) + "\n";
    for (Index t = 0; t < generated.rows(); ++t)
      csv += std::string(method_name(m)) + ",generated," + std::to_string(t) + "," + fmt6(generated(t, 0)) + "\n";
    panels.push_back({std::string(method_name(m)), original, generated});
  }
  const fs::path overlay = dir / (ds.name + "_overlay.svg");
  write_text(overlay, overlay_svg(panels));
  write_text(dir / (ds.name + "_overlay.csv"), csv);
  out << "wrote " << overlay.string() << "\n";

  if (opt.pca) {
    AugmentConfig cfg = base;
    cfg.method = methods.front();
    const auto generated = augment_dataset(ds, cfg).generated;
    std::vector<TimeSeries> all = ds.series;
    all.insert(all.end(), generated.series.begin(), generated.series.end());
    std::vector<int> labels = ds.labels;
    labels.insert(labels.end(), generated.labels.begin(), generated.labels.end());
    std::vector<bool> is_generated(all.size(), false);
    std::fill(is_generated.begin() + static_cast<std::ptrdiff_t>(ds.size()), is_generated.end(), true);

    const PcaResult fit = pca_project(all, 2);
    std::string pcsv = "kind,index,label,pc1,pc2\n";
    for (std::size_t n = 0; n < all.size(); ++n) {
      const auto i = static_cast<Index>(n);
      const std::size_t local = is_generated[n] ? n - ds.size() : n;
      pcsv += std::string(is_generated[n] ? "generated" : "original") + "," + std::to_string(local) + "," +
              std::to_string(labels[n]) + "," + fmt6(fit.coordinates(i, 0)) + "," + fmt6(fit.coordinates(i, 1)) + "\n";
    }
    const std::string stem = ds.name + "_" + std::string(method_name(cfg.method)) + "_pca";
    write_text(dir / (stem + ".svg"),
               scatter_svg(fit.coordinates, labels, is_generated, ds.name + " PCA, " + std::string(method_name(cfg.method))));
    write_text(dir / (stem + ".csv"), pcsv);
    out << "wrote " << (dir / (stem + ".svg")).string() << "\n";
  }
  return kOk;
}

int cmd_bench(const Options& opt, std::ostream& out, std::ostream&) {
  std::vector<Method> methods;
  if (opt.methods.empty()) {
    methods.push_back(Method::none);
    methods.insert(methods.end(), kAugmentationMethods.begin(), kAugmentationMethods.end());
  } else {
    for (const auto& name : opt.methods) methods.push_back(require_method(name));
  }
  Options single = opt;
  const AugmentConfig base = make_config(single, Method::none);

  std::vector<LabeledDataset> datasets;
  for (const auto& spec : opt.synthetic) {
    std::size_t n = 0;
    long long t = 0;
    if (std::sscanf(spec.c_str(), "%zux%lld", &n, &t) != 2 || n < 1 || t < 1)
      throw UsageError("--synthetic expects NxT (e.g. 100x150), got '" + spec + "'");
    datasets.push_back(make_synthetic_dataset(n, static_cast<Index>(t), opt.classes, opt.seed));
  }
  if (!opt.inputs.empty())
    for (const auto& path : collect_datasets(opt.inputs)) datasets.push_back(load_prepared(path, opt.normalize));
  if (datasets.empty()) throw FormatError("bench: no datasets given (pass files, directories or --synthetic)");

  std::vector<TimingReport> reports;
  for (const auto& ds : datasets) reports.push_back(bench_methods(ds, methods, base, opt.multiplier));
  const std::string csv = format_timing_csv(reports, methods);
  if (!opt.output.empty()) write_text(opt.output, csv);
  out << csv;
  return kOk;
}

std::vector<PropertyReport> analyze_all(const Options& opt, std::ostream& err) {
  std::vector<PropertyReport> reports;
  for (const auto& path : collect_datasets(opt.inputs)) {
    const LabeledDataset ds = load_prepared(path, opt.normalize);
    for (int c : classes_below(ds, 2))
      err << "warning: " << ds.name << ": class " << fmt6(ds.class_values[static_cast<std::size_t>(c)])
          << " has fewer than 2 patterns and contributes 0 to intra-class variance\n";
    reports.push_back(property_report(ds));
  }
  return reports;
}

fs::path report_path(const Options& opt, const std::string& file) {
  if (!opt.output.empty()) return opt.output;
  if (!opt.output_dir.empty()) return fs::path(opt.output_dir) / file;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return fs::path(env) / file;
  return fs::path(file);
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto reports = analyze_all(opt, err);
  const std::string csv = format_property_csv(reports);
  write_text(report_path(opt, "properties.csv"), csv);
  out << csv;
  return kOk;
}

int cmd_correlate(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto delta = load_delta_acc(opt.delta_acc);
  const auto reports = analyze_all(opt, err);
  const auto missing = missing_pairs(reports, delta);
  if (!missing.empty()) {
    err << "missing delta_acc rows for " << missing.size() << " (dataset, method) pairs:\n";
    for (const auto& m : missing) err << "  " << m.dataset << "," << m.method << "\n";
    return kMissingDeltaAcc;
  }
  const std::string csv = format_correlation_csv(corr_report(reports, delta));
  write_text(report_path(opt, "correlations.csv"), csv);
  out << csv;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-series data augmentation toolkit"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Master seed");
    sub->add_option("-p,--param", opt.params, "Parameter override key=value (repeatable)");
    sub->add_option("-o,--output-dir", opt.output_dir, std::string("Output directory (default: $") + kOutputDirEnv +
                                                           ", else beside the input)");
    sub->add_flag("--normalize", opt.normalize, "Min-max normalize to [-1, 1] using the file's own extremes");
  };

  auto* augment = app.add_subcommand("augment", "Generate an augmented copy of a TRAIN file");
  augment->add_option("input", opt.input, "UCR TSV training file")->required();
  augment->add_option("-m,--method", opt.method, "Augmentation method")->required();
  augment->add_option("-n,--multiplier", opt.multiplier_flag, "Generated patterns per original (default 4)");
  augment->add_option("-j,--workers", opt.workers, "Worker threads");
  add_common(augment);

  auto* plot = app.add_subcommand("plot", "Overlay and PCA figures as SVG plus coordinate CSV");
  plot->add_option("input", opt.input, "UCR TSV training file")->required();
  plot->add_option("-m,--method", opt.methods, "Method(s) to overlay (repeatable)");
  plot->add_option("-i,--index", opt.index, "Pattern to overlay");
  plot->add_option("-n,--multiplier", opt.multiplier_flag, "Generated patterns per original in the PCA plot (default 1)");
  plot->add_flag("--pca", opt.pca, "Also emit a PCA scatter of originals and generated patterns");
  add_common(plot);

  auto* bench = app.add_subcommand("bench", "Time one augmentation pass per method");
  bench->add_option("inputs", opt.inputs, "TRAIN files or directories");
  bench->add_option("-m,--method", opt.methods, "Methods to time (default: all)")->delimiter(',');
  bench->add_option("--synthetic", opt.synthetic, "Synthetic dataset NxT (repeatable)");
  bench->add_option("--classes", opt.classes, "Classes in synthetic datasets");
  bench->add_option("-n,--multiplier", opt.multiplier_flag, "Generated patterns per original (default 1)");
  bench->add_option("--output", opt.output, "CSV output file");
  add_common(bench);

  auto* analyze = app.add_subcommand("analyze", "Dataset property report (CSV)");
  analyze->add_option("inputs", opt.inputs, "TRAIN files or directories")->required();
  analyze->add_option("--output", opt.output, "CSV output file (default: properties.csv)");
  add_common(analyze);

  auto* correlate = app.add_subcommand("correlate", "Correlate dataset properties with accuracy changes");
  correlate->add_option("inputs", opt.inputs, "TRAIN files or directories")->required();
  correlate->add_option("--delta-acc", opt.delta_acc, "CSV with header dataset,method,delta_acc")->required();
  correlate->add_option("--output", opt.output, "CSV output file (default: correlations.csv)");
  add_common(correlate);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kParseError;
  }

  opt.multiplier = opt.multiplier_flag.value_or(*augment ? 4 : 1);
  try {
    if (*augment) return cmd_augment(opt, out, err);
    if (*plot) return cmd_plot(opt, out, err);
    if (*bench) return cmd_bench(opt, out, err);
    if (*analyze) return cmd_analyze(opt, out, err);
    if (*correlate) return cmd_correlate(opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kMethodError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kParseError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    // ArgumentError, ConstraintError, DimensionError, DomainError from the methods.
    err << "method error: " << e.what() << "\n";
    return kMethodError;
  }
  return kParseError;
}

}  // namespace tsaug::cli
