#include "tsaug/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "tsaug/errors.hpp"
#include "tsaug/random.hpp"

namespace tsaug {

double TimingReport::seconds(Method m) const {
  for (const auto& t : timings)
    if (t.method == m) return t.seconds;
  throw ArgumentError("timing report has no entry for " + std::string(method_name(m)));
}

TimingReport bench_method(const LabeledDataset& ds, Method method, const AugmentConfig& base,
                          std::size_t multiplier) {
  return bench_methods(ds, std::span<const Method>(&method, 1), base, multiplier);
}

TimingReport bench_methods(const LabeledDataset& ds, std::span<const Method> methods,
                           const AugmentConfig& base, std::size_t multiplier) {
  TimingReport report{ds.name, machine_note(), {}};
  for (Method m : methods) {
    AugmentConfig cfg = base;
    cfg.method = m;
    cfg.multiplier = multiplier;
    cfg.workers = 1;
    const auto start = std::chrono::steady_clock::now();
    const auto out = augment_dataset(ds, cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (out.generated.size() != ds.size() * multiplier) throw std::logic_error("bench: short augmentation pass");
    report.timings.push_back({m, elapsed.count()});
  }
  return report;
}

std::string format_timing_csv(std::span<const TimingReport> reports, std::span<const Method> methods) {
  std::string out = "method";
  for (const auto& r : reports) out += "," + r.dataset;
  out += '\n';
  char buf[32];
  for (Method m : methods) {
    out += method_name(m);
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, ",%.6f", r.seconds(m));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string machine_note() {
  std::string compiler =
#if defined(__clang__)
      "clang " __clang_version__;
#elif defined(__GNUC__)
      "gcc " __VERSION__;
#else
      "unknown compiler";
#endif
  return std::to_string(std::thread::hardware_concurrency()) + " hardware threads, " + compiler +
         ", single-threaded run";
}

LabeledDataset make_synthetic_dataset(std::size_t count, Index length, int classes, std::uint64_t seed,
                                      Index channels) {
  if (count < 1 || length < 1 || classes < 1 || channels < 1)
    throw ArgumentError("make_synthetic_dataset: sizes must be positive");
  Rng rng(SeedSpec{seed, 0});
  LabeledDataset ds;
  ds.name = "Synthetic" + std::to_string(count) + "x" + std::to_string(length);
  for (int c = 0; c < classes; ++c) ds.class_values.push_back(c + 1);
  for (std::size_t n = 0; n < count; ++n) {
    const int label = static_cast<int>(n % static_cast<std::size_t>(classes));
    const double freq = 1.0 + label;
    const double phase = rng.normal(0.0, 0.2);
    const double bump_at = 0.3 + 0.4 * rng.uniform();
    TimeSeries s(length, channels);
    for (Index c = 0; c < channels; ++c)
      for (Index t = 0; t < length; ++t) {
        const double u = length == 1 ? 0.0 : static_cast<double>(t) / static_cast<double>(length - 1);
        const double wave = std::sin(2.0 * std::numbers::pi * freq * u + phase + 0.5 * c);
        const double bump = std::exp(-std::pow((u - bump_at) / 0.05, 2.0));
        s(t, c) = std::clamp(0.7 * wave + 0.25 * bump + rng.normal(0.0, 0.05), -1.0, 1.0);
      }
    ds.series.push_back(std::move(s));
    ds.labels.push_back(label);
  }
  return ds;
}

}  // namespace tsaug
