#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsaug/augment.hpp"
#include "tsaug/dataset.hpp"

namespace tsaug {

struct MethodTiming {
  Method method;
  double seconds = 0.0;
};

/// Wall-clock time of one single-threaded augmentation pass per method.
struct TimingReport {
  std::string dataset;
  std::string machine;
  std::vector<MethodTiming> timings;

  double seconds(Method m) const;
};

/// Times one pass of `method` over ds (workers forced to 1).
TimingReport bench_method(const LabeledDataset& ds, Method method, const AugmentConfig& base,
                          std::size_t multiplier = 1);

/// Times each method in turn on the same dataset.
TimingReport bench_methods(const LabeledDataset& ds, std::span<const Method> methods,
                           const AugmentConfig& base, std::size_t multiplier = 1);

/// CSV: one row per method, one column per dataset (seconds).
std::string format_timing_csv(std::span<const TimingReport> reports, std::span<const Method> methods);

/// Short description of the host (hardware threads, compiler).
std::string machine_note();

/// Deterministic labeled dataset of noisy class-specific sinusoid/bump shapes in [-1, 1].
LabeledDataset make_synthetic_dataset(std::size_t count, Index length, int classes, std::uint64_t seed,
                                      Index channels = 1);

}  // namespace tsaug
