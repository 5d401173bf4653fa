#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tsaug {

/// Identifies one reproducible random stream: a master seed plus a per-pattern substream index.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Mixes (master_seed, stream_id) into the 64-bit engine seed. Fixed for all time:
/// changing it changes every augmented file.
std::uint64_t mix_seed(SeedSpec seed) noexcept;

/// Random source used by every stochastic operation.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and derives
/// uniform and normal variates with its own arithmetic, so streams are identical across
/// standard library implementations, not just across runs.
class Rng {
 public:
  explicit Rng(SeedSpec seed) : engine_(mix_seed(seed)) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Normal(mean, sigma^2) via the Marsaglia polar method. sigma = 0 returns mean exactly.
  double normal(double mean, double sigma);

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Uniform integer in [lo, hi] (inclusive).
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// count i.i.d. Normal(mean, sigma^2) draws fully determined by seed.
std::vector<double> draw_gaussian(SeedSpec seed, double mean, double sigma, std::size_t count);

}  // namespace tsaug
