#include "tsaug/random.hpp"

#include <cmath>
#include <limits>

#include "tsaug/errors.hpp"

namespace tsaug {
namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(SeedSpec seed) noexcept {
  return splitmix64(splitmix64(seed.master_seed) ^ splitmix64(~seed.stream_id));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal(double mean, double sigma) {
  if (sigma < 0.0) throw ArgumentError("normal: sigma must be non-negative");
  double z;
  if (has_spare_) {
    has_spare_ = false;
    z = spare_;
  } else {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    z = u * f;
  }
  return mean + sigma * z;
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw ArgumentError("Rng::index: empty range");
  const std::uint64_t range = n;
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % range);
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ArgumentError("Rng::integer: empty range");
  return lo + static_cast<std::int64_t>(index(static_cast<std::size_t>(hi - lo) + 1));
}

std::vector<double> draw_gaussian(SeedSpec seed, double mean, double sigma, std::size_t count) {
  if (sigma < 0.0) throw ArgumentError("draw_gaussian: sigma must be non-negative");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.normal(mean, sigma);
  return out;
}

}  // namespace tsaug
