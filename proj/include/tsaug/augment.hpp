#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsaug/dataset.hpp"
#include "tsaug/mixing.hpp"
#include "tsaug/transforms.hpp"

namespace tsaug {

enum class Method {
  none,
  jittering,
  rotation,  ///< flipping for univariate data
  scaling,
  magnitude_warping,
  permutation,
  slicing,
  time_warping,
  window_warping,
  spawner,
  wdba,
  rgw,
  dgw,
};

/// The twelve augmentation methods (excludes `none`).
inline constexpr std::array<Method, 12> kAugmentationMethods{
    Method::jittering,    Method::rotation,       Method::scaling, Method::magnitude_warping,
    Method::permutation,  Method::slicing,        Method::time_warping, Method::window_warping,
    Method::spawner,      Method::wdba,           Method::rgw,     Method::dgw};

std::string_view method_name(Method m);

/// Accepts the canonical names plus "flipping" (alias of rotation). Case-sensitive.
std::optional<Method> parse_method(std::string_view name);

/// Comma-separated list of the twelve method names.
std::string method_list();

bool is_mixing(Method m);

/// Method selection plus every tunable parameter and the master seed.
struct AugmentConfig {
  Method method = Method::none;
  TransformParams transform;
  MixingParams mixing;
  std::uint64_t master_seed = 0;
  std::size_t multiplier = 4;
  std::size_t workers = 1;
};

/// Applies a "key=value" override to the config. Throws ArgumentError naming the key when the
/// key is unknown or the value does not parse.
void apply_param(AugmentConfig& cfg, std::string_view assignment);

/// Names of the keys accepted by apply_param.
std::vector<std::string> param_keys();

struct AugmentOutput {
  LabeledDataset generated;
  std::size_t fallbacks = 0;  ///< patterns copied unchanged because mixing was impossible
};

/// One augmented pattern from ds.series[ref] using substream `stream`.
MixResult<double> generate_pattern(const LabeledDataset& ds, std::size_t ref, const AugmentConfig& cfg,
                                   std::uint64_t stream);

/// multiplier * N generated patterns ordered by (original index, replica); generation
/// g = index * multiplier + replica uses substream g. Output is independent of cfg.workers.
AugmentOutput augment_dataset(const LabeledDataset& ds, const AugmentConfig& cfg);

/// "<name>_<method>_x<multiplier>_TRAIN.tsv"
std::string augmented_file_name(const std::string& dataset, Method method, std::size_t multiplier);

}  // namespace tsaug
