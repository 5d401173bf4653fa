#include "tsaug/augment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <thread>

#include "tsaug/errors.hpp"

namespace tsaug {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 13> kNames{{
    {Method::none, "none"},
    {Method::jittering, "jittering"},
    {Method::rotation, "rotation"},
    {Method::scaling, "scaling"},
    {Method::magnitude_warping, "magnitude_warping"},
    {Method::permutation, "permutation"},
    {Method::slicing, "slicing"},
    {Method::time_warping, "time_warping"},
    {Method::window_warping, "window_warping"},
    {Method::spawner, "spawner"},
    {Method::wdba, "wdba"},
    {Method::rgw, "rgw"},
    {Method::dgw, "dgw"},
}};

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v))
    throw ArgumentError("parameter '" + std::string(key) + "': cannot parse '" + std::string(text) + "'");
  return v;
}

Index to_index(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ArgumentError("parameter '" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
  return static_cast<Index>(v);
}

bool to_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "on") return true;
  if (text == "0" || text == "false" || text == "off") return false;
  throw ArgumentError("parameter '" + std::string(key) + "': expected true/false, got '" + std::string(text) + "'");
}

std::vector<double> to_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(to_double(key, text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

using Setter = std::function<void(AugmentConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"jitter_sigma", [](auto& c, auto k, auto v) { c.transform.jitter_sigma = to_double(k, v); }},
      {"scale_sigma", [](auto& c, auto k, auto v) { c.transform.scale_sigma = to_double(k, v); }},
      {"magwarp_sigma", [](auto& c, auto k, auto v) { c.transform.magwarp_sigma = to_double(k, v); }},
      {"magwarp_knots", [](auto& c, auto k, auto v) { c.transform.magwarp_knots = to_index(k, v); }},
      {"magwarp_random_knots", [](auto& c, auto k, auto v) { c.transform.magwarp_random_knots = to_bool(k, v); }},
      {"timewarp_sigma", [](auto& c, auto k, auto v) { c.transform.timewarp_sigma = to_double(k, v); }},
      {"timewarp_knots", [](auto& c, auto k, auto v) { c.transform.timewarp_knots = to_index(k, v); }},
      {"slice_ratio", [](auto& c, auto k, auto v) { c.transform.slice_ratio = to_double(k, v); }},
      {"permute_min_segments", [](auto& c, auto k, auto v) { c.transform.permute_min_segments = to_index(k, v); }},
      {"permute_max_segments", [](auto& c, auto k, auto v) { c.transform.permute_max_segments = to_index(k, v); }},
      {"permute_mode",
       [](auto& c, auto k, auto v) {
         if (v == "equal") c.transform.permute_mode = PermuteMode::equal;
         else if (v == "variable") c.transform.permute_mode = PermuteMode::variable;
         else throw ArgumentError("parameter '" + std::string(k) + "': expected equal|variable");
       }},
      {"windowwarp_ratio", [](auto& c, auto k, auto v) { c.transform.windowwarp_ratio = to_double(k, v); }},
      {"windowwarp_scales", [](auto& c, auto k, auto v) { c.transform.windowwarp_scales = to_doubles(k, v); }},
      {"rotation_sigma", [](auto& c, auto k, auto v) { c.transform.rotation_sigma = to_double(k, v); }},
      {"shared_channels", [](auto& c, auto k, auto v) { c.transform.shared_channels = to_bool(k, v); }},
      {"spawner_sigma", [](auto& c, auto k, auto v) { c.mixing.spawner_sigma = to_double(k, v); }},
      {"spawner_noise",
       [](auto& c, auto k, auto v) {
         if (v == "relative") c.mixing.spawner_noise = SpawnerNoise::relative;
         else if (v == "absolute") c.mixing.spawner_noise = SpawnerNoise::absolute;
         else throw ArgumentError("parameter '" + std::string(k) + "': expected relative|absolute");
       }},
      {"dtw_window", [](auto& c, auto k, auto v) { c.mixing.dtw_window = to_double(k, v); }},
      {"dba_iterations", [](auto& c, auto k, auto v) { c.mixing.dba_iterations = to_index(k, v); }},
      {"wdba_neighbors", [](auto& c, auto k, auto v) { c.mixing.wdba_neighbors = to_index(k, v); }},
      {"dgw_batch", [](auto& c, auto k, auto v) { c.mixing.dgw_batch = to_index(k, v); }},
      {"use_shape_dtw_for_dgw", [](auto& c, auto k, auto v) { c.mixing.use_shape_dtw_for_dgw = to_bool(k, v); }},
      {"descriptor_len", [](auto& c, auto k, auto v) { c.mixing.descriptor_len = to_index(k, v); }},
  };
  return table;
}

/// Uniform same-class partner other than ref, or nullopt for singleton classes.
std::optional<std::size_t> draw_partner(const LabeledDataset& ds, std::size_t ref, Rng& rng) {
  std::vector<std::size_t> pool;
  for (std::size_t s = 0; s < ds.size(); ++s)
    if (s != ref && ds.labels[s] == ds.labels[ref]) pool.push_back(s);
  if (pool.empty()) return std::nullopt;
  return pool[rng.index(pool.size())];
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kNames)
    if (method == m) return name;
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "flipping") return Method::rotation;
  for (const auto& [method, n] : kNames)
    if (n == name) return method;
  return std::nullopt;
}

std::string method_list() {
  std::string out;
  for (Method m : kAugmentationMethods) {
    if (!out.empty()) out += ", ";
    out += method_name(m);
  }
  return out;
}

bool is_mixing(Method m) {
  return m == Method::spawner || m == Method::wdba || m == Method::rgw || m == Method::dgw;
}

void apply_param(AugmentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ArgumentError("parameter override '" + std::string(assignment) + "' is not key=value");
  const auto key = assignment.substr(0, eq);
  const auto value = assignment.substr(eq + 1);
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ArgumentError("unknown parameter '" + std::string(key) + "'");
  it->second(cfg, key, value);
}

std::vector<std::string> param_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

MixResult<double> generate_pattern(const LabeledDataset& ds, std::size_t ref, const AugmentConfig& cfg,
                                   std::uint64_t stream) {
  Rng rng(SeedSpec{cfg.master_seed, stream});
  const TimeSeries& x = ds.series[ref];
  const TransformParams& tp = cfg.transform;
  const std::span<const TimeSeries> all(ds.series);
  const std::span<const int> labels(ds.labels);
  switch (cfg.method) {
    case Method::none: return {x, false};
    case Method::jittering: return {jitter(x, tp, rng), false};
    case Method::rotation: return {x.cols() == 1 ? flip(x) : rotate(x, tp, rng), false};
    case Method::scaling: return {scale(x, tp, rng), false};
    case Method::magnitude_warping: return {magnitude_warp(x, tp, rng), false};
    case Method::permutation: return {permute(x, tp, rng), false};
    case Method::slicing: return {window_slice(x, tp, rng), false};
    case Method::time_warping: return {time_warp(x, tp, rng), false};
    case Method::window_warping: return {window_warp(x, tp, rng), false};
    case Method::spawner: {
      const auto partner = draw_partner(ds, ref, rng);
      if (!partner) return {x, true};
      return {spawner(x, ds.series[*partner], cfg.mixing, rng), false};
    }
    case Method::wdba: return wdba_asd<double>(all, labels, ref, cfg.mixing);
    case Method::rgw: {
      const auto partner = draw_partner(ds, ref, rng);
      if (!partner) return {x, true};
      return {rgw(x, ds.series[*partner], cfg.mixing.dtw_config()), false};
    }
    case Method::dgw: return dgw<double>(all, labels, ref, cfg.mixing, rng);
  }
  throw ArgumentError("unknown augmentation method");
}

AugmentOutput augment_dataset(const LabeledDataset& ds, const AugmentConfig& cfg) {
  if (ds.series.size() != ds.labels.size()) throw ArgumentError("augment: series/labels size mismatch");
  if (cfg.multiplier < 1) throw ArgumentError("augment: multiplier must be positive");
  const std::size_t total = ds.size() * cfg.multiplier;

  AugmentOutput out;
  out.generated.name = ds.name;
  out.generated.split = ds.split;
  out.generated.class_values = ds.class_values;
  out.generated.norm = ds.norm;
  out.generated.series.resize(total);
  out.generated.labels.resize(total);
  std::vector<char> fallback(total, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t g = next++; g < total; g = next++) {
      try {
        const std::size_t ref = g / cfg.multiplier;
        auto result = generate_pattern(ds, ref, cfg, g);
        out.generated.series[g] = std::move(result.series);
        out.generated.labels[g] = ds.labels[ref];
        fallback[g] = result.fallback ? 1 : 0;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, std::max<std::size_t>(total, 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  out.fallbacks = static_cast<std::size_t>(std::count(fallback.begin(), fallback.end(), 1));
  return out;
}

std::string augmented_file_name(const std::string& dataset, Method method, std::size_t multiplier) {
  return dataset + "_" + std::string(method_name(method)) + "_x" + std::to_string(multiplier) + "_TRAIN.tsv";
}

}  // namespace tsaug
