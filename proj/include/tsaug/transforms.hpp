#pragma once

// Random-transformation augmentations. Each stochastic transform is split into a draw
// (using an Rng) and a deterministic `apply_*` that takes the drawn quantities, so the
// mechanics can be tested with forced values.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "tsaug/errors.hpp"
#include "tsaug/numerics.hpp"
#include "tsaug/random.hpp"

namespace tsaug {

enum class PermuteMode { equal, variable };

/// Tunable parameters of the random transforms. Defaults are the evaluated settings.
struct TransformParams {
  double jitter_sigma = 0.03;
  double scale_sigma = 0.2;
  double magwarp_sigma = 0.2;
  Index magwarp_knots = 4;
  bool magwarp_random_knots = false;  ///< randomize interior knot positions
  double timewarp_sigma = 0.2;
  Index timewarp_knots = 4;
  double slice_ratio = 0.9;
  Index permute_min_segments = 2;
  Index permute_max_segments = 5;
  PermuteMode permute_mode = PermuteMode::equal;
  double windowwarp_ratio = 0.1;
  std::vector<double> windowwarp_scales{0.5, 2.0};
  double rotation_sigma = 0.2;
  bool shared_channels = false;  ///< one magnitude draw for all channels
};

inline constexpr int kTimeWarpRetries = 100;

// ---------------------------------------------------------------------------
// Magnitude domain

template <typename Derived>
Series<typename Derived::Scalar> jitter(const Eigen::MatrixBase<Derived>& x,
                                        const TransformParams& params, Rng& rng) {
  using Scalar = typename Derived::Scalar;
  if (params.jitter_sigma < 0.0) throw ArgumentError("jitter: sigma must be non-negative");
  Series<Scalar> out = x;
  for (Index c = 0; c < out.cols(); ++c)
    for (Index t = 0; t < out.rows(); ++t)
      out(t, c) += static_cast<Scalar>(rng.normal(0.0, params.jitter_sigma));
  return out;
}

/// Univariate rotation: negation about zero.
template <typename Derived>
Series<typename Derived::Scalar> flip(const Eigen::MatrixBase<Derived>& x) {
  return -x;
}

/// Rotates every sample by angle in the (p, q) coordinate plane.
template <typename Derived>
Series<typename Derived::Scalar> apply_rotation(const Eigen::MatrixBase<Derived>& x, Index p,
                                                Index q, double angle) {
  using Scalar = typename Derived::Scalar;
  if (x.cols() < 2) throw DimensionError("rotate: needs at least two channels (use flip)");
  if (p == q || p < 0 || q < 0 || p >= x.cols() || q >= x.cols())
    throw ArgumentError("rotate: invalid rotation plane");
  Series<Scalar> out = x;
  if (angle == 0.0) return out;
  const auto cs = static_cast<Scalar>(std::cos(angle));
  const auto sn = static_cast<Scalar>(std::sin(angle));
  out.col(p) = cs * x.col(p) - sn * x.col(q);
  out.col(q) = sn * x.col(p) + cs * x.col(q);
  return out;
}

/// One rotation per series: angle ~ N(0, rotation_sigma^2) in a uniformly chosen plane.
template <typename Derived>
Series<typename Derived::Scalar> rotate(const Eigen::MatrixBase<Derived>& x,
                                        const TransformParams& params, Rng& rng) {
  const Index dims = x.cols();
  if (dims < 2) throw DimensionError("rotate: needs at least two channels (use flip)");
  const auto planes = static_cast<std::size_t>(dims * (dims - 1) / 2);
  auto pick = static_cast<Index>(rng.index(planes));
  Index p = 0;
  while (pick >= dims - 1 - p) {
    pick -= dims - 1 - p;
    ++p;
  }
  const Index q = p + 1 + pick;
  return apply_rotation(x, p, q, rng.normal(0.0, params.rotation_sigma));
}

/// x'(t, c) = alpha(c) x(t, c).
template <typename Derived>
Series<typename Derived::Scalar> apply_scale(const Eigen::MatrixBase<Derived>& x,
                                             const std::vector<double>& alpha) {
  using Scalar = typename Derived::Scalar;
  if (static_cast<Index>(alpha.size()) != x.cols())
    throw DimensionError("scale: one factor per channel required");
  Series<Scalar> out = x;
  for (Index c = 0; c < x.cols(); ++c) out.col(c) *= static_cast<Scalar>(alpha[static_cast<std::size_t>(c)]);
  return out;
}

template <typename Derived>
Series<typename Derived::Scalar> scale(const Eigen::MatrixBase<Derived>& x,
                                       const TransformParams& params, Rng& rng) {
  std::vector<double> alpha(static_cast<std::size_t>(x.cols()));
  for (std::size_t c = 0; c < alpha.size(); ++c)
    alpha[c] = (c > 0 && params.shared_channels) ? alpha[0] : rng.normal(1.0, params.scale_sigma);
  return apply_scale(x, alpha);
}

/// Random knots over [0, length-1]: evenly spaced unless random_positions, heights ~ N(1, sigma^2).
inline Knots draw_knots(Index count, Index length, double sigma, bool random_positions, Rng& rng) {
  if (count < 2) throw ArgumentError("knot count must be at least 2");
  Knots knots;
  const double last = static_cast<double>(length - 1);
  knots.positions = even_knot_positions(count, last);
  if (random_positions && count > 2) {
    std::vector<double> interior(static_cast<std::size_t>(count - 2));
    for (auto& v : interior) v = last * rng.uniform();
    std::sort(interior.begin(), interior.end());
    std::copy(interior.begin(), interior.end(), knots.positions.begin() + 1);
    // Coincident draws collapse the spline; fall back to even spacing.
    if (std::adjacent_find(knots.positions.begin(), knots.positions.end(),
                           [](double a, double b) { return !(b > a); }) != knots.positions.end())
      knots.positions = even_knot_positions(count, last);
  }
  knots.heights.resize(static_cast<std::size_t>(count));
  for (auto& h : knots.heights) h = rng.normal(1.0, sigma);
  return knots;
}

/// x'(t, c) = curve(c)(t) x(t, c), one knot set per channel (or one shared).
template <typename Derived>
Series<typename Derived::Scalar> apply_magnitude_warp(const Eigen::MatrixBase<Derived>& x,
                                                      const std::vector<Knots>& knots) {
  using Scalar = typename Derived::Scalar;
  if (knots.size() != 1 && static_cast<Index>(knots.size()) != x.cols())
    throw DimensionError("magnitude_warp: need one knot set or one per channel");
  Series<Scalar> out = x;
  std::vector<double> curve;
  for (Index c = 0; c < x.cols(); ++c) {
    if (c == 0 || knots.size() > 1) curve = spline_curve(knots[knots.size() == 1 ? 0 : static_cast<std::size_t>(c)], x.rows());
    for (Index t = 0; t < x.rows(); ++t) out(t, c) *= static_cast<Scalar>(curve[static_cast<std::size_t>(t)]);
  }
  return out;
}

template <typename Derived>
Series<typename Derived::Scalar> magnitude_warp(const Eigen::MatrixBase<Derived>& x,
                                                const TransformParams& params, Rng& rng) {
  if (x.rows() < 2) return x;
  const std::size_t sets = params.shared_channels ? 1 : static_cast<std::size_t>(x.cols());
  std::vector<Knots> knots;
  knots.reserve(sets);
  for (std::size_t c = 0; c < sets; ++c)
    knots.push_back(draw_knots(params.magwarp_knots, x.rows(), params.magwarp_sigma,
                               params.magwarp_random_knots, rng));
  return apply_magnitude_warp(x, knots);
}

// ---------------------------------------------------------------------------
// Time domain

/// Splits length into `segments` pieces; equal mode gives leading segments one extra element.
inline std::vector<Index> equal_segments(Index length, Index segments) {
  std::vector<Index> sizes(static_cast<std::size_t>(segments), length / segments);
  for (Index k = 0; k < length % segments; ++k) ++sizes[static_cast<std::size_t>(k)];
  return sizes;
}

/// Concatenates segments (given by their sizes, in original order) in the order `order`.
template <typename Derived>
Series<typename Derived::Scalar> apply_permutation(const Eigen::MatrixBase<Derived>& x,
                                                   const std::vector<Index>& sizes,
                                                   const std::vector<std::size_t>& order) {
  if (sizes.size() != order.size()) throw ArgumentError("permute: order/segment count mismatch");
  std::vector<Index> starts(sizes.size(), 0);
  for (std::size_t k = 1; k < sizes.size(); ++k) starts[k] = starts[k - 1] + sizes[k - 1];
  if (std::accumulate(sizes.begin(), sizes.end(), Index{0}) != x.rows())
    throw ArgumentError("permute: segment sizes do not cover the series");
  Series<typename Derived::Scalar> out(x.rows(), x.cols());
  Index at = 0;
  for (std::size_t k : order) {
    out.middleRows(at, sizes[k]) = x.middleRows(starts[k], sizes[k]);
    at += sizes[k];
  }
  return out;
}

template <typename Derived>
Series<typename Derived::Scalar> permute(const Eigen::MatrixBase<Derived>& x,
                                         const TransformParams& params, Rng& rng) {
  const Index length = x.rows();
  if (params.permute_min_segments < 1 || params.permute_max_segments < params.permute_min_segments)
    throw ArgumentError("permute: invalid segment range");
  const auto segments = static_cast<Index>(
      rng.integer(params.permute_min_segments, params.permute_max_segments));
  if (segments > length)
    throw ConstraintError("permute: " + std::to_string(segments) + " segments exceed length " +
                          std::to_string(length));

  std::vector<Index> sizes;
  if (params.permute_mode == PermuteMode::equal) {
    sizes = equal_segments(length, segments);
  } else {
    // segments - 1 distinct cut points drawn from 1..length-1 (partial Fisher-Yates).
    std::vector<Index> cuts(static_cast<std::size_t>(length - 1));
    std::iota(cuts.begin(), cuts.end(), Index{1});
    for (Index k = 0; k + 1 < segments; ++k) {
      const auto pick = static_cast<std::size_t>(k) + rng.index(cuts.size() - static_cast<std::size_t>(k));
      std::swap(cuts[static_cast<std::size_t>(k)], cuts[pick]);
    }
    cuts.resize(static_cast<std::size_t>(segments - 1));
    std::sort(cuts.begin(), cuts.end());
    Index prev = 0;
    for (Index cut : cuts) {
      sizes.push_back(cut - prev);
      prev = cut;
    }
    sizes.push_back(length - prev);
  }

  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
  return apply_permutation(x, sizes, order);
}

/// Window length used by slicing: round(ratio * T).
inline Index slice_window(Index length, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ArgumentError("window_slice: ratio must lie in (0, 1]");
  return static_cast<Index>(std::lround(ratio * static_cast<double>(length)));
}

/// Crops rows [start, start + width) and stretches them back to the full length.
template <typename Derived>
Series<typename Derived::Scalar> apply_window_slice(const Eigen::MatrixBase<Derived>& x, Index start,
                                                    Index width) {
  if (width < 2) throw ConstraintError("window_slice: window shorter than 2 steps");
  if (start < 0 || start + width > x.rows()) throw ArgumentError("window_slice: window out of range");
  return resample_linear(x.middleRows(start, width), x.rows());
}

template <typename Derived>
Series<typename Derived::Scalar> window_slice(const Eigen::MatrixBase<Derived>& x,
                                              const TransformParams& params, Rng& rng) {
  const Index width = slice_window(x.rows(), params.slice_ratio);
  if (width < 2)
    throw ConstraintError("window_slice: window of " + std::to_string(width) +
                          " steps is shorter than 2 (series length " + std::to_string(x.rows()) + ")");
  const auto start = static_cast<Index>(rng.integer(0, x.rows() - width));
  return apply_window_slice(x, start, width);
}

/// Normalized cumulative warp: tau(0) = 0, tau(t) = tau(t-1) + rate(t), rescaled so that
/// tau(T-1) = T-1. Requires rate(t) > 0 for t >= 1.
inline std::vector<double> warp_from_rates(const std::vector<double>& rates) {
  const std::size_t n = rates.size();
  std::vector<double> tau(n, 0.0);
  for (std::size_t t = 1; t < n; ++t) {
    if (!(rates[t] > 0.0)) throw ConstraintError("time_warp: non-positive warp rate");
    tau[t] = tau[t - 1] + rates[t];
  }
  if (n < 2) return tau;
  const double total = tau[n - 1];
  const double last = static_cast<double>(n - 1);
  for (std::size_t t = 1; t + 1 < n; ++t) tau[t] = tau[t] * last / total;
  tau[n - 1] = last;
  return tau;
}

/// Output at step t reads x at tau^-1(t) (piecewise-linear inverse of the increasing warp).
template <typename Derived>
Series<typename Derived::Scalar> apply_time_warp(const Eigen::MatrixBase<Derived>& x,
                                                 const std::vector<double>& tau) {
  const Index n = x.rows();
  if (static_cast<Index>(tau.size()) != n) throw ArgumentError("time_warp: warp length mismatch");
  Series<typename Derived::Scalar> out(n, x.cols());
  std::size_t seg = 0;
  for (Index t = 0; t < n; ++t) {
    const double target = static_cast<double>(t);
    while (seg + 2 < tau.size() && tau[seg + 1] <= target) ++seg;
    double source;
    if (n == 1 || target <= tau[seg]) {
      source = static_cast<double>(seg);
    } else {
      const double frac = (target - tau[seg]) / (tau[seg + 1] - tau[seg]);
      source = frac >= 1.0 ? static_cast<double>(seg + 1) : static_cast<double>(seg) + frac;
    }
    out.row(t) = sample_linear(x, source);
  }
  return out;
}

/// Draws a strictly increasing warp from a spline rate curve; redraws on non-positive rates.
inline std::vector<double> draw_time_warp(Index length, const TransformParams& params, Rng& rng) {
  if (length < 2) return std::vector<double>(static_cast<std::size_t>(length), 0.0);
  for (int attempt = 0; attempt < kTimeWarpRetries; ++attempt) {
    const Knots knots = draw_knots(params.timewarp_knots, length, params.timewarp_sigma, false, rng);
    const auto rates = spline_curve(knots, length);
    if (std::all_of(rates.begin() + 1, rates.end(), [](double r) { return r > 0.0; }))
      return warp_from_rates(rates);
  }
  throw ConstraintError("time_warp: could not draw a positive warp rate in " +
                        std::to_string(kTimeWarpRetries) + " attempts (sigma too large)");
}

template <typename Derived>
Series<typename Derived::Scalar> time_warp(const Eigen::MatrixBase<Derived>& x,
                                           const TransformParams& params, Rng& rng) {
  return apply_time_warp(x, draw_time_warp(x.rows(), params, rng));
}

/// Resamples rows [start, start + width) by `factor`, then restores the full length.
template <typename Derived>
Series<typename Derived::Scalar> apply_window_warp(const Eigen::MatrixBase<Derived>& x, Index start,
                                                   Index width, double factor) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.rows();
  if (width < 2) throw ConstraintError("window_warp: window shorter than 2 steps");
  if (start < 0 || start + width > n) throw ArgumentError("window_warp: window out of range");
  if (!(factor > 0.0)) throw ArgumentError("window_warp: scale must be positive");
  const Index warped_len = std::max<Index>(2, std::lround(factor * static_cast<double>(width)));
  const Series<Scalar> warped = resample_linear(x.middleRows(start, width), warped_len);
  const Index tail = n - start - width;
  Series<Scalar> joined(start + warped_len + tail, x.cols());
  joined.topRows(start) = x.topRows(start);
  joined.middleRows(start, warped_len) = warped;
  joined.bottomRows(tail) = x.bottomRows(tail);
  return resample_linear(joined, n);
}

template <typename Derived>
Series<typename Derived::Scalar> window_warp(const Eigen::MatrixBase<Derived>& x,
                                             const TransformParams& params, Rng& rng) {
  if (!(params.windowwarp_ratio > 0.0 && params.windowwarp_ratio < 1.0))
    throw ArgumentError("window_warp: ratio must lie in (0, 1)");
  if (params.windowwarp_scales.empty()) throw ArgumentError("window_warp: no scales given");
  const auto width = static_cast<Index>(std::lround(params.windowwarp_ratio * static_cast<double>(x.rows())));
  if (width < 2)
    throw ConstraintError("window_warp: window of " + std::to_string(width) +
                          " steps is shorter than 2 (series length " + std::to_string(x.rows()) + ")");
  const auto start = static_cast<Index>(rng.integer(0, x.rows() - width));
  const double factor = params.windowwarp_scales[rng.index(params.windowwarp_scales.size())];
  return apply_window_warp(x, start, width, factor);
}

}  // namespace tsaug
