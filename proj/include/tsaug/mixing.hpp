#pragma once

// Pattern-mixing augmentations built on DTW alignment.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "tsaug/dtw.hpp"
#include "tsaug/errors.hpp"
#include "tsaug/numerics.hpp"
#include "tsaug/random.hpp"

namespace tsaug {

enum class SpawnerNoise {
  relative,  ///< std = sigma * |a_i - b_j| along the path
  absolute,  ///< std = sigma
};

struct MixingParams {
  double spawner_sigma = 0.5;
  SpawnerNoise spawner_noise = SpawnerNoise::relative;
  double dtw_window = 0.1;
  Index dba_iterations = 10;
  Index wdba_neighbors = 5;  ///< nearest same-class neighbours averaged with the reference; 0 = whole class
  Index dgw_batch = 6;
  bool use_shape_dtw_for_dgw = true;
  Index descriptor_len = 5;

  DtwConfig dtw_config() const {
    if (!(dtw_window > 0.0 && dtw_window <= 1.0)) throw ArgumentError("dtw_window must lie in (0, 1]");
    DtwConfig cfg;
    cfg.window_fraction = dtw_window;
    cfg.descriptor_len = descriptor_len;
    return cfg;
  }
};

/// Output of a mixing method; `fallback` marks that the method could not mix and returned
/// the reference unchanged.
template <typename Scalar>
struct MixResult {
  Series<Scalar> series;
  bool fallback = false;
};

// ---------------------------------------------------------------------------
// SPAWNER

template <typename Scalar>
struct SpawnerDetail {
  Series<Scalar> series;
  IndexPair forced_point;
  DtwResult<Scalar> alignment;
};

/// Averages a and b along the DTW path forced through `point`, resamples to a's length and
/// adds noise drawn from rng (sigma = 0 disables it).
template <typename DerivedA, typename DerivedB>
SpawnerDetail<typename DerivedA::Scalar> spawner_through(const Eigen::MatrixBase<DerivedA>& a,
                                                         const Eigen::MatrixBase<DerivedB>& b,
                                                         IndexPair point, const MixingParams& params,
                                                         Rng& rng) {
  using Scalar = typename DerivedA::Scalar;
  if (params.spawner_sigma < 0.0) throw ArgumentError("spawner: sigma must be non-negative");
  auto alignment = dtw_forced_point(a, b, params.dtw_config(), point);
  const auto steps = static_cast<Index>(alignment.path.size());
  Series<Scalar> mean(steps, a.cols());
  Series<Scalar> spread(steps, a.cols());
  for (Index k = 0; k < steps; ++k) {
    const auto [i, j] = alignment.path[static_cast<std::size_t>(k)];
    mean.row(k) = Scalar(0.5) * (a.row(i) + b.row(j));
    spread.row(k) = (a.row(i) - b.row(j)).cwiseAbs();
  }
  Series<Scalar> out = resample_linear(mean, a.rows());
  if (params.spawner_sigma > 0.0) {
    const Series<Scalar> local = params.spawner_noise == SpawnerNoise::relative
                                     ? resample_linear(spread, a.rows())
                                     : Series<Scalar>::Ones(a.rows(), a.cols());
    for (Index c = 0; c < out.cols(); ++c)
      for (Index t = 0; t < out.rows(); ++t)
        out(t, c) += static_cast<Scalar>(rng.normal(0.0, params.spawner_sigma * static_cast<double>(local(t, c))));
  }
  return {std::move(out), point, std::move(alignment)};
}

/// Uniform band-feasible forced point: i uniform over a, j uniform within the band around i.
inline IndexPair draw_forced_point(Index n, Index m, Index window, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto i = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));
    const Index lo = std::max<Index>(0, i - window);
    const Index hi = std::min(m - 1, i + window);
    if (lo > hi) continue;
    return {i, static_cast<Index>(rng.integer(lo, hi))};
  }
  throw ConstraintError("spawner: no band-feasible forced point");
}

template <typename DerivedA, typename DerivedB>
SpawnerDetail<typename DerivedA::Scalar> spawner_detail(const Eigen::MatrixBase<DerivedA>& a,
                                                        const Eigen::MatrixBase<DerivedB>& b,
                                                        const MixingParams& params, Rng& rng) {
  detail::check_inputs(a, b);
  const Index window = effective_window(params.dtw_config(), a.rows(), b.rows());
  const IndexPair point = draw_forced_point(a.rows(), b.rows(), window, rng);
  return spawner_through(a, b, point, params, rng);
}

template <typename DerivedA, typename DerivedB>
Series<typename DerivedA::Scalar> spawner(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b,
                                          const MixingParams& params, Rng& rng) {
  return spawner_detail(a, b, params, rng).series;
}

// ---------------------------------------------------------------------------
// DTW barycenter averaging

/// Alignment used inside barycenter averaging: squared Euclidean local cost, so that the
/// step-weighted mean is the exact minimizer for a fixed set of paths.
inline DtwConfig barycenter_config(DtwConfig cfg) {
  cfg.cost = LocalCost::squared_euclidean;
  return cfg;
}

/// Weighted barycenter cost sum_s w_s DTW(centroid, s) under the barycenter alignment.
template <typename Scalar>
double barycenter_cost(const Series<Scalar>& centroid, std::span<const Series<Scalar>> seeds,
                       std::span<const double> weights, const DtwConfig& cfg) {
  const DtwConfig bcfg = barycenter_config(cfg);
  double total = 0.0;
  for (std::size_t s = 0; s < seeds.size(); ++s)
    if (weights[s] > 0.0) total += weights[s] * static_cast<double>(dtw_distance(centroid, seeds[s], bcfg));
  return total;
}

/// Weighted DBA. The centroid starts at the highest-weight seed (first on ties); every
/// iteration aligns each seed to the centroid and replaces each centroid element by the mean of
/// the seed elements matched to it, weighted by seed weight times step multiplicity.
/// If `costs` is given, it receives the barycenter cost before the first and after every
/// iteration.
template <typename Scalar>
Series<Scalar> dba(std::span<const Series<Scalar>> seeds, std::span<const double> weights,
                   Index iterations, const DtwConfig& cfg, std::vector<double>* costs = nullptr) {
  if (seeds.empty()) throw ArgumentError("dba: empty seed list");
  if (weights.size() != seeds.size()) throw ArgumentError("dba: one weight per seed required");
  if (iterations < 0) throw ArgumentError("dba: negative iteration count");
  for (double w : weights)
    if (!(w >= 0.0)) throw ArgumentError("dba: weights must be non-negative");
  for (const auto& s : seeds)
    if (s.cols() != seeds[0].cols()) throw DimensionError("dba: seeds differ in channel count");

  const auto init = static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) - weights.begin());
  Series<Scalar> centroid = seeds[init];
  const DtwConfig bcfg = barycenter_config(cfg);
  if (costs) costs->assign(1, barycenter_cost(centroid, seeds, weights, cfg));

  for (Index it = 0; it < iterations; ++it) {
    Series<Scalar> sums = Series<Scalar>::Zero(centroid.rows(), centroid.cols());
    Eigen::VectorXd mass = Eigen::VectorXd::Zero(centroid.rows());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      if (weights[s] <= 0.0) continue;
      const auto path = dtw(centroid, seeds[s], bcfg).path;
      for (std::size_t k = 0; k < path.size(); ++k) {
        const double m = weights[s] * step_weight(path, k);
        sums.row(path[k].first) += static_cast<Scalar>(m) * seeds[s].row(path[k].second);
        mass(path[k].first) += m;
      }
    }
    for (Index i = 0; i < centroid.rows(); ++i)
      if (mass(i) > 0.0) centroid.row(i) = sums.row(i) / static_cast<Scalar>(mass(i));
    if (costs) costs->push_back(barycenter_cost(centroid, seeds, weights, cfg));
  }
  return centroid;
}

/// ASD weight: halves at the nearest-neighbour distance. A zero nearest-neighbour distance
/// gives weight 1 to exact matches and 0 to everything else.
inline double asd_weight(double distance, double nearest) {
  if (nearest <= 0.0) return distance <= 0.0 ? 1.0 : 0.0;
  return std::exp(std::log(0.5) * distance / nearest);
}

/// Weighted DBA around series[ref] and its nearest same-class neighbours (all of the class when
/// wdba_neighbors is 0), with distance-based (ASD) weights.
template <typename Scalar>
MixResult<Scalar> wdba_asd(std::span<const Series<Scalar>> series, std::span<const int> labels,
                           std::size_t ref, const MixingParams& params) {
  if (series.size() != labels.size()) throw ArgumentError("wdba: series/labels size mismatch");
  if (ref >= series.size()) throw ArgumentError("wdba: reference index out of range");
  const DtwConfig cfg = params.dtw_config();

  std::vector<std::pair<double, std::size_t>> neighbours;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (s == ref || labels[s] != labels[ref]) continue;
    neighbours.emplace_back(static_cast<double>(dtw_distance(series[ref], series[s], cfg)), s);
  }
  if (neighbours.empty()) return {series[ref], true};
  std::sort(neighbours.begin(), neighbours.end());
  if (params.wdba_neighbors > 0 && neighbours.size() > static_cast<std::size_t>(params.wdba_neighbors))
    neighbours.resize(static_cast<std::size_t>(params.wdba_neighbors));

  // Reference first so it wins the initialization tie at weight 1.
  const double nearest = neighbours.front().first;
  std::vector<Series<Scalar>> members{series[ref]};
  std::vector<double> weights{1.0};
  for (const auto& [distance, s] : neighbours) {
    members.push_back(series[s]);
    weights.push_back(asd_weight(distance, nearest));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= total;

  return {dba<Scalar>(members, weights, params.dba_iterations, cfg), false};
}

// ---------------------------------------------------------------------------
// Guided warping

/// Warps ref onto the teacher's time axis along the given alignment (pairs are
/// (teacher step, ref step)), then resamples to ref's length.
template <typename Derived>
Series<typename Derived::Scalar> warp_along(const Eigen::MatrixBase<Derived>& ref,
                                            Index teacher_length, const WarpingPath& path) {
  using Scalar = typename Derived::Scalar;
  Series<Scalar> sums = Series<Scalar>::Zero(teacher_length, ref.cols());
  std::vector<Index> counts(static_cast<std::size_t>(teacher_length), 0);
  for (const auto& [j, i] : path) {
    sums.row(j) += ref.row(i);
    ++counts[static_cast<std::size_t>(j)];
  }
  for (Index j = 0; j < teacher_length; ++j) sums.row(j) /= static_cast<Scalar>(counts[static_cast<std::size_t>(j)]);
  if (teacher_length == ref.rows()) return sums;
  return resample_linear(sums, ref.rows());
}

/// Random guided warping step: ref's elements warped to the teacher's time steps.
template <typename DerivedR, typename DerivedT>
Series<typename DerivedR::Scalar> rgw(const Eigen::MatrixBase<DerivedR>& ref,
                                      const Eigen::MatrixBase<DerivedT>& teacher, const DtwConfig& cfg,
                                      bool use_shape_dtw = false) {
  const auto alignment = use_shape_dtw ? shape_dtw(teacher, ref, cfg) : dtw(teacher, ref, cfg);
  return warp_along(ref, teacher.rows(), alignment.path);
}

/// Picks the positive maximizing mean distance to negatives minus mean distance to the other
/// positives. Candidates are taken in ascending index order, so the result does not depend on
/// the order they are listed in; ties go to the smallest index.
template <typename Scalar>
std::size_t select_dgw_teacher(std::span<const Series<Scalar>> series, std::vector<std::size_t> positives,
                               std::vector<std::size_t> negatives, const MixingParams& params) {
  if (positives.empty() || negatives.empty())
    throw ConstraintError("dgw: needs at least one same-class and one other-class candidate");
  std::sort(positives.begin(), positives.end());
  std::sort(negatives.begin(), negatives.end());
  const DtwConfig cfg = params.dtw_config();
  const auto distance = [&](std::size_t a, std::size_t b) {
    return static_cast<double>(params.use_shape_dtw_for_dgw ? shape_dtw_distance(series[a], series[b], cfg)
                                                            : dtw_distance(series[a], series[b], cfg));
  };

  std::size_t best = positives.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t p : positives) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t q : positives)
      if (q != p) pos += distance(p, q);
    if (positives.size() > 1) pos /= static_cast<double>(positives.size() - 1);
    for (std::size_t q : negatives) neg += distance(p, q);
    neg /= static_cast<double>(negatives.size());
    if (neg - pos > best_score) {
      best_score = neg - pos;
      best = p;
    }
  }
  return best;
}

/// Discriminative guided warping of series[ref]. The batch is the reference plus up to batch - 1
/// same-class candidates; as many other-class candidates are drawn, capped by availability. The
/// most discriminative same-class candidate becomes the teacher the reference is warped onto.
template <typename Scalar>
MixResult<Scalar> dgw(std::span<const Series<Scalar>> series, std::span<const int> labels,
                      std::size_t ref, const MixingParams& params, Rng& rng) {
  if (series.size() != labels.size()) throw ArgumentError("dgw: series/labels size mismatch");
  if (ref >= series.size()) throw ArgumentError("dgw: reference index out of range");
  if (params.dgw_batch < 2) throw ArgumentError("dgw: batch must be at least 2");
  std::vector<std::size_t> same, other;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (s == ref) continue;
    (labels[s] == labels[ref] ? same : other).push_back(s);
  }
  if (same.empty() || other.empty()) return {series[ref], true};

  const auto sample = [&rng](std::vector<std::size_t> pool, std::size_t k) {
    k = std::min(k, pool.size());
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
    pool.resize(k);
    return pool;
  };
  const auto batch = static_cast<std::size_t>(params.dgw_batch);
  auto positives = sample(std::move(same), batch - 1);
  auto negatives = sample(std::move(other), batch - 1);

  const std::size_t teacher = select_dgw_teacher<Scalar>(series, positives, negatives, params);
  return {rgw(series[ref], series[teacher], params.dtw_config(), params.use_shape_dtw_for_dgw), false};
}

}  // namespace tsaug
