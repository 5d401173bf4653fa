#pragma once

// Constrained dynamic time warping under the symmetric (1, 2, 1) step pattern.
//
// Accumulated cost:
//   D(0,0)   = 2 d(0,0)
//   D(i,j)   = min(D(i-1,j-1) + 2 d(i,j), D(i-1,j) + d(i,j), D(i,j-1) + d(i,j))
// restricted to the Sakoe-Chiba band |i - j| <= w.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsaug/errors.hpp"
#include "tsaug/numerics.hpp"

namespace tsaug {

enum class LocalCost {
  euclidean,          ///< ||x_i - y_j||
  squared_euclidean,  ///< ||x_i - y_j||^2 (barycenter averaging)
};

struct DtwConfig {
  /// Band half-width as a fraction of the longer series.
  double window_fraction = 0.1;
  /// shapeDTW descriptor length (odd). Only read by shape_dtw.
  Index descriptor_len = 5;
  LocalCost cost = LocalCost::euclidean;
};

using IndexPair = std::pair<Index, Index>;
using WarpingPath = std::vector<IndexPair>;

template <typename Scalar>
struct DtwResult {
  Scalar distance;
  WarpingPath path;
};

/// max(ceil(window_fraction * max(n, m)), |n - m|): the widened band always admits a path.
inline Index effective_window(const DtwConfig& cfg, Index n, Index m) {
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction <= 1.0))
    throw ArgumentError("dtw: window_fraction must lie in (0, 1]");
  const auto band = static_cast<Index>(std::ceil(cfg.window_fraction * static_cast<double>(std::max(n, m))));
  return std::max(band, std::abs(n - m));
}

/// Checks the warping-path invariants: endpoints, unit monotone steps and the band.
inline bool is_valid_path(const WarpingPath& path, Index n, Index m, Index window) {
  if (path.empty() || path.front() != IndexPair{0, 0} || path.back() != IndexPair{n - 1, m - 1})
    return false;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto [i, j] = path[k];
    if (std::abs(i - j) > window || i < 0 || j < 0 || i >= n || j >= m) return false;
    if (k == 0) continue;
    const Index di = i - path[k - 1].first;
    const Index dj = j - path[k - 1].second;
    if (di < 0 || di > 1 || dj < 0 || dj > 1 || (di == 0 && dj == 0)) return false;
  }
  return true;
}

/// Step multiplicity of path element k under the symmetric pattern: 2 for the start cell and
/// diagonal steps, 1 for horizontal and vertical steps.
inline int step_weight(const WarpingPath& path, std::size_t k) {
  if (k == 0) return 2;
  const bool diagonal =
      path[k].first != path[k - 1].first && path[k].second != path[k - 1].second;
  return diagonal ? 2 : 1;
}

namespace detail {

template <typename DerivedX, typename DerivedY>
auto local_cost(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                Index i, Index j, LocalCost kind) {
  using Scalar = typename DerivedX::Scalar;
  Scalar sq;
  if (x.cols() == 1) {
    const Scalar diff = x(i, 0) - y(j, 0);
    if (kind == LocalCost::euclidean) return static_cast<Scalar>(std::abs(diff));
    sq = diff * diff;
  } else {
    sq = (x.row(i) - y.row(j)).squaredNorm();
  }
  return kind == LocalCost::euclidean ? static_cast<Scalar>(std::sqrt(sq)) : sq;
}

#ifdef TSAUG_CHECK_PATHS
inline void check_path(const WarpingPath& path, Index n, Index m, Index window) {
  if (!is_valid_path(path, n, m, window)) throw std::logic_error("dtw: invalid warping path");
}
#endif

/// Accumulated cost over the rectangle [from, to] inside the band. With weigh_start the start
/// cell contributes 2 d(from); otherwise it contributes nothing (suffix of a forced path).
template <typename DerivedX, typename DerivedY>
Series<typename DerivedX::Scalar> accumulate(const Eigen::MatrixBase<DerivedX>& x,
                                             const Eigen::MatrixBase<DerivedY>& y, Index window,
                                             IndexPair from, IndexPair to, bool weigh_start,
                                             LocalCost kind) {
  using Scalar = typename DerivedX::Scalar;
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  const Index rows = to.first - from.first + 1;
  const Index cols = to.second - from.second + 1;
  Series<Scalar> acc = Series<Scalar>::Constant(rows, cols, inf);
  for (Index r = 0; r < rows; ++r) {
    const Index i = from.first + r;
    const Index j_lo = std::max(from.second, i - window);
    const Index j_hi = std::min(to.second, i + window);
    for (Index j = j_lo; j <= j_hi; ++j) {
      const Index c = j - from.second;
      const Scalar d = local_cost(x, y, i, j, kind);
      if (r == 0 && c == 0) {
        acc(0, 0) = weigh_start ? Scalar(2) * d : Scalar(0);
        continue;
      }
      Scalar best = inf;
      if (r > 0 && c > 0) best = acc(r - 1, c - 1) + Scalar(2) * d;
      if (r > 0) best = std::min(best, acc(r - 1, c) + d);
      if (c > 0) best = std::min(best, acc(r, c - 1) + d);
      acc(r, c) = best;
    }
  }
  return acc;
}

/// Backtracks from `to` to `from`; ties prefer diagonal, then vertical (i - 1), then horizontal.
template <typename DerivedX, typename DerivedY, typename Scalar>
WarpingPath backtrack(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                      const Series<Scalar>& acc, IndexPair from, IndexPair to, LocalCost kind) {
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  WarpingPath path;
  path.reserve(static_cast<std::size_t>(acc.rows() + acc.cols()));
  Index r = acc.rows() - 1;
  Index c = acc.cols() - 1;
  path.emplace_back(to);
  while (r > 0 || c > 0) {
    const Scalar d = local_cost(x, y, from.first + r, from.second + c, kind);
    Scalar best = inf;
    int move = -1;
    if (r > 0 && c > 0 && acc(r - 1, c - 1) + Scalar(2) * d < best) {
      best = acc(r - 1, c - 1) + Scalar(2) * d;
      move = 0;
    }
    if (r > 0 && acc(r - 1, c) + d < best) {
      best = acc(r - 1, c) + d;
      move = 1;
    }
    if (c > 0 && acc(r, c - 1) + d < best) {
      best = acc(r, c - 1) + d;
      move = 2;
    }
    if (move == 0) {
      --r;
      --c;
    } else if (move == 1) {
      --r;
    } else if (move == 2) {
      --c;
    } else {
      throw ConstraintError("dtw: no band-feasible path");
    }
    path.emplace_back(from.first + r, from.second + c);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

template <typename DerivedX, typename DerivedY>
void check_inputs(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  if (x.rows() < 1 || y.rows() < 1) throw ArgumentError("dtw: empty series");
  if (x.cols() != y.cols())
    throw DimensionError("dtw: channel counts differ (" + std::to_string(x.cols()) + " vs " +
                         std::to_string(y.cols()) + ")");
}

}  // namespace detail

/// Cost of an explicit path under the symmetric weights.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar path_cost(const Eigen::MatrixBase<DerivedX>& x,
                                    const Eigen::MatrixBase<DerivedY>& y, const WarpingPath& path,
                                    LocalCost kind = LocalCost::euclidean) {
  typename DerivedX::Scalar total(0);
  for (std::size_t k = 0; k < path.size(); ++k)
    total += step_weight(path, k) * detail::local_cost(x, y, path[k].first, path[k].second, kind);
  return total;
}

/// Optimal constrained DTW distance and warping path.
template <typename DerivedX, typename DerivedY>
DtwResult<typename DerivedX::Scalar> dtw(const Eigen::MatrixBase<DerivedX>& x,
                                         const Eigen::MatrixBase<DerivedY>& y,
                                         const DtwConfig& cfg) {
  detail::check_inputs(x, y);
  const Index n = x.rows(), m = y.rows();
  const Index w = effective_window(cfg, n, m);
  const IndexPair from{0, 0}, to{n - 1, m - 1};
  const auto acc = detail::accumulate(x, y, w, from, to, true, cfg.cost);
  DtwResult<typename DerivedX::Scalar> result{acc(n - 1, m - 1),
                                              detail::backtrack(x, y, acc, from, to, cfg.cost)};
#ifdef TSAUG_CHECK_PATHS
  detail::check_path(result.path, n, m, w);
#endif
  return result;
}

/// DTW distance only (two rolling rows, no path).
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar dtw_distance(const Eigen::MatrixBase<DerivedX>& x,
                                       const Eigen::MatrixBase<DerivedY>& y,
                                       const DtwConfig& cfg) {
  using Scalar = typename DerivedX::Scalar;
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  detail::check_inputs(x, y);
  const Index n = x.rows(), m = y.rows();
  const Index w = effective_window(cfg, n, m);
  std::vector<Scalar> prev(static_cast<std::size_t>(m), inf), cur(static_cast<std::size_t>(m), inf);
  for (Index i = 0; i < n; ++i) {
    std::fill(cur.begin(), cur.end(), inf);
    const Index j_lo = std::max<Index>(0, i - w);
    const Index j_hi = std::min(m - 1, i + w);
    for (Index j = j_lo; j <= j_hi; ++j) {
      const Scalar d = detail::local_cost(x, y, i, j, cfg.cost);
      const auto uj = static_cast<std::size_t>(j);
      if (i == 0 && j == 0) {
        cur[0] = Scalar(2) * d;
        continue;
      }
      Scalar best = inf;
      if (i > 0 && j > 0) best = prev[uj - 1] + Scalar(2) * d;
      if (i > 0) best = std::min(best, prev[uj] + d);
      if (j > 0) best = std::min(best, cur[uj - 1] + d);
      cur[uj] = best;
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m - 1)];
}

/// Suboptimal DTW whose path is forced through `point`: the optimal prefix path to the point
/// joined with the optimal suffix path from it; the distance is the cost of that joined path.
template <typename DerivedX, typename DerivedY>
DtwResult<typename DerivedX::Scalar> dtw_forced_point(const Eigen::MatrixBase<DerivedX>& x,
                                                      const Eigen::MatrixBase<DerivedY>& y,
                                                      const DtwConfig& cfg, IndexPair point) {
  detail::check_inputs(x, y);
  const Index n = x.rows(), m = y.rows();
  const Index w = effective_window(cfg, n, m);
  const auto [pi, pj] = point;
  if (pi < 0 || pj < 0 || pi >= n || pj >= m || std::abs(pi - pj) > w)
    throw ConstraintError("dtw_forced_point: point (" + std::to_string(pi) + ", " +
                          std::to_string(pj) + ") is outside the warping band");
  const IndexPair origin{0, 0}, end{n - 1, m - 1};
  const auto head = detail::accumulate(x, y, w, origin, point, true, cfg.cost);
  const auto tail = detail::accumulate(x, y, w, point, end, false, cfg.cost);
  auto path = detail::backtrack(x, y, head, origin, point, cfg.cost);
  const auto rest = detail::backtrack(x, y, tail, point, end, cfg.cost);
  path.insert(path.end(), rest.begin() + 1, rest.end());
  DtwResult<typename DerivedX::Scalar> result{path_cost(x, y, path, cfg.cost), std::move(path)};
#ifdef TSAUG_CHECK_PATHS
  detail::check_path(result.path, n, m, w);
#endif
  return result;
}

/// shapeDTW descriptors: row i holds the length-`len` raw subsequence centred at i (edges
/// replicated), flattened channel by channel.
template <typename Derived>
Series<typename Derived::Scalar> shape_descriptors(const Eigen::MatrixBase<Derived>& x, Index len) {
  if (len < 1 || len % 2 == 0) throw ArgumentError("shape_dtw: descriptor length must be odd and positive");
  const Index n = x.rows(), dims = x.cols(), half = len / 2;
  Series<typename Derived::Scalar> out(n, len * dims);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < len; ++k) {
      const Index src = std::clamp(i - half + k, Index{0}, n - 1);
      for (Index c = 0; c < dims; ++c) out(i, c * len + k) = x(src, c);
    }
  return out;
}

/// DTW whose local cost compares subsequence descriptors instead of single samples.
template <typename DerivedX, typename DerivedY>
DtwResult<typename DerivedX::Scalar> shape_dtw(const Eigen::MatrixBase<DerivedX>& x,
                                               const Eigen::MatrixBase<DerivedY>& y,
                                               const DtwConfig& cfg) {
  detail::check_inputs(x, y);
  return dtw(shape_descriptors(x, cfg.descriptor_len), shape_descriptors(y, cfg.descriptor_len), cfg);
}

template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar shape_dtw_distance(const Eigen::MatrixBase<DerivedX>& x,
                                             const Eigen::MatrixBase<DerivedY>& y,
                                             const DtwConfig& cfg) {
  detail::check_inputs(x, y);
  return dtw_distance(shape_descriptors(x, cfg.descriptor_len),
                      shape_descriptors(y, cfg.descriptor_len), cfg);
}

}  // namespace tsaug
