#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "tsaug/errors.hpp"

namespace tsaug {

using Index = Eigen::Index;

/// A time series: T rows (time steps) by D columns (channels).
template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using TimeSeries = Series<double>;

/// Reads x at a fractional time index by linear interpolation between neighbouring rows.
/// Integer positions return the stored row exactly.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> sample_linear(
    const Eigen::MatrixBase<Derived>& x, double position) {
  using Scalar = typename Derived::Scalar;
  const Index last = x.rows() - 1;
  position = std::clamp(position, 0.0, static_cast<double>(last));
  const auto lo = static_cast<Index>(std::floor(position));
  const double frac = position - static_cast<double>(lo);
  if (frac == 0.0 || lo >= last) return x.row(lo);
  return x.row(lo) + static_cast<Scalar>(frac) * (x.row(lo + 1) - x.row(lo));
}

/// Piecewise-linear resampling to new_length uniformly spaced fractional indices.
/// Endpoints are preserved exactly; new_length == rows is the identity.
template <typename Derived>
Series<typename Derived::Scalar> resample_linear(const Eigen::MatrixBase<Derived>& x,
                                                 Index new_length) {
  if (new_length < 1) throw ArgumentError("resample_linear: new_length must be >= 1");
  if (x.rows() < 1) throw ArgumentError("resample_linear: empty series");
  Series<typename Derived::Scalar> out(new_length, x.cols());
  const Index span = x.rows() - 1;
  for (Index k = 0; k < new_length; ++k) {
    const double position =
        new_length == 1 ? 0.0
                        : static_cast<double>(k * span) / static_cast<double>(new_length - 1);
    out.row(k) = sample_linear(x, position);
  }
  return out;
}

/// Spline control points: strictly increasing positions and their heights.
struct Knots {
  std::vector<double> positions;
  std::vector<double> heights;
};

/// count knot positions evenly spaced over [0, last] (both endpoints included).
inline std::vector<double> even_knot_positions(Index count, double last) {
  if (count < 2) throw ArgumentError("even_knot_positions: need at least two knots");
  std::vector<double> positions(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i)
    positions[static_cast<std::size_t>(i)] = last * static_cast<double>(i) / static_cast<double>(count - 1);
  positions.back() = last;
  return positions;
}

/// Natural cubic spline (zero second derivative at both ends) through a set of knots.
class NaturalCubicSpline {
 public:
  explicit NaturalCubicSpline(Knots knots) : knots_(std::move(knots)) {
    const auto& p = knots_.positions;
    const auto& y = knots_.heights;
    const std::size_t n = p.size();
    if (n < 2 || y.size() != n)
      throw ArgumentError("NaturalCubicSpline: need >= 2 knots with one height each");
    for (std::size_t i = 1; i < n; ++i)
      if (!(p[i] > p[i - 1]))
        throw ArgumentError("NaturalCubicSpline: knot positions must be strictly increasing");

    // Tridiagonal system for the second-derivative coefficients c, c[0] = c[n-1] = 0.
    c_.assign(n, 0.0);
    if (n > 2) {
      const std::size_t m = n - 2;
      std::vector<double> diag(m), upper(m), rhs(m);
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double h0 = p[i] - p[i - 1];
        const double h1 = p[i + 1] - p[i];
        diag[k] = 2.0 * (h0 + h1);
        upper[k] = h1;
        rhs[k] = 3.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
      }
      // Thomas algorithm; the lower diagonal at row k equals upper[k-1].
      for (std::size_t k = 1; k < m; ++k) {
        const double w = upper[k - 1] / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
      }
      c_[m] = rhs[m - 1] / diag[m - 1];
      for (std::size_t k = m - 1; k-- > 0;) c_[k + 1] = (rhs[k] - upper[k] * c_[k + 2]) / diag[k];
    }
    b_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = p[i + 1] - p[i];
      b_[i] = (y[i + 1] - y[i]) / h - h * (2.0 * c_[i] + c_[i + 1]) / 3.0;
      d_[i] = (c_[i + 1] - c_[i]) / (3.0 * h);
    }
  }

  const Knots& knots() const noexcept { return knots_; }

  double operator()(double u) const {
    const auto& p = knots_.positions;
    if (!(u >= p.front() && u <= p.back()))
      throw DomainError("cubic spline: query outside the knot span");
    if (u == p.back()) return knots_.heights.back();
    const auto seg = static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), u) - p.begin()) - 1;
    const double dx = u - p[seg];
    return knots_.heights[seg] + dx * (b_[seg] + dx * (c_[seg] + dx * d_[seg]));
  }

 private:
  Knots knots_;
  std::vector<double> b_, c_, d_;
};

/// Natural cubic spline through knots, evaluated at each query point.
/// Throws DomainError for queries outside [positions.front(), positions.back()].
inline std::vector<double> cubic_spline_eval(const Knots& knots, std::span<const double> queries) {
  const NaturalCubicSpline spline(knots);
  std::vector<double> out;
  out.reserve(queries.size());
  for (double q : queries) out.push_back(spline(q));
  return out;
}

/// Spline evaluated at every integer index 0..length-1.
inline std::vector<double> spline_curve(const Knots& knots, Index length) {
  const NaturalCubicSpline spline(knots);
  std::vector<double> out(static_cast<std::size_t>(length));
  for (Index t = 0; t < length; ++t) out[static_cast<std::size_t>(t)] = spline(static_cast<double>(t));
  return out;
}

}  // namespace tsaug
