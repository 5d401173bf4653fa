#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tsaug/numerics.hpp"

namespace tsaug {

/// One overlay panel: the original (dotted blue) and a generated pattern (solid red).
struct OverlayPanel {
  std::string title;
  TimeSeries original;
  TimeSeries generated;
};

/// Stacked overlay panels, exactly two polylines per panel (first channel only).
std::string overlay_svg(const std::vector<OverlayPanel>& panels);

/// 2-D scatter: solid markers for originals, hollow markers for generated points, one colour per
/// class. `points` is N x 2.
std::string scatter_svg(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                        const std::vector<bool>& generated, const std::string& title);

}  // namespace tsaug
