#pragma once

#include <functional>
#include <vector>

#include "chainfountain/types.hpp"

namespace chainfountain {

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Rect {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

using ScalarField = std::function<double(double x, double y)>;

/// Zero level set of `field` over `domain`, sampled on a resolution x resolution
/// cell grid (marching squares; saddles resolved by the cell-centre value).
/// Every crossing point is located on its cell edge by bisection to machine
/// precision. Segments are chained into polylines; open polylines start on the
/// domain boundary when they touch it.
std::vector<std::vector<Vec2>> trace_zero_level(const ScalarField& field, const Rect& domain,
                                                int resolution, bool parallel = true);

/// Root of `field` on the segment [a, b] given opposite (or zero) end values.
Vec2 bisect_segment(const ScalarField& field, Vec2 a, Vec2 b, double fa, double fb);

}  // namespace chainfountain
