#pragma once

// SVG figures of 2D scenes. Regions are drawn as marching-squares contours of
// the membership margin sampled on a square grid.

#include "mplank/scene.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace mplank {

struct Viewport {
  double x0 = -1.5, y0 = -1.5, size = 3.0;
};

/// Square window around everything the scene draws; [-1.5, 1.5]^2 for an empty scene.
Viewport scene_viewport(const Scene& s);

/// Node values of f on a (resolution + 1)^2 grid over the viewport, row-major from (x0, y0).
struct ScalarField {
  Viewport view;
  int resolution = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * (resolution + 1) + i]; }
};

ScalarField sample_field(const Viewport& view, int resolution, const std::function<double(const Point&)>& f);

using Segment = std::array<double, 4>;  // x1 y1 x2 y2 in world coordinates

/// Zero level set of the field; saddles are resolved by the cell-center average.
std::vector<Segment> marching_squares(const ScalarField& field);

/// Number of 4-connected components of grid nodes with value > 0 (positive)
/// or <= 0 (otherwise).
int field_components(const ScalarField& field, bool positive);

struct RenderOptions {
  int resolution = 512;
  bool strata = false;
  bool closed = false;
};

/// Throws std::invalid_argument for scenes that are not 2D.
std::string render_svg(const Scene& s, const RenderOptions& opt = {});

}  // namespace mplank
