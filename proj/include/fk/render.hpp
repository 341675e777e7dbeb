#pragma once

#include <optional>
#include <span>
#include <string>

#include "fk/geometry.hpp"

namespace fk {

/// Grid lines at multiples of dx0 / rho^k, anchored at the origin like
/// grid_count.
struct GridOverlay {
  int k = 0;
  double dx0 = 1.0;
  double rho = 3.0;

  double spacing() const;
};

struct RenderOptions {
  int width = 800;
  int height = 400;
  double stroke_width = 1.5;
  double margin = 0.05;  // fraction of each pixel dimension, in [0, 0.4)
  std::optional<GridOverlay> grid;
};

void validate(const RenderOptions& opts);

/// Single-path SVG with the polyline fitted (aspect preserved) into the
/// canvas. Output depends only on the inputs.
std::string render_svg(const Polyline& poly, const RenderOptions& opts);

/// Panels side by side, one per polyline, labelled C_0, C_1, ... and drawn
/// at a common scale. When `opts.grid` is set, panel i overlays the grid of
/// its own level (poly.level, else i).
std::string render_panels(std::span<const Polyline> polys, const RenderOptions& opts);

}  // namespace fk
