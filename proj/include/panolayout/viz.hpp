#pragma once

#include "panolayout/image.hpp"
#include "panolayout/layout.hpp"
#include "panolayout/postprocess.hpp"

namespace panolayout {

/// Equirectangular overlay: boundary curves and peak columns drawn over the
/// given background (or a neutral canvas when background is null).
PanoImage render_overlay(const BoundarySignals& signals, const ImageGrid& grid,
                         const PeakList& peaks, const PanoImage* background = nullptr);

/// Top-down floor plan of the layout with the camera marked at the center
/// of the canvas coordinate frame.
PanoImage render_floorplan(const ManhattanLayout& layout, int canvas_px = 640);

}  // namespace panolayout
