#pragma once

#include <optional>
#include <vector>

#include "panolayout/geometry.hpp"
#include "panolayout/layout.hpp"

namespace panolayout {

/// Evaluation results for one prediction / ground-truth pair. corner_error
/// is absent when the corner counts differ.
struct MetricsReport {
    double iou_3d = 0.0;
    std::optional<double> corner_error;
    std::optional<double> pixel_error;
};

/// Signed shoelace area; positive for counter-clockwise polygons.
double polygon_area(const std::vector<PlanePoint>& polygon);

/// Exact intersection area of two simple rectilinear polygons via vertical
/// slab decomposition into rectangles.
double rectilinear_intersection_area(const std::vector<PlanePoint>& a,
                                     const std::vector<PlanePoint>& b);

/// Volume IoU of the two room prisms, sharing the camera frame.
double iou_3d(const ManhattanLayout& pred, const ManhattanLayout& gt);

/// Mean image-space distance between matched corners, normalized by the
/// image diagonal. Matching tries every circular shift of the predicted
/// corner sequence. Throws IncomparableLayoutsError on count mismatch.
double corner_error(const ManhattanLayout& pred, const ManhattanLayout& gt,
                    const ImageGrid& grid);

/// Fraction of pixels whose ceiling/wall/floor class differs.
double pixel_error(const BoundarySignals& pred, const BoundarySignals& gt,
                   const ImageGrid& grid);

}  // namespace panolayout
