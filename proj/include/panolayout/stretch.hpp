#pragma once

#include "panolayout/geometry.hpp"
#include "panolayout/image.hpp"
#include "panolayout/layout.hpp"
#include "panolayout/rng.hpp"

namespace panolayout {

/// Anisotropic scene scale along the horizontal axes; the vertical scale is
/// fixed to 1 (scaling y is equivalent to scaling both x and z).
struct StretchParams {
    double kx = 1.0;
    double kz = 1.0;

    void validate() const;
    StretchParams inverse() const { return {1.0 / kx, 1.0 / kz}; }
};

/// Where a scene point seen at `uv` appears after the stretch.
Uv stretch_uv_forward(const Uv& uv, const StretchParams& k);

/// Where a target-image coordinate samples from in the source image.
/// Exact inverse of stretch_uv_forward.
Uv stretch_uv_inverse(const Uv& uv, const StretchParams& k);

/// Warps a full panorama by inverse mapping with bilinear sampling;
/// wraps horizontally, clamps at the poles.
PanoImage stretch_image(const PanoImage& img, const StretchParams& k);

/// Scales the floor polygon; heights are unchanged.
ManhattanLayout stretch_layout(const ManhattanLayout& layout, const StretchParams& k);

/// Stretches signals without a polygon: forward-maps the per-column boundary
/// samples and resamples all three channels back onto the column grid with
/// monotone circular interpolation in the stretched longitude.
BoundarySignals stretch_signals(const BoundarySignals& signals, const StretchParams& k);

/// Training-time sampling policy: each factor is drawn from U[1, 2] and then
/// inverted with probability 1/2, independently per axis.
StretchParams sample_stretch(Rng& rng);

}  // namespace panolayout
