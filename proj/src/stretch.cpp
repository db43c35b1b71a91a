#include "panolayout/stretch.hpp"

#include <algorithm>
#include <cmath>

namespace panolayout {

void StretchParams::validate() const {
    if (!(kx > 0.0) || !(kz > 0.0)) {
        throw DomainError("stretch factors must be positive");
    }
}

Uv stretch_uv_forward(const Uv& uv, const StretchParams& k) {
    const double su = std::sin(uv.u);
    const double cu = std::cos(uv.u);
    const double scale = std::sqrt(k.kx * k.kx * cu * cu + k.kz * k.kz * su * su);
    return {std::atan2(k.kz * su, k.kx * cu),
            std::atan2(std::sin(uv.v), scale * std::cos(uv.v))};
}

Uv stretch_uv_inverse(const Uv& uv, const StretchParams& k) {
    const double su1 = std::sin(uv.u);
    const double cu1 = std::cos(uv.u);
    const double u = std::atan2(k.kx * su1, k.kz * cu1);
    // tan(v) = scale(u) * tan(v'). The printed form divides by sin(u'); use
    // whichever of the two equivalent branches is better conditioned.
    double scale;
    if (std::abs(su1) >= std::abs(cu1)) {
        scale = k.kz * std::sin(u) / su1;
    } else {
        scale = k.kx * std::cos(u) / cu1;
    }
    return {u, std::atan(scale * std::tan(uv.v))};
}

PanoImage stretch_image(const PanoImage& img, const StretchParams& k) {
    img.require_panorama();
    k.validate();
    const ImageGrid grid{img.width, img.height};
    PanoImage out = PanoImage::create(img.width, img.height);
    for (int row = 0; row < img.height; ++row) {
        for (int col = 0; col < img.width; ++col) {
            const Uv target = pixel_to_uv(col, row, grid);
            const Uv source = stretch_uv_inverse(target, k);
            const PixelPos p = uv_to_pixel(source, grid);
            out.set(col, row, bilinear_sample(img, p.col, p.row));
        }
    }
    return out;
}

ManhattanLayout stretch_layout(const ManhattanLayout& layout, const StretchParams& k) {
    layout.validate();
    k.validate();
    ManhattanLayout out = layout;
    for (PlanePoint& p : out.floor_polygon) {
        p.x *= k.kx;
        p.z *= k.kz;
    }
    out.validate();
    return out;
}

namespace {

double column_longitude(int col, int width) {
    return 2.0 * kPi * (col + 0.5) / width - kPi;
}

// Boundary latitude at longitude `u` on the chord between two mapped
// boundary samples, interpolating in the projected unit-height floor plan so
// straight walls stay exact. Falls back to linear latitude blending when the
// chord is nearly radial.
double chord_latitude(double u, const Uv& a, const Uv& b, double plane_y, double t) {
    const PlanePoint pa = project_to_horizontal_plane(a, plane_y);
    const PlanePoint pb = project_to_horizontal_plane(b, plane_y);
    const PlanePoint d{std::cos(u), std::sin(u)};
    const PlanePoint ab = pb - pa;
    const double denom = cross(d, ab);
    if (std::abs(denom) > 1e-9 * (length(ab) + 1.0)) {
        const double r = cross(pa, ab) / denom;
        if (r > 0.0) return std::atan2(plane_y, r);
    }
    return (1.0 - t) * a.v + t * b.v;
}

}  // namespace

BoundarySignals stretch_signals(const BoundarySignals& signals, const StretchParams& k) {
    signals.validate();
    k.validate();
    const int w = signals.width();

    // Forward-map every column sample and unwrap the mapped longitudes into
    // an increasing sequence (the longitude map is a monotone circular
    // bijection); target columns then interpolate inside their bracket.
    std::vector<double> mapped_u(w + 1), ceil_v(w + 1), floor_v(w + 1), corner_s(w + 1);
    double prev = 0.0;
    double offset = 0.0;
    for (int i = 0; i < w; ++i) {
        const double u = column_longitude(i, w);
        const double mu = stretch_uv_forward({u, 0.0}, k).u;
        if (i > 0 && mu + offset < prev) offset += 2.0 * kPi;
        mapped_u[i] = mu + offset;
        prev = mapped_u[i];
        ceil_v[i] = stretch_uv_forward({u, signals.ceiling[i]}, k).v;
        floor_v[i] = stretch_uv_forward({u, signals.floor[i]}, k).v;
        corner_s[i] = signals.corner[i];
    }
    mapped_u[w] = mapped_u[0] + 2.0 * kPi;
    ceil_v[w] = ceil_v[0];
    floor_v[w] = floor_v[0];
    corner_s[w] = corner_s[0];

    BoundarySignals out;
    out.ceiling.resize(w);
    out.floor.resize(w);
    out.corner.resize(w);
    for (int j = 0; j < w; ++j) {
        double uj = column_longitude(j, w);
        while (uj < mapped_u[0]) uj += 2.0 * kPi;
        while (uj >= mapped_u[w]) uj -= 2.0 * kPi;
        const auto it = std::upper_bound(mapped_u.begin(), mapped_u.end(), uj);
        const int hi = static_cast<int>(it - mapped_u.begin());
        const int lo = hi - 1;
        const double span = mapped_u[hi] - mapped_u[lo];
        const double t = span > 0.0 ? (uj - mapped_u[lo]) / span : 0.0;
        const double u_wrapped = normalize_longitude(uj);
        out.ceiling[j] = chord_latitude(u_wrapped, {normalize_longitude(mapped_u[lo]), ceil_v[lo]},
                                        {normalize_longitude(mapped_u[hi]), ceil_v[hi]}, -1.0, t);
        out.floor[j] = chord_latitude(u_wrapped, {normalize_longitude(mapped_u[lo]), floor_v[lo]},
                                      {normalize_longitude(mapped_u[hi]), floor_v[hi]}, 1.0, t);
        out.corner[j] = (1.0 - t) * corner_s[lo] + t * corner_s[hi];
    }
    return out;
}

StretchParams sample_stretch(Rng& rng) {
    StretchParams k;
    k.kx = rng.uniform(1.0, 2.0);
    if (rng.coin()) k.kx = 1.0 / k.kx;
    k.kz = rng.uniform(1.0, 2.0);
    if (rng.coin()) k.kz = 1.0 / k.kz;
    return k;
}

}  // namespace panolayout
