#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "panolayout/errors.hpp"

namespace panolayout {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

/// 8-bit RGB raster, row-major interleaved.
struct PanoImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    static PanoImage create(int width, int height) {
        PanoImage img;
        img.width = width;
        img.height = height;
        img.pixels.assign(static_cast<std::size_t>(width) * height * 3, 0);
        return img;
    }

    std::uint8_t& at(int col, int row, int ch) {
        return pixels[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
    }
    std::uint8_t at(int col, int row, int ch) const {
        return pixels[(static_cast<std::size_t>(row) * width + col) * 3 + ch];
    }

    void set(int col, int row, Rgb c) {
        at(col, row, 0) = c.r;
        at(col, row, 1) = c.g;
        at(col, row, 2) = c.b;
    }

    /// Throws DomainError unless width == 2 * height.
    void require_panorama() const;
};

/// Bilinear sample at real pixel coordinates; columns wrap around the seam,
/// rows clamp at the poles.
Rgb bilinear_sample(const PanoImage& img, double col, double row);

/// Binary PPM (P6), the lossless interchange format used throughout.
PanoImage read_ppm(const std::filesystem::path& path);
void write_ppm(const PanoImage& img, const std::filesystem::path& path);

}  // namespace panolayout
