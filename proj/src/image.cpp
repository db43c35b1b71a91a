#include "panolayout/image.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace panolayout {

void PanoImage::require_panorama() const {
    if (width <= 0 || height <= 0 || width != 2 * height) {
        throw DomainError("panorama images must satisfy width == 2 * height, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    }
}

Rgb bilinear_sample(const PanoImage& img, double col, double row) {
    const int w = img.width;
    const int h = img.height;
    const double fc = std::floor(col);
    const double fr = std::floor(row);
    const double tc = col - fc;
    const double tr = row - fr;

    int c0 = static_cast<int>(fc) % w;
    if (c0 < 0) c0 += w;
    const int c1 = (c0 + 1) % w;
    int r0 = static_cast<int>(fr);
    int r1 = r0 + 1;
    r0 = std::min(std::max(r0, 0), h - 1);
    r1 = std::min(std::max(r1, 0), h - 1);

    Rgb out;
    for (int ch = 0; ch < 3; ++ch) {
        const double top = (1.0 - tc) * img.at(c0, r0, ch) + tc * img.at(c1, r0, ch);
        const double bot = (1.0 - tc) * img.at(c0, r1, ch) + tc * img.at(c1, r1, ch);
        const double v = (1.0 - tr) * top + tr * bot;
        const long q = std::lround(v);
        const std::uint8_t byte = static_cast<std::uint8_t>(std::min(255L, std::max(0L, q)));
        if (ch == 0) out.r = byte;
        if (ch == 1) out.g = byte;
        if (ch == 2) out.b = byte;
    }
    return out;
}

PanoImage read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open image file " + path.string());

    const auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw ParseError("truncated PPM header in " + path.string());
    };

    if (next_token() != "P6") throw ParseError(path.string() + " is not a binary PPM (P6) file");
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0) throw ParseError("bad PPM dimensions in " + path.string());
    if (maxval != 255) throw ParseError("only 8-bit PPM is supported, maxval=" +
                                        std::to_string(maxval));
    in.get();  // single whitespace after the header

    PanoImage img = PanoImage::create(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw ParseError("truncated PPM pixel data in " + path.string());
    }
    return img;
}

void write_ppm(const PanoImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write image file " + path.string());
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw Error("failed writing image file " + path.string());
}

}  // namespace panolayout
