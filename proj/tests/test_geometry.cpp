#include <cmath>

#include "doctest.h"
#include "panolayout/geometry.hpp"
#include "panolayout/rng.hpp"

using namespace panolayout;

TEST_CASE("pixel_to_uv follows the pixel-center convention") {
    const ImageGrid small{4, 2};
    const Uv a = pixel_to_uv(1, 1, small);
    CHECK(a.u == doctest::Approx(-kPi / 4).epsilon(1e-15));
    CHECK(a.v == doctest::Approx(kPi / 4).epsilon(1e-15));

    const ImageGrid full{1024, 512};
    const Uv b = pixel_to_uv(0, 0, full);
    CHECK(b.u == doctest::Approx(-kPi + kPi / 1024).epsilon(1e-15));
    CHECK(b.v == doctest::Approx(-kPi / 2 + kPi / 1024).epsilon(1e-15));
}

TEST_CASE("pixel_to_uv rejects out-of-range indices") {
    const ImageGrid grid{1024, 512};
    CHECK_THROWS_AS(pixel_to_uv(-0.5, 0, grid), DomainError);
    CHECK_THROWS_AS(pixel_to_uv(0, 512, grid), DomainError);
    CHECK_THROWS_AS(pixel_to_uv(1024, 0, grid), DomainError);
}

TEST_CASE("uv_to_pixel inverts pixel_to_uv and wraps the seam") {
    const ImageGrid small{4, 2};
    const PixelPos p = uv_to_pixel({-kPi / 4, kPi / 4}, small);
    CHECK(p.col == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.row == doctest::Approx(1.0).epsilon(1e-12));

    const PixelPos seam = uv_to_pixel({-kPi, -kPi / 2}, small);
    CHECK(seam.col == doctest::Approx(4 - 0.5).epsilon(1e-12));
    CHECK(seam.row == doctest::Approx(-0.5).epsilon(1e-12));

    const ImageGrid grid{1024, 512};
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double col = rng.uniform(0.0, 1024.0);
        const double row = rng.uniform(0.0, 512.0);
        const PixelPos back = uv_to_pixel(pixel_to_uv(col, row, grid), grid);
        CHECK(back.col == doctest::Approx(col).epsilon(1e-12));
        CHECK(back.row == doctest::Approx(row).epsilon(1e-12));
    }
}

TEST_CASE("uv_to_dir hits the coordinate axes") {
    const Vec3 x = uv_to_dir({0, 0});
    CHECK(x.x == doctest::Approx(1.0));
    CHECK(x.y == doctest::Approx(0.0));
    CHECK(x.z == doctest::Approx(0.0));

    const Vec3 z = uv_to_dir({kPi / 2, 0});
    CHECK(z.z == doctest::Approx(1.0));
    CHECK(z.x == doctest::Approx(0.0).epsilon(1e-15));

    const Vec3 down = uv_to_dir({0, kPi / 2});
    CHECK(down.y == doctest::Approx(1.0));
}

TEST_CASE("dir_to_uv handles axes, poles, and scale") {
    const Uv a = dir_to_uv({1, 0, 0});
    CHECK(a.u == 0.0);
    CHECK(a.v == 0.0);

    const Uv pole = dir_to_uv({0, 1, 0});
    CHECK(pole.u == 0.0);  // convention at the pole
    CHECK(pole.v == doctest::Approx(kPi / 2));

    const Uv c = dir_to_uv({3, 4, 0});
    CHECK(c.u == 0.0);
    CHECK(c.v == doctest::Approx(0.9272952180016123).epsilon(1e-12));

    CHECK_THROWS_AS(dir_to_uv({0, 0, 0}), DomainError);
}

TEST_CASE("uv <-> direction round-trips") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Uv uv{rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2 + 1e-6, kPi / 2 - 1e-6)};
        const Uv back = dir_to_uv(uv_to_dir(uv));
        CHECK(std::abs(normalize_longitude(back.u - uv.u)) < 1e-9);
        CHECK(std::abs(back.v - uv.v) < 1e-9);
    }
}

TEST_CASE("project_to_horizontal_plane solves the boundary triangle") {
    const PlanePoint a = project_to_horizontal_plane({0, kPi / 4}, 1.6);
    CHECK(a.x == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(a.z == doctest::Approx(0.0).epsilon(1e-12));

    const PlanePoint b = project_to_horizontal_plane({kPi / 2, kPi / 4}, 1.6);
    CHECK(b.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.z == doctest::Approx(1.6).epsilon(1e-12));

    CHECK_THROWS_AS(project_to_horizontal_plane({0, -kPi / 4}, 1.6), DomainError);
    CHECK_THROWS_AS(project_to_horizontal_plane({0, 0}, 1.6), DomainError);
}

TEST_CASE("plane projection round-trips through dir_to_uv") {
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const Uv uv{rng.uniform(-kPi, kPi), rng.uniform(0.05, kPi / 2 - 0.05)};
        const double plane_y = rng.uniform(0.5, 3.0);
        const PlanePoint p = project_to_horizontal_plane(uv, plane_y);
        const Uv back = dir_to_uv({p.x, plane_y, p.z});
        CHECK(std::abs(normalize_longitude(back.u - uv.u)) < 1e-9);
        CHECK(std::abs(back.v - uv.v) < 1e-9);
    }
}

TEST_CASE("normalize_longitude lands in [-pi, pi)") {
    CHECK(normalize_longitude(kPi) == doctest::Approx(-kPi));
    CHECK(normalize_longitude(-kPi) == doctest::Approx(-kPi));
    CHECK(normalize_longitude(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(normalize_longitude(-5 * kPi / 2) == doctest::Approx(-kPi / 2));
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const double u = rng.uniform(-50.0, 50.0);
        const double n = normalize_longitude(u);
        CHECK(n >= -kPi);
        CHECK(n < kPi);
        CHECK(std::abs(std::remainder(n - u, 2 * kPi)) < 1e-9);
    }
}
