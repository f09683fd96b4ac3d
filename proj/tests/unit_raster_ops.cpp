#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "doctest.h"
#include "floodfuse/errors.hpp"
#include "floodfuse/raster_ops.hpp"
#include "support/test_rng.hpp"

using namespace floodfuse;
using testsupport::Rng;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

GeoGrid grid(int w, int h, double dx = 1.0, double dy = 1.0, double ox = 0.0,
             double oy = 0.0) {
    GeoGrid g;
    g.width = w;
    g.height = h;
    g.pixel_dx = dx;
    g.pixel_dy = dy;
    g.origin_x = ox;
    g.origin_y = oy;
    g.crs = "EPSG:4326";
    return g;
}

Raster make(const GeoGrid& g, std::vector<double> v) {
    return Raster(g, std::move(v));
}

Raster random_raster(Rng& rng, const GeoGrid& g, double nan_prob = 0.0) {
    std::vector<double> v(static_cast<std::size_t>(g.cell_count()));
    for (auto& x : v) x = rng.chance(nan_prob) ? kNan : rng.uniform(-10.0, 10.0);
    return make(g, std::move(v));
}

}  // namespace

TEST_CASE("align to own grid is the identity for both methods") {
    Rng rng(42);
    const GeoGrid g = grid(6, 4, 0.25, 0.5, 10.0, 20.0);
    const Raster r = random_raster(rng, g, 0.2);
    for (auto m : {ResampleMethod::Nearest, ResampleMethod::Bilinear}) {
        const Raster a = align(r, g, m);
        CHECK(a.identical_to(r));
    }
}

TEST_CASE("nearest x2 upsample replicates each source cell into a 2x2 block") {
    const GeoGrid src = grid(2, 2, 1.0, 1.0);
    const Raster r = make(src, {0.0, 10.0, 0.0, 10.0});
    GeoGrid dst = grid(4, 4, 0.5, 0.5);
    const Raster a = align(r, dst, ResampleMethod::Nearest);
    // hand-computed nearest-neighbor expectation
    const std::vector<double> want{0, 0, 10, 10, 0, 0, 10, 10,
                                   0, 0, 10, 10, 0, 0, 10, 10};
    for (int i = 0; i < 16; ++i) {
        CAPTURE(i);
        CHECK(a.samples()[i] == want[i]);
    }
}

TEST_CASE("bilinear midpoint between 0 and 10 is 5") {
    const GeoGrid src = grid(2, 1, 1.0, 1.0);
    const Raster r = make(src, {0.0, 10.0});
    // one output cell whose center sits exactly between the two source centers
    GeoGrid dst = grid(1, 1, 1.0, 1.0, 0.5, 0.0);
    const Raster a = align(r, dst, ResampleMethod::Bilinear);
    CHECK(a.at(0, 0) == 5.0);
}

TEST_CASE("align outside source coverage is nodata") {
    const GeoGrid src = grid(2, 2);
    const Raster r = make(src, {1, 2, 3, 4});
    GeoGrid dst = grid(2, 2, 1.0, 1.0, 100.0, 100.0);  // far away
    const Raster a = align(r, dst, ResampleMethod::Nearest);
    for (double v : a.samples()) CHECK(std::isnan(v));
}

TEST_CASE("align refuses CRS mismatch") {
    const GeoGrid src = grid(2, 2);
    GeoGrid dst = grid(2, 2);
    dst.crs = "EPSG:32642";
    CHECK_THROWS_AS(align(make(src, {1, 2, 3, 4}), dst, ResampleMethod::Nearest),
                    CrsMismatchError);
}

TEST_CASE("mosaic basics") {
    const GeoGrid g = grid(1, 1);

    SUBCASE("single input is returned untouched for every reducer") {
        const Raster r = make(g, {7.5});
        for (auto red : {Reducer::Mean, Reducer::Median, Reducer::Min, Reducer::Max}) {
            CHECK(mosaic(std::vector<Raster>{r}, red).identical_to(r));
        }
    }
    SUBCASE("mean of {3, 5, nodata} is 4") {
        std::vector<Raster> rs{make(g, {3.0}), make(g, {5.0}), make(g, {kNan})};
        CHECK(mosaic(rs, Reducer::Mean).at(0, 0) == 4.0);
    }
    SUBCASE("median of {1, 9, 5} is 5") {
        std::vector<Raster> rs{make(g, {1.0}), make(g, {9.0}), make(g, {5.0})};
        CHECK(mosaic(rs, Reducer::Median).at(0, 0) == 5.0);
    }
    SUBCASE("all-nodata cell stays nodata") {
        std::vector<Raster> rs{make(g, {kNan}), make(g, {kNan})};
        CHECK(std::isnan(mosaic(rs, Reducer::Max).at(0, 0)));
    }
    SUBCASE("empty list and grid mismatch are errors") {
        CHECK_THROWS_AS(mosaic(std::vector<Raster>{}, Reducer::Mean),
                        InvalidArgumentError);
        std::vector<Raster> rs{make(g, {1.0}), make(grid(2, 1), {1.0, 2.0})};
        CHECK_THROWS_AS(mosaic(rs, Reducer::Mean), GridMismatchError);
    }
}

TEST_CASE("mosaic is permutation-invariant") {
    Rng rng(7);
    const GeoGrid g = grid(16, 16);
    std::vector<Raster> rs;
    for (int i = 0; i < 5; ++i) rs.push_back(random_raster(rng, g, 0.3));

    for (auto red : {Reducer::Mean, Reducer::Median, Reducer::Min, Reducer::Max}) {
        const Raster base = mosaic(rs, red);
        std::vector<Raster> shuffled = rs;
        // deterministic shuffle
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        }
        const Raster again = mosaic(shuffled, red);
        // mean over a permuted list can round differently; sort-based reducers
        // and min/max are exactly invariant, mean to 1e-12
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            const double a = base.samples()[i], b = again.samples()[i];
            if (std::isnan(a)) {
                CHECK(std::isnan(b));
            } else if (red == Reducer::Mean) {
                CHECK(a == doctest::Approx(b).epsilon(1e-12));
            } else {
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("map_binary follows the examples") {
    const GeoGrid g = grid(1, 1);
    SUBCASE("a - a is zero where observed") {
        Rng rng(3);
        const GeoGrid g8 = grid(8, 8);
        const Raster r = random_raster(rng, g8, 0.2);
        const Raster d = map_binary(r, r, BinaryOp::Sub);
        for (std::int64_t i = 0; i < g8.cell_count(); ++i) {
            if (std::isnan(r.samples()[i])) {
                CHECK(std::isnan(d.samples()[i]));
            } else {
                CHECK(d.samples()[i] == 0.0);
            }
        }
    }
    SUBCASE("[5] SUB [3] = [2]") {
        CHECK(map_binary(make(g, {5}), make(g, {3}), BinaryOp::Sub).at(0, 0) == 2.0);
    }
    SUBCASE("[1] DIV [0] = nodata") {
        CHECK(std::isnan(map_binary(make(g, {1}), make(g, {0}), BinaryOp::Div).at(0, 0)));
    }
    SUBCASE("grid mismatch is an error") {
        CHECK_THROWS_AS(map_binary(make(g, {1}), make(grid(2, 1), {1, 2}),
                                   BinaryOp::Add),
                        GridMismatchError);
    }
}

TEST_CASE("nodata absorption across map_binary") {
    Rng rng(11);
    const GeoGrid g = grid(32, 8);
    const Raster a = random_raster(rng, g, 0.25);
    const Raster b = random_raster(rng, g, 0.25);
    for (auto op : {BinaryOp::Sub, BinaryOp::Add, BinaryOp::Div}) {
        const Raster out = map_binary(a, b, op);
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            if (std::isnan(a.samples()[i]) || std::isnan(b.samples()[i])) {
                CHECK(std::isnan(out.samples()[i]));
            }
        }
    }
}
