#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "floodfuse/errors.hpp"
#include "floodfuse/optical.hpp"
#include "support/test_rng.hpp"

using namespace floodfuse;
using testsupport::Rng;

namespace {

GeoGrid grid1() {
    GeoGrid g;
    g.width = 1;
    g.height = 1;
    g.pixel_dx = g.pixel_dy = 1.0;
    g.crs = "EPSG:4326";
    return g;
}

GeoGrid gridn(int w, int h) {
    GeoGrid g = grid1();
    g.width = w;
    g.height = h;
    return g;
}

OpticalScene scene(double g, double n, Date d = {2022, 8, 10}) {
    return OpticalScene{d, Raster(grid1(), std::vector<double>{g}),
                        Raster(grid1(), std::vector<double>{n}), std::nullopt};
}

}  // namespace

TEST_CASE("ndwi point values") {
    CHECK(ndwi(Raster(grid1(), {0.2}), Raster(grid1(), {0.2})).at(0, 0) == 0.0);
    CHECK(ndwi(Raster(grid1(), {0.6}), Raster(grid1(), {0.2})).at(0, 0) ==
          doctest::Approx(0.5));
    CHECK(std::isnan(ndwi(Raster(grid1(), {0.0}), Raster(grid1(), {0.0})).at(0, 0)));
}

TEST_CASE("ndwi properties: antisymmetry, range, scale invariance") {
    Rng rng(0xaa55);
    const GeoGrid g = gridn(16, 16);
    std::vector<double> gs(256), ns(256);
    for (auto& v : gs) v = rng.uniform(0.0, 1.0);
    for (auto& v : ns) v = rng.uniform(0.0, 1.0);
    const Raster green(g, std::vector<double>(gs));
    const Raster nir(g, std::vector<double>(ns));

    const Raster fwd = ndwi(green, nir);
    const Raster rev = ndwi(nir, green);
    for (int i = 0; i < 256; ++i) {
        CHECK(fwd.samples()[i] == -rev.samples()[i]);
        CHECK(fwd.samples()[i] >= -1.0);
        CHECK(fwd.samples()[i] <= 1.0);
    }

    // doubling both bands is bit-exact; an arbitrary factor is exact to 1e-12
    std::vector<double> g2(gs), n2(ns);
    for (auto& v : g2) v *= 2.0;
    for (auto& v : n2) v *= 2.0;
    const Raster scaled = ndwi(Raster(g, std::move(g2)), Raster(g, std::move(n2)));
    for (int i = 0; i < 256; ++i) CHECK(scaled.samples()[i] == fwd.samples()[i]);

    std::vector<double> g3(gs), n3(ns);
    for (auto& v : g3) v *= 3.7;
    for (auto& v : n3) v *= 3.7;
    const Raster scaled3 = ndwi(Raster(g, std::move(g3)), Raster(g, std::move(n3)));
    for (int i = 0; i < 256; ++i) {
        CHECK(scaled3.samples()[i] ==
              doctest::Approx(fwd.samples()[i]).epsilon(1e-12));
    }
}

TEST_CASE("ndwi grid mismatch is an error") {
    CHECK_THROWS_AS(ndwi(Raster(grid1(), {0.1}), Raster(gridn(2, 1), {0.1, 0.2})),
                    GridMismatchError);
}

TEST_CASE("no NDWI change means all DRY") {
    std::vector<OpticalScene> pre{scene(0.4, 0.6, {2022, 6, 1})};
    std::vector<OpticalScene> post{scene(0.4, 0.6, {2022, 8, 20})};
    const FloodMask m = optical_flood_mask(pre, post, {});
    CHECK(m.at(0, 0) == MaskState::Dry);
    CHECK(m.provenance().count("SENTINEL2") == 1);
    REQUIRE(m.date_range().has_value());
    CHECK(m.date_range()->start == Date{2022, 8, 20});
}

TEST_CASE("NDWI rise 0.7 over threshold 0.2 floods the cell") {
    // pre NDWI = -0.3, post NDWI = +0.4, hand-evaluated through the pipeline
    std::vector<OpticalScene> pre{scene(0.35, 0.65, {2022, 6, 1})};
    std::vector<OpticalScene> post{scene(0.70, 0.30, {2022, 8, 20})};
    OpticalParams p;
    p.ndwi_diff_threshold = 0.2;
    const FloodMask m = optical_flood_mask(pre, post, p);
    CHECK(m.at(0, 0) == MaskState::Flooded);
}

TEST_CASE("cloud forces NO_OBS regardless of the difference") {
    auto cloudy = scene(0.70, 0.30, {2022, 8, 20});
    cloudy.cloud_mask = Raster(grid1(), std::vector<double>{1.0});
    std::vector<OpticalScene> pre{scene(0.35, 0.65, {2022, 6, 1})};
    std::vector<OpticalScene> post{cloudy};
    const FloodMask m = optical_flood_mask(pre, post, {});
    CHECK(m.at(0, 0) == MaskState::NoObs);
}

TEST_CASE("empty scene lists are an error; absolute mode allows empty pre") {
    std::vector<OpticalScene> none;
    std::vector<OpticalScene> post{scene(0.9, 0.1)};
    CHECK_THROWS_AS(optical_flood_mask(none, post, {}), InvalidArgumentError);
    CHECK_THROWS_AS(optical_flood_mask(post, none, {}), InvalidArgumentError);

    OpticalParams p;
    p.absolute = true;
    p.ndwi_diff_threshold = 0.5;
    const FloodMask m = optical_flood_mask(none, post, p);
    CHECK(m.at(0, 0) == MaskState::Flooded);  // post NDWI 0.8 >= 0.5
}

TEST_CASE("raising the threshold never adds flooded cells") {
    Rng rng(0x77);
    const GeoGrid g = gridn(24, 24);
    std::vector<double> gs(24 * 24), ns(24 * 24), gs2(24 * 24), ns2(24 * 24);
    for (auto& v : gs) v = rng.uniform(0.05, 1.0);
    for (auto& v : ns) v = rng.uniform(0.05, 1.0);
    for (auto& v : gs2) v = rng.uniform(0.05, 1.0);
    for (auto& v : ns2) v = rng.uniform(0.05, 1.0);
    std::vector<OpticalScene> pre{OpticalScene{{2022, 6, 1}, Raster(g, std::move(gs)),
                                               Raster(g, std::move(ns)), std::nullopt}};
    std::vector<OpticalScene> post{OpticalScene{{2022, 8, 1}, Raster(g, std::move(gs2)),
                                                Raster(g, std::move(ns2)), std::nullopt}};
    std::int64_t prev = std::numeric_limits<std::int64_t>::max();
    for (double t = 0.05; t <= 0.5; t += 0.05) {
        OpticalParams p;
        p.ndwi_diff_threshold = t;
        const auto flooded = optical_flood_mask(pre, post, p).count(MaskState::Flooded);
        CHECK(flooded <= prev);
        prev = flooded;
    }
}

TEST_CASE("params validate their domain") {
    OpticalParams p;
    p.ndwi_diff_threshold = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgumentError);
    p.ndwi_diff_threshold = 2.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgumentError);
    p.ndwi_diff_threshold = 2.0;
    CHECK_NOTHROW(p.validate());
}
