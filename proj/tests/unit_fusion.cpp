#include <vector>

#include "doctest.h"
#include "floodfuse/errors.hpp"
#include "floodfuse/fusion.hpp"
#include "support/test_rng.hpp"

using namespace floodfuse;
using testsupport::Rng;

namespace {

GeoGrid gridn(int w, int h) {
    GeoGrid g;
    g.width = w;
    g.height = h;
    g.pixel_dx = g.pixel_dy = 1.0;
    g.crs = "EPSG:4326";
    return g;
}

FloodMask cellmask(MaskState s) {
    return FloodMask(gridn(1, 1), std::vector<MaskState>{s});
}

// Independent statement of the fusion rules, written against the plain
// counts rather than the production code path.
MaskState fuse_oracle(const std::vector<MaskState>& in, FuseRule rule) {
    int observed = 0, wet = 0;
    for (MaskState s : in) {
        if (s == MaskState::NoObs) continue;
        observed++;
        if (s == MaskState::Flooded) wet++;
    }
    if (observed == 0) return MaskState::NoObs;
    switch (rule) {
        case FuseRule::Intersect:
            return wet == observed ? MaskState::Flooded : MaskState::Dry;
        case FuseRule::Majority:
            return wet * 2 > observed ? MaskState::Flooded : MaskState::Dry;
        default:
            return wet > 0 ? MaskState::Flooded : MaskState::Dry;
    }
}

const MaskState kStates[3] = {MaskState::Dry, MaskState::Flooded, MaskState::NoObs};

}  // namespace

TEST_CASE("spec truth-table row: (F, F, D)") {
    std::vector<FloodMask> in{cellmask(MaskState::Flooded),
                              cellmask(MaskState::Flooded),
                              cellmask(MaskState::Dry)};
    CHECK(fuse(in, FuseRule::Intersect).at(0, 0) == MaskState::Dry);
    CHECK(fuse(in, FuseRule::Majority).at(0, 0) == MaskState::Flooded);
    CHECK(fuse(in, FuseRule::Union).at(0, 0) == MaskState::Flooded);
}

TEST_CASE("unobserved inputs sit the vote out") {
    std::vector<FloodMask> in{cellmask(MaskState::Flooded),
                              cellmask(MaskState::NoObs)};
    CHECK(fuse(in, FuseRule::Intersect).at(0, 0) == MaskState::Flooded);
    // 1-of-2 observed is not a strict majority when the second observes dry
    std::vector<FloodMask> tie{cellmask(MaskState::Flooded),
                               cellmask(MaskState::Dry)};
    CHECK(fuse(tie, FuseRule::Majority).at(0, 0) == MaskState::Dry);
}

TEST_CASE("single input is returned unchanged under any rule") {
    for (MaskState s : kStates) {
        for (auto rule : {FuseRule::Intersect, FuseRule::Majority, FuseRule::Union}) {
            CHECK(fuse(std::vector<FloodMask>{cellmask(s)}, rule).at(0, 0) == s);
        }
    }
}

TEST_CASE("exhaustive oracle equivalence over 1, 2 and 3 inputs") {
    for (auto rule : {FuseRule::Intersect, FuseRule::Majority, FuseRule::Union}) {
        for (MaskState a : kStates) {
            CHECK(fuse(std::vector<FloodMask>{cellmask(a)}, rule).at(0, 0) ==
                  fuse_oracle({a}, rule));
            for (MaskState b : kStates) {
                std::vector<FloodMask> two{cellmask(a), cellmask(b)};
                CHECK(fuse(two, rule).at(0, 0) == fuse_oracle({a, b}, rule));
                for (MaskState c : kStates) {
                    std::vector<FloodMask> three{cellmask(a), cellmask(b), cellmask(c)};
                    CHECK(fuse(three, rule).at(0, 0) == fuse_oracle({a, b, c}, rule));
                }
            }
        }
    }
}

TEST_CASE("flooded sets nest: intersect within majority within union") {
    Rng rng(0x1234);
    const GeoGrid g = gridn(32, 32);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<FloodMask> masks;
        for (int k = 0; k < 3; ++k) {
            std::vector<MaskState> st(32 * 32);
            for (auto& s : st) s = kStates[rng.below(3)];
            masks.emplace_back(g, std::move(st));
        }
        const FloodMask i = fuse(masks, FuseRule::Intersect);
        const FloodMask m = fuse(masks, FuseRule::Majority);
        const FloodMask u = fuse(masks, FuseRule::Union);
        for (int c = 0; c < 32 * 32; ++c) {
            if (i.states()[c] == MaskState::Flooded) {
                CHECK(m.states()[c] == MaskState::Flooded);
            }
            if (m.states()[c] == MaskState::Flooded) {
                CHECK(u.states()[c] == MaskState::Flooded);
            }
        }
    }
}

TEST_CASE("fuse is permutation-invariant and idempotent on equal inputs") {
    Rng rng(0x4321);
    const GeoGrid g = gridn(16, 16);
    std::vector<MaskState> st(256);
    for (auto& s : st) s = kStates[rng.below(3)];
    const FloodMask m(g, std::move(st));

    std::vector<FloodMask> masks;
    for (int k = 0; k < 4; ++k) {
        std::vector<MaskState> s2(256);
        for (auto& s : s2) s = kStates[rng.below(3)];
        masks.emplace_back(g, std::move(s2));
    }
    for (auto rule : {FuseRule::Intersect, FuseRule::Majority, FuseRule::Union}) {
        const FloodMask base = fuse(masks, rule);
        std::vector<FloodMask> rev(masks.rbegin(), masks.rend());
        CHECK(fuse(rev, rule).identical_to(base));
        std::vector<FloodMask> same{m, m, m};
        CHECK(fuse(same, rule).identical_to(m));
    }
}

TEST_CASE("fusion provenance and dates merge") {
    FloodMask a = cellmask(MaskState::Flooded);
    a.provenance().insert("SENTINEL1");
    a.date_range() = DateRange{Date{2022, 8, 1}, Date{2022, 8, 10}};
    FloodMask b = cellmask(MaskState::Flooded);
    b.provenance().insert("SENTINEL2");
    b.date_range() = DateRange{Date{2022, 8, 5}, Date{2022, 8, 20}};
    const FloodMask f = fuse(std::vector<FloodMask>{a, b}, FuseRule::Intersect);
    CHECK(f.provenance().size() == 2);
    CHECK(f.date_range()->start == Date{2022, 8, 1});
    CHECK(f.date_range()->end == Date{2022, 8, 20});
}

TEST_CASE("fuse rejects empty lists and mixed grids") {
    CHECK_THROWS_AS(fuse({}, FuseRule::Union), InvalidArgumentError);
    std::vector<FloodMask> bad{cellmask(MaskState::Dry), FloodMask(gridn(2, 1))};
    CHECK_THROWS_AS(fuse(bad, FuseRule::Union), GridMismatchError);
}

TEST_CASE("availability counts per-sensor and combined coverage") {
    const DateRange period{Date{2022, 8, 1}, Date{2022, 8, 5}};

    SUBCASE("one sensor on two of five days") {
        std::vector<SceneMeta> scenes(2);
        scenes[0].sensor = Sensor::Sentinel1;
        scenes[0].acquisition_date = Date{2022, 8, 1};
        scenes[1].sensor = Sensor::Sentinel1;
        scenes[1].acquisition_date = Date{2022, 8, 3};
        const CoverageTable t = availability(scenes, period);
        CHECK(t.days.size() == 5);
        CHECK(t.days_per_sensor.at("SENTINEL1") == 2);
        CHECK(t.combined_days == 2);
    }
    SUBCASE("two sensors on different days extend combined coverage") {
        std::vector<SceneMeta> scenes(2);
        scenes[0].sensor = Sensor::Sentinel1;
        scenes[0].acquisition_date = Date{2022, 8, 1};
        scenes[1].sensor = Sensor::Sentinel2;
        scenes[1].acquisition_date = Date{2022, 8, 2};
        const CoverageTable t = availability(scenes, period);
        CHECK(t.days_per_sensor.at("SENTINEL1") == 1);
        CHECK(t.days_per_sensor.at("SENTINEL2") == 1);
        CHECK(t.combined_days == 2);
    }
    SUBCASE("no scenes, no coverage") {
        const CoverageTable t = availability({}, period);
        CHECK(t.combined_days == 0);
    }
    SUBCASE("inverted period is an error") {
        CHECK_THROWS_AS(availability({}, DateRange{Date{2022, 8, 5}, Date{2022, 8, 1}}),
                        InvalidArgumentError);
    }
}
