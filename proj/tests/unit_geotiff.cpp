#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "doctest.h"
#include "floodfuse/errors.hpp"
#include "floodfuse/geotiff.hpp"
#include "support/test_rng.hpp"

using namespace floodfuse;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "floodfuse_tiff_tests";
    fs::create_directories(dir);
    return dir;
}

GeoGrid small_grid(int w, int h) {
    GeoGrid g;
    g.width = w;
    g.height = h;
    g.origin_x = 67.0;
    g.origin_y = 26.5;
    g.pixel_dx = 0.001;
    g.pixel_dy = 0.001;
    g.crs = "EPSG:4326";
    return g;
}

// Minimal little-endian float64 GeoTIFF assembled by hand, independent of
// the writer: 2x2 samples [[1,2],[3,4]], nodata -9999, pixel 0.5x0.25 at
// origin (10, 20).
std::vector<std::uint8_t> hand_built_tiff(bool with_geotransform) {
    std::vector<std::uint8_t> b;
    auto u16 = [&](std::uint16_t v) {
        b.push_back(v & 0xff);
        b.push_back(v >> 8);
    };
    auto u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
    };
    auto f64 = [&](double d) {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        for (int i = 0; i < 8; ++i) b.push_back((v >> (8 * i)) & 0xff);
    };

    b.push_back('I');
    b.push_back('I');
    u16(42);
    u32(8);  // IFD right after header

    const int n = with_geotransform ? 13 : 11;
    u16(static_cast<std::uint16_t>(n));
    const std::uint32_t ifd_size = 2 + 12 * n + 4;
    const std::uint32_t aux = 8 + ifd_size;  // external values start here
    // external block: pixel scale (24B), tiepoint (48B), nodata ascii (6B), data (32B)
    const std::uint32_t off_scale = aux;
    const std::uint32_t off_tie = off_scale + 24;
    const std::uint32_t off_nodata = off_tie + 48;
    const std::uint32_t off_data = off_nodata + 6;

    auto entry = [&](std::uint16_t tag, std::uint16_t type, std::uint32_t count,
                     std::uint32_t value) {
        u16(tag);
        u16(type);
        u32(count);
        u32(value);
    };
    entry(256, 3, 1, 2);           // width
    entry(257, 3, 1, 2);           // height
    entry(258, 3, 1, 64);          // bits
    entry(259, 3, 1, 1);           // no compression
    entry(262, 3, 1, 1);           // black is zero
    entry(273, 4, 1, off_data);    // strip offset
    entry(277, 3, 1, 1);           // samples/pixel
    entry(278, 3, 1, 2);           // rows/strip
    entry(279, 4, 1, 32);          // strip bytes
    entry(339, 3, 1, 3);           // float
    if (with_geotransform) {
        entry(33550, 12, 3, off_scale);
        entry(33922, 12, 6, off_tie);
    }
    entry(42113, 2, 6, off_nodata);
    u32(0);  // next IFD

    f64(0.5);
    f64(0.25);
    f64(0.0);
    f64(0.0);
    f64(0.0);
    f64(0.0);
    f64(10.0);
    f64(20.0);
    f64(0.0);
    const char* nd = "-9999";
    for (int i = 0; i < 6; ++i) b.push_back(static_cast<std::uint8_t>(nd[i]));
    f64(1.0);
    f64(2.0);
    f64(3.0);
    f64(4.0);
    return b;
}

void dump(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("read hand-built 2x2 float64 file with nodata") {
    const auto p = temp_dir() / "hand.tif";
    dump(p, hand_built_tiff(true));
    const Raster r = read_raster(p.string(), 1);
    CHECK(r.width() == 2);
    CHECK(r.height() == 2);
    CHECK(r.at(0, 0) == 1.0);
    CHECK(r.at(1, 0) == 2.0);
    CHECK(r.at(0, 1) == 3.0);
    CHECK(r.at(1, 1) == 4.0);
    CHECK(r.nodata() == -9999.0);
    CHECK(r.grid().origin_x == 10.0);
    CHECK(r.grid().origin_y == 20.0);
    CHECK(r.grid().pixel_dx == 0.5);
    CHECK(r.grid().pixel_dy == 0.25);
}

TEST_CASE("file without a geotransform is a georeferencing error") {
    const auto p = temp_dir() / "nogeo.tif";
    dump(p, hand_built_tiff(false));
    CHECK_THROWS_AS(read_raster(p.string(), 1), GeorefError);
}

TEST_CASE("missing file and non-TIFF files raise distinct errors") {
    CHECK_THROWS_AS(read_raster((temp_dir() / "absent.tif").string(), 1), IoError);
    const auto p = temp_dir() / "junk.tif";
    dump(p, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK_THROWS_AS(read_raster(p.string(), 1), FormatError);
}

TEST_CASE("band index out of range") {
    const auto p = temp_dir() / "hand2.tif";
    dump(p, hand_built_tiff(true));
    CHECK_THROWS_AS(read_raster(p.string(), 2), InvalidArgumentError);
    CHECK_THROWS_AS(read_raster(p.string(), 0), InvalidArgumentError);
}

TEST_CASE("write/read round trip is the identity, nodata included") {
    testsupport::Rng rng(0x5151u);
    GeoGrid g = small_grid(13, 9);
    std::vector<double> vals(13 * 9);
    for (auto& v : vals) {
        v = rng.chance(0.2) ? -9999.0 : rng.uniform(-50.0, 50.0);
    }
    Raster r(g, std::move(vals), -9999.0);
    const auto p = temp_dir() / "rt.tif";
    write_raster(r, p.string());
    const Raster back = read_raster(p.string(), 1);
    CHECK(back.identical_to(r));

    // a second trip through the file changes nothing
    const auto p2 = temp_dir() / "rt2.tif";
    write_raster(back, p2.string());
    CHECK(read_raster(p2.string(), 1).identical_to(r));
}

TEST_CASE("1x1 raster of value 0 survives the round trip") {
    GeoGrid g = small_grid(1, 1);
    Raster r(g, std::vector<double>{0.0});
    const auto p = temp_dir() / "one.tif";
    write_raster(r, p.string());
    CHECK(read_raster(p.string(), 1).identical_to(r));
}

TEST_CASE("mask file round trip preserves states and provenance") {
    GeoGrid g = small_grid(4, 3);
    std::vector<MaskState> st(12, MaskState::Dry);
    st[0] = MaskState::Flooded;
    st[5] = MaskState::NoObs;
    st[11] = MaskState::Flooded;
    FloodMask m(g, std::move(st));
    m.provenance().insert("SENTINEL1");
    m.date_range() = DateRange{Date{2022, 8, 1}, Date{2022, 8, 31}};

    const auto p = temp_dir() / "mask.tif";
    write_mask(m, p.string());
    const FloodMask back = read_mask(p.string());
    CHECK(back.identical_to(m));
    CHECK(back.provenance() == m.provenance());
    REQUIRE(back.date_range().has_value());
    CHECK(back.date_range()->start == Date{2022, 8, 1});
    CHECK(back.date_range()->end == Date{2022, 8, 31});

    // and the same file reads as a plain 0/1/255 raster
    const Raster raw = read_raster(p.string(), 1);
    CHECK(raw.at(0, 0) == 1.0);
    CHECK(raw.at(0, 1) == 0.0);
    CHECK(std::isnan(raw.at(1, 1)));
    CHECK(raw.nodata() == 255.0);
}

TEST_CASE("write to an unwritable path is an I/O error") {
    GeoGrid g = small_grid(2, 2);
    Raster r(g, 1.0);
    CHECK_THROWS_AS(write_raster(r, "/nonexistent_dir_xyz/out.tif"), IoError);
}

TEST_CASE("8-bit output rejects non-encodable samples") {
    GeoGrid g = small_grid(2, 1);
    Raster r(g, std::vector<double>{1.5, 2.0});
    const auto p = temp_dir() / "bad8.tif";
    CHECK_THROWS_AS(write_raster(r, p.string(), GeoTiffDType::U8),
                    InvalidArgumentError);
}

TEST_CASE("probe reports bands, grid, and nodata without decoding") {
    const auto p = temp_dir() / "hand3.tif";
    dump(p, hand_built_tiff(true));
    const RasterFileInfo info = probe_raster(p.string());
    CHECK(info.bands == 1);
    CHECK(info.grid.width == 2);
    CHECK(info.nodata == -9999.0);
    CHECK(info.grid.crs.empty());  // hand fixture writes no CRS keys
}

TEST_CASE("CRS round trips for geographic and projected EPSG codes") {
    for (const char* crs : {"EPSG:4326", "EPSG:32642"}) {
        GeoGrid g = small_grid(2, 2);
        g.crs = crs;
        Raster r(g, 5.0);
        const auto p = temp_dir() / "crs.tif";
        write_raster(r, p.string());
        CHECK(read_raster(p.string(), 1).grid().crs == crs);
    }
}
