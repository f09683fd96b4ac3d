#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "floodfuse/errors.hpp"

namespace floodfuse {

/// Spatial frame of a raster: pixel layout plus the affine anchor into a CRS.
/// Samples are row-major with the origin at the outer corner of pixel (0,0);
/// rows run southward, so pixel_dy is a positive magnitude.
struct GeoGrid {
    int width = 0;
    int height = 0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    double pixel_dx = 0.0;  // CRS units per pixel, eastward, > 0
    double pixel_dy = 0.0;  // CRS units per pixel, southward extent, > 0
    std::string crs;        // e.g. "EPSG:4326"; empty means unknown

    bool valid() const {
        return width >= 1 && height >= 1 && pixel_dx > 0.0 && pixel_dy > 0.0;
    }

    std::int64_t cell_count() const {
        return static_cast<std::int64_t>(width) * height;
    }

    // Pixel-center mapping; col/row may be fractional.
    double col_to_x(double col) const { return origin_x + (col + 0.5) * pixel_dx; }
    double row_to_y(double row) const { return origin_y - (row + 0.5) * pixel_dy; }
    double x_to_col(double x) const { return (x - origin_x) / pixel_dx - 0.5; }
    double y_to_row(double y) const { return (origin_y - y) / pixel_dy - 0.5; }

    double cell_area() const { return pixel_dx * pixel_dy; }

    /// Exact equality; rasters only combine when their grids match bit-for-bit.
    bool operator==(const GeoGrid& o) const {
        return width == o.width && height == o.height && origin_x == o.origin_x &&
               origin_y == o.origin_y && pixel_dx == o.pixel_dx &&
               pixel_dy == o.pixel_dy && crs == o.crs;
    }
};

enum class Sensor { Sentinel1, Sentinel2, Landsat9 };

std::string to_string(Sensor s);
Sensor sensor_from_string(const std::string& s);

enum class Epoch { Pre, Post };

enum class Polarization { VH, VV };

std::string to_string(Polarization p);

/// Proleptic-Gregorian calendar date. Comparisons and day arithmetic go
/// through a civil-days serial number, so ranges behave like integers.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    /// Days since 1970-01-01.
    std::int64_t to_days() const;
    static Date from_days(std::int64_t days);

    /// Parses strict "YYYY-MM-DD"; throws InvalidArgumentError otherwise.
    static Date parse(const std::string& iso);
    std::string to_iso() const;

    auto operator<=>(const Date&) const = default;
};

struct DateRange {
    Date start;
    Date end;  // inclusive

    bool contains(const Date& d) const { return start <= d && d <= end; }
    std::int64_t length_days() const { return end.to_days() - start.to_days() + 1; }
};

/// Named bands a scene can map to a file band index (1-based).
enum class BandName { Green, Nir, VH, VV };

std::string to_string(BandName b);

/// Descriptor of one acquisition as it arrives from disk: which sensor,
/// when, and where each needed band lives inside the file.
struct SceneMeta {
    Sensor sensor = Sensor::Sentinel2;
    Date acquisition_date;
    std::map<BandName, int> band_map;
    Epoch epoch = Epoch::Pre;

    /// Optical sensors must map Green and Nir; SAR exactly one polarization.
    void validate() const;
};

}  // namespace floodfuse
