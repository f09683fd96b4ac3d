#pragma once

#include <optional>
#include <string>

#include "floodfuse/raster.hpp"

namespace floodfuse {

/// Header-level facts about a raster file, cheap enough for config validation.
struct RasterFileInfo {
    GeoGrid grid;  // width/height plus geotransform and CRS
    int bands = 1;
    std::optional<double> nodata;
    std::string description;
};

enum class GeoTiffDType {
    F64,  // lossless for everything a Raster can hold
    U8,   // masks; every sample must be integral in [0,255] or nodata
};

RasterFileInfo probe_raster(const std::string& path);

/// Reads one band (1-based) of a GeoTIFF into a Raster. Values equal to the
/// file's nodata sentinel come back as NaN; the sentinel is kept on the
/// Raster for the return trip.
Raster read_raster(const std::string& path, int band = 1);

/// Writes a single-band GeoTIFF (little-endian, uncompressed strips).
/// F64 output re-reads bit-identically. NaN samples are materialized as the
/// raster's nodata sentinel when one is set.
void write_raster(const Raster& raster, const std::string& path,
                  GeoTiffDType dtype = GeoTiffDType::F64,
                  const std::string& description = "");

/// Mask files use the 0/1/255 byte encoding with nodata 255; provenance and
/// date range travel in the ImageDescription tag.
void write_mask(const FloodMask& mask, const std::string& path);
FloodMask read_mask(const std::string& path);

}  // namespace floodfuse
