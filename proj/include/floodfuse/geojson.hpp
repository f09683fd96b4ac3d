#pragma once

#include <string>

#include "floodfuse/vector_layer.hpp"

namespace floodfuse {

/// Reads a GeoJSON FeatureCollection (or bare Feature/geometry) of one
/// geometry kind. Multi-part geometries stay one feature. A legacy "crs"
/// member is honored; otherwise the layer is EPSG:4326 per RFC 7946.
VectorLayer read_geojson(const std::string& path);

/// Writes a FeatureCollection. Rings are closed, exteriors counter-clockwise
/// and holes clockwise; output is byte-deterministic for equal layers.
void write_geojson(const VectorLayer& layer, const std::string& path);

}  // namespace floodfuse
