#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "floodfuse/geometry.hpp"

namespace floodfuse {

enum class GeometryKind { Point, Polyline, Polygon };

using AttrValue = std::variant<double, std::string>;
using AttrMap = std::map<std::string, AttrValue>;

/// One feature; multi-part geometries are flattened into the matching list.
struct Feature {
    std::vector<geom::Point> points;             // kind Point
    std::vector<std::vector<geom::Point>> lines; // kind Polyline
    std::vector<geom::PolygonGeom> polygons;     // kind Polygon
    AttrMap attributes;

    std::string name_or(const std::string& key, const std::string& fallback) const;
};

struct VectorLayer {
    GeometryKind kind = GeometryKind::Point;
    std::vector<Feature> features;
    std::string crs = "EPSG:4326";

    /// Polylines need two vertices, rings three; throws InvalidArgumentError.
    void validate() const;
};

/// Geographic CRS get geodesic lengths/distances; anything else is treated
/// as planar meters.
bool crs_is_geographic(const std::string& crs);

}  // namespace floodfuse
