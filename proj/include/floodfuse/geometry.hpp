#pragma once

#include <vector>

namespace floodfuse::geom {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Ring vertices without the closing duplicate; edges wrap around.
using Ring = std::vector<Point>;

struct PolygonGeom {
    Ring exterior;
    std::vector<Ring> holes;
};

/// Twice the signed area (shoelace), y-up convention: positive for
/// counter-clockwise rings.
double ring_signed_area2(const Ring& ring);

bool point_on_segment(const Point& p, const Point& a, const Point& b);

/// Even-odd membership; points on the ring boundary count as inside.
bool point_in_ring(const Point& p, const Ring& ring);

/// Inside the exterior and not in a hole (boundary of either counts inside).
bool point_in_polygon(const Point& p, const PolygonGeom& poly);
bool point_in_any_polygon(const Point& p, const std::vector<PolygonGeom>& polys);

double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// Planar distance from a point to a polygon set: zero inside, else the
/// distance to the nearest ring edge.
double distance_to_polygons(const Point& p, const std::vector<PolygonGeom>& polys);

/// Appends every parameter t in [0,1] where segment a+t(b-a) crosses an edge
/// of the ring. Collinear overlaps contribute no parameters; the midpoint
/// classification of the resulting pieces handles grazing contact.
void collect_crossings(const Point& a, const Point& b, const Ring& ring,
                       std::vector<double>& ts);
void collect_crossings(const Point& a, const Point& b,
                       const std::vector<PolygonGeom>& polys,
                       std::vector<double>& ts);

}  // namespace floodfuse::geom
