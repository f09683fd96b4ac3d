#include "floodfuse/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floodfuse::geom {

double ring_signed_area2(const Ring& ring) {
    double sum = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    return sum;
}

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross != 0.0) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

bool point_in_ring(const Point& p, const Ring& ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, ring[i], ring[(i + 1) % n])) return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[i];
        const Point& b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool point_in_polygon(const Point& p, const PolygonGeom& poly) {
    const std::size_t n = poly.exterior.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, poly.exterior[i], poly.exterior[(i + 1) % n])) {
            return true;
        }
    }
    for (const Ring& h : poly.holes) {
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (point_on_segment(p, h[i], h[(i + 1) % h.size()])) return true;
        }
    }
    if (!point_in_ring(p, poly.exterior)) return false;
    for (const Ring& h : poly.holes) {
        if (point_in_ring(p, h)) return false;  // strictly interior to the hole
    }
    return true;
}

bool point_in_any_polygon(const Point& p, const std::vector<PolygonGeom>& polys) {
    for (const PolygonGeom& poly : polys) {
        if (point_in_polygon(p, poly)) return true;
    }
    return false;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len_sq = dx * dx + dy * dy;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double qx = a.x + t * dx, qy = a.y + t * dy;
    return std::hypot(p.x - qx, p.y - qy);
}

double distance_to_polygons(const Point& p, const std::vector<PolygonGeom>& polys) {
    if (point_in_any_polygon(p, polys)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](const Ring& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            best = std::min(best,
                            point_segment_distance(p, ring[i],
                                                   ring[(i + 1) % ring.size()]));
        }
    };
    for (const PolygonGeom& poly : polys) {
        visit(poly.exterior);
        for (const Ring& h : poly.holes) visit(h);
    }
    return best;
}

void collect_crossings(const Point& a, const Point& b, const Ring& ring,
                       std::vector<double>& ts) {
    const double rx = b.x - a.x, ry = b.y - a.y;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& c = ring[i];
        const Point& d = ring[(i + 1) % n];
        const double sx = d.x - c.x, sy = d.y - c.y;
        const double denom = rx * sy - ry * sx;
        if (denom == 0.0) continue;  // parallel or collinear
        const double qx = c.x - a.x, qy = c.y - a.y;
        const double t = (qx * sy - qy * sx) / denom;
        const double u = (qx * ry - qy * rx) / denom;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) ts.push_back(t);
    }
}

void collect_crossings(const Point& a, const Point& b,
                       const std::vector<PolygonGeom>& polys,
                       std::vector<double>& ts) {
    for (const PolygonGeom& poly : polys) {
        collect_crossings(a, b, poly.exterior, ts);
        for (const Ring& h : poly.holes) collect_crossings(a, b, h, ts);
    }
}

}  // namespace floodfuse::geom
