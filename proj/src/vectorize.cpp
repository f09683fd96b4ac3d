// Boundary tracing of flooded regions. Directed boundary edges keep the
// flooded cell on the left while walking pixel space (y down); at the
// four-valent corner where two cells touch only diagonally, the trace turns
// left so every ring stays simple. Exterior rings then close clockwise in
// pixel space, which flips to the counter-clockwise convention once y maps
// to northing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "components.hpp"
#include "floodfuse/errors.hpp"
#include "floodfuse/impact.hpp"

namespace floodfuse {

namespace {

struct DirEdge {
    int x0, y0, x1, y1;
    std::int32_t label;
    bool used = false;
};

struct TracedRing {
    std::int32_t label = 0;
    std::vector<std::array<int, 2>> pixel_vertices;  // closed implicitly
    double signed_area2 = 0.0;  // pixel-space shoelace (y down)
    geom::Point probe;          // midpoint of the first edge, pixel coords
};

std::int64_t vertex_key(int vx, int vy, int width) {
    return static_cast<std::int64_t>(vy) * (width + 2) + vx;
}

}  // namespace

VectorLayer vectorize(const FloodMask& mask) {
    const int w = mask.width(), h = mask.height();
    std::vector<std::int32_t> labels;
    const auto sizes = detail::label_flooded_components(mask, labels);

    std::vector<DirEdge> edges;
    std::unordered_map<std::int64_t, std::array<std::int32_t, 2>> outgoing;
    auto add_edge = [&](int x0, int y0, int x1, int y1, std::int32_t label) {
        const auto key = vertex_key(x0, y0, w);
        auto [it, fresh] = outgoing.try_emplace(key, std::array<std::int32_t, 2>{-1, -1});
        auto& slots = it->second;
        slots[fresh || slots[0] < 0 ? 0 : 1] = static_cast<std::int32_t>(edges.size());
        edges.push_back(DirEdge{x0, y0, x1, y1, label});
    };

    auto flooded = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h &&
               mask.at(x, y) == MaskState::Flooded;
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!flooded(x, y)) continue;
            const std::int32_t l = labels[static_cast<std::size_t>(y) * w + x];
            if (!flooded(x, y - 1)) add_edge(x + 1, y, x, y, l);          // top
            if (!flooded(x, y + 1)) add_edge(x, y + 1, x + 1, y + 1, l);  // bottom
            if (!flooded(x - 1, y)) add_edge(x, y, x, y + 1, l);          // left
            if (!flooded(x + 1, y)) add_edge(x + 1, y + 1, x + 1, y, l);  // right
        }
    }

    std::vector<TracedRing> rings;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (edges[start].used) continue;
        TracedRing ring;
        ring.label = edges[start].label;
        ring.probe = geom::Point{(edges[start].x0 + edges[start].x1) / 2.0,
                                 (edges[start].y0 + edges[start].y1) / 2.0};
        const int home_x = edges[start].x0, home_y = edges[start].y0;
        std::int32_t cur = static_cast<std::int32_t>(start);
        ring.pixel_vertices.push_back({home_x, home_y});
        while (true) {
            DirEdge& e = edges[cur];
            e.used = true;
            if (e.x1 == home_x && e.y1 == home_y) break;
            ring.pixel_vertices.push_back({e.x1, e.y1});
            const auto& slots = outgoing.at(vertex_key(e.x1, e.y1, w));
            std::int32_t next = -1;
            if (slots[1] < 0 || edges[slots[1]].used) {
                next = slots[0];
            } else if (edges[slots[0]].used) {
                next = slots[1];
            } else {
                // four-valent corner: turn left relative to travel direction
                const int dx = e.x1 - e.x0, dy = e.y1 - e.y0;
                const int lx = dy, ly = -dx;
                const DirEdge& c0 = edges[slots[0]];
                next = (c0.x1 - c0.x0 == lx && c0.y1 - c0.y0 == ly) ? slots[0]
                                                                    : slots[1];
            }
            cur = next;
        }

        // merge collinear runs
        auto& pv = ring.pixel_vertices;
        std::vector<std::array<int, 2>> packed;
        const std::size_t n = pv.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& prev = pv[(i + n - 1) % n];
            const auto& here = pv[i];
            const auto& next = pv[(i + 1) % n];
            const int d1x = here[0] - prev[0], d1y = here[1] - prev[1];
            const int d2x = next[0] - here[0], d2y = next[1] - here[1];
            if (d1x * d2y - d1y * d2x != 0) packed.push_back(here);
        }
        pv = std::move(packed);

        double area2 = 0.0;
        for (std::size_t i = 0; i < pv.size(); ++i) {
            const auto& a = pv[i];
            const auto& b = pv[(i + 1) % pv.size()];
            area2 += static_cast<double>(a[0]) * b[1] -
                     static_cast<double>(b[0]) * a[1];
        }
        ring.signed_area2 = area2;
        rings.push_back(std::move(ring));
    }

    // pixel-space exterior rings wind clockwise (negative shoelace, y down)
    struct ExteriorRec {
        const TracedRing* ring;
        std::vector<const TracedRing*> holes;
    };
    std::vector<std::vector<ExteriorRec>> per_label(sizes.size());
    for (const TracedRing& r : rings) {
        if (r.signed_area2 < 0.0) per_label[r.label].push_back({&r, {}});
    }
    for (const TracedRing& r : rings) {
        if (r.signed_area2 < 0.0) continue;
        auto& exts = per_label[r.label];
        ExteriorRec* owner = nullptr;
        double owner_area = 0.0;
        for (auto& ext : exts) {
            geom::Ring ring;
            for (const auto& v : ext.ring->pixel_vertices) {
                ring.push_back({static_cast<double>(v[0]), static_cast<double>(v[1])});
            }
            if (geom::point_in_ring(r.probe, ring)) {
                const double area = -ext.ring->signed_area2;
                if (!owner || area < owner_area) {
                    owner = &ext;
                    owner_area = area;
                }
            }
        }
        if (!owner) throw Error("internal: hole ring without an exterior");
        owner->holes.push_back(&r);
    }

    const GeoGrid& g = mask.grid();
    auto to_crs = [&](const std::vector<std::array<int, 2>>& pv) {
        geom::Ring ring;
        ring.reserve(pv.size());
        for (const auto& v : pv) {
            ring.push_back({g.origin_x + v[0] * g.pixel_dx,
                            g.origin_y - v[1] * g.pixel_dy});
        }
        return ring;
    };

    VectorLayer layer;
    layer.kind = GeometryKind::Polygon;
    layer.crs = g.crs;
    for (std::size_t label = 0; label < per_label.size(); ++label) {
        if (per_label[label].empty()) continue;
        Feature f;
        for (const ExteriorRec& ext : per_label[label]) {
            geom::PolygonGeom poly;
            poly.exterior = to_crs(ext.ring->pixel_vertices);
            for (const TracedRing* hole : ext.holes) {
                poly.holes.push_back(to_crs(hole->pixel_vertices));
            }
            f.polygons.push_back(std::move(poly));
        }
        f.attributes["id"] = static_cast<double>(label);
        f.attributes["cells"] = static_cast<double>(sizes[label]);
        f.attributes["area"] = static_cast<double>(sizes[label]) * g.cell_area();
        layer.features.push_back(std::move(f));
    }
    return layer;
}

}  // namespace floodfuse
