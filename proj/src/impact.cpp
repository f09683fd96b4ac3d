#include "floodfuse/impact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "floodfuse/errors.hpp"
#include "floodfuse/wgs84.hpp"

namespace floodfuse {

namespace {

void require_crs(const std::string& a, const std::string& b, const char* what) {
    if (a != b) {
        throw CrsMismatchError(std::string(what) + ": CRS mismatch ('" + a +
                               "' vs '" + b + "')");
    }
}

bool in_zone(const geom::Point& p, const Feature& zone) {
    return geom::point_in_any_polygon(p, zone.polygons);
}

std::vector<geom::PolygonGeom> flatten_polygons(const VectorLayer& layer) {
    std::vector<geom::PolygonGeom> polys;
    for (const Feature& f : layer.features) {
        polys.insert(polys.end(), f.polygons.begin(), f.polygons.end());
    }
    return polys;
}

double segment_length_m(const geom::Point& a, const geom::Point& b,
                        bool geographic) {
    return geographic ? wgs84::distance_m(a.x, a.y, b.x, b.y)
                      : std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

double path_length_km(std::span<const geom::Point> vertices,
                      const std::string& crs) {
    const bool geographic = crs_is_geographic(crs);
    double meters = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        meters += segment_length_m(vertices[i - 1], vertices[i], geographic);
    }
    return meters / 1000.0;
}

std::vector<PopulationExposure> affected_population(const FloodMask& mask,
                                                    const Raster& population,
                                                    const VectorLayer& zones) {
    require_crs(mask.grid().crs, population.grid().crs, "population raster");
    require_crs(mask.grid().crs, zones.crs, "zones layer");
    if (zones.kind != GeometryKind::Polygon) {
        throw InvalidArgumentError("zones must be polygons");
    }
    for (const double v : population.samples()) {
        if (!std::isnan(v) && v < 0.0) {
            throw InvalidArgumentError("population raster holds negative values");
        }
    }

    const GeoGrid& fine = mask.grid();
    const GeoGrid& coarse = population.grid();
    // one fine cell's share of the population cell it falls in
    const double frac = fine.cell_area() / coarse.cell_area();

    std::vector<PopulationExposure> out;
    out.reserve(zones.features.size());
    for (const Feature& zone : zones.features) {
        PopulationExposure e;
        for (int row = 0; row < coarse.height; ++row) {
            const double y = coarse.row_to_y(row);
            for (int col = 0; col < coarse.width; ++col) {
                const double v = population.at(col, row);
                if (std::isnan(v)) continue;
                if (in_zone({coarse.col_to_x(col), y}, zone)) e.total += v;
            }
        }
        for (int row = 0; row < fine.height; ++row) {
            const double y = fine.row_to_y(row);
            const double prow_f = coarse.y_to_row(y);
            const int prow = static_cast<int>(std::floor(prow_f + 0.5));
            if (prow < 0 || prow >= coarse.height) continue;
            for (int col = 0; col < fine.width; ++col) {
                if (mask.at(col, row) != MaskState::Flooded) continue;
                const double x = fine.col_to_x(col);
                const int pcol =
                    static_cast<int>(std::floor(coarse.x_to_col(x) + 0.5));
                if (pcol < 0 || pcol >= coarse.width) continue;
                const double v = population.at(pcol, prow);
                if (std::isnan(v)) continue;
                if (in_zone({x, y}, zone)) e.affected += v * frac;
            }
        }
        out.push_back(e);
    }
    return out;
}

std::vector<RoadExposure> affected_roads(const VectorLayer& flood_polygons,
                                         const VectorLayer& roads,
                                         const VectorLayer& zones) {
    if (roads.kind != GeometryKind::Polyline) {
        throw InvalidArgumentError("roads must be polylines");
    }
    if (zones.kind != GeometryKind::Polygon ||
        flood_polygons.kind != GeometryKind::Polygon) {
        throw InvalidArgumentError("zones and flood layers must be polygons");
    }
    require_crs(roads.crs, zones.crs, "zones layer");
    require_crs(roads.crs, flood_polygons.crs, "flood layer");
    const bool geographic = crs_is_geographic(roads.crs);
    const auto floods = flatten_polygons(flood_polygons);

    std::vector<RoadExposure> out;
    out.reserve(zones.features.size());
    std::vector<double> ts;
    for (const Feature& zone : zones.features) {
        RoadExposure e;
        for (const Feature& road : roads.features) {
            for (const auto& line : road.lines) {
                for (std::size_t i = 1; i < line.size(); ++i) {
                    const geom::Point a = line[i - 1];
                    const geom::Point b = line[i];
                    ts.clear();
                    ts.push_back(0.0);
                    ts.push_back(1.0);
                    for (const auto& poly : zone.polygons) {
                        geom::collect_crossings(a, b, poly.exterior, ts);
                        for (const auto& hole : poly.holes) {
                            geom::collect_crossings(a, b, hole, ts);
                        }
                    }
                    geom::collect_crossings(a, b, floods, ts);
                    std::sort(ts.begin(), ts.end());
                    for (std::size_t k = 1; k < ts.size(); ++k) {
                        const double t0 = ts[k - 1], t1 = ts[k];
                        if (t1 - t0 <= 1e-12) continue;
                        const double tm = (t0 + t1) / 2.0;
                        const geom::Point mid{a.x + tm * (b.x - a.x),
                                              a.y + tm * (b.y - a.y)};
                        if (!in_zone(mid, zone)) continue;
                        const geom::Point p0{a.x + t0 * (b.x - a.x),
                                             a.y + t0 * (b.y - a.y)};
                        const geom::Point p1{a.x + t1 * (b.x - a.x),
                                             a.y + t1 * (b.y - a.y)};
                        const double km =
                            segment_length_m(p0, p1, geographic) / 1000.0;
                        e.total_km += km;
                        if (geom::point_in_any_polygon(mid, floods)) {
                            e.affected_km += km;
                        }
                    }
                }
            }
        }
        out.push_back(e);
    }
    return out;
}

VectorLayer affected_points(const VectorLayer& flood_polygons,
                            const VectorLayer& points, double buffer_m) {
    if (points.kind != GeometryKind::Point) {
        throw InvalidArgumentError("points layer expected");
    }
    if (flood_polygons.kind != GeometryKind::Polygon) {
        throw InvalidArgumentError("flood layer must be polygons");
    }
    require_crs(points.crs, flood_polygons.crs, "flood layer");
    if (buffer_m < 0.0) throw InvalidArgumentError("buffer must be >= 0");
    const bool geographic = crs_is_geographic(points.crs);
    const auto floods = flatten_polygons(flood_polygons);

    VectorLayer out;
    out.kind = GeometryKind::Point;
    out.crs = points.crs;
    for (const Feature& f : points.features) {
        for (const geom::Point& p : f.points) {
            bool hit;
            if (buffer_m == 0.0) {
                hit = geom::point_in_any_polygon(p, floods);
            } else if (!geographic) {
                hit = geom::distance_to_polygons(p, floods) <= buffer_m;
            } else {
                // local tangent-plane meters centered on the point
                const auto scale = wgs84::local_scale(p.y);
                std::vector<geom::PolygonGeom> scaled = floods;
                auto rescale = [&](geom::Ring& ring) {
                    for (auto& v : ring) {
                        v = {(v.x - p.x) * scale.m_per_deg_lon,
                             (v.y - p.y) * scale.m_per_deg_lat};
                    }
                };
                for (auto& poly : scaled) {
                    rescale(poly.exterior);
                    for (auto& h : poly.holes) rescale(h);
                }
                hit = geom::distance_to_polygons({0.0, 0.0}, scaled) <= buffer_m;
            }
            if (hit) {
                Feature kept;
                kept.points = {p};
                kept.attributes = f.attributes;
                out.features.push_back(std::move(kept));
            }
        }
    }
    return out;
}

std::vector<ZoneStat> assemble_zone_stats(
    const std::vector<std::string>& zone_names,
    const std::vector<PopulationExposure>& population,
    const std::vector<RoadExposure>& roads,
    const std::vector<std::int64_t>& total_schools,
    const std::vector<std::int64_t>& affected_schools) {
    const std::size_t n = zone_names.size();
    if (population.size() != n || roads.size() != n || total_schools.size() != n ||
        affected_schools.size() != n) {
        throw InvalidArgumentError("per-zone result lists do not match the zone set");
    }
    std::vector<ZoneStat> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].zone = zone_names[i];
        rows[i].total_population = population[i].total;
        rows[i].affected_population = population[i].affected;
        rows[i].total_road_km = roads[i].total_km;
        rows[i].affected_road_km = roads[i].affected_km;
        rows[i].total_schools = total_schools[i];
        rows[i].affected_schools = affected_schools[i];
    }
    return rows;
}

ImpactReport build_report(std::vector<ZoneStat> rows) {
    // area-fraction rounding can nudge affected a hair past total
    constexpr double kSlack = 1e-9;
    for (const ZoneStat& r : rows) {
        if (r.affected_population > r.total_population * (1.0 + kSlack) ||
            r.affected_road_km > r.total_road_km * (1.0 + kSlack) ||
            r.affected_schools > r.total_schools) {
            throw InvalidArgumentError("zone '" + r.zone +
                                       "': affected exceeds total");
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ZoneStat& a, const ZoneStat& b) {
        if (a.affected_population != b.affected_population) {
            return a.affected_population > b.affected_population;
        }
        return a.zone < b.zone;
    });

    ImpactReport report;
    report.totals.zone = "TOTAL";
    for (const ZoneStat& r : rows) {
        report.totals.total_population += r.total_population;
        report.totals.affected_population += r.affected_population;
        report.totals.total_road_km += r.total_road_km;
        report.totals.affected_road_km += r.affected_road_km;
        report.totals.total_schools += r.total_schools;
        report.totals.affected_schools += r.affected_schools;
    }
    report.affected_population_share_pct =
        report.totals.total_population > 0.0
            ? 100.0 * report.totals.affected_population /
                  report.totals.total_population
            : 0.0;
    report.rows = std::move(rows);
    return report;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void write_row(std::ofstream& out, const ZoneStat& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%.2f,%.2f,%.2f,%.2f,%lld,%lld\n",
                  r.total_population, r.affected_population, r.total_road_km,
                  r.affected_road_km, static_cast<long long>(r.total_schools),
                  static_cast<long long>(r.affected_schools));
    out << csv_field(r.zone) << buf;
}

}  // namespace

void write_report_csv(const ImpactReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "Study area (districts),Actual population,Affected population,"
           "Actual road length (km),Affected road length (km),"
           "Total schools,Affected schools\n";
    for (const ZoneStat& r : report.rows) write_row(out, r);
    write_row(out, report.totals);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", report.affected_population_share_pct);
    out << "Affected population share (%)," << buf << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace floodfuse
