#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "floodfuse/raster.hpp"
#include "floodfuse/vector_layer.hpp"

namespace floodfuse {

/// Traces the 8-connected FLOODED regions of a mask into polygons, one
/// feature per region (multiple rings where regions touch only diagonally,
/// interior rings for enclosed dry/no-obs islands). Total polygon area
/// equals flooded-cell count times cell area. Attributes: id, cells, area.
VectorLayer vectorize(const FloodMask& mask);

struct PopulationExposure {
    double total = 0.0;
    double affected = 0.0;
};

/// Zonal population exposure. Totals sum the population cells whose centers
/// fall in the zone; affected redistributes each population cell over the
/// fine flood grid by area fraction, counting only flooded fine cells whose
/// centers fall in the zone. Accumulation is sequential row-major in 64-bit,
/// so results are reproducible bit for bit.
std::vector<PopulationExposure> affected_population(const FloodMask& mask,
                                                    const Raster& population,
                                                    const VectorLayer& zones);

struct RoadExposure {
    double total_km = 0.0;
    double affected_km = 0.0;
};

/// Road length per zone, total and within flood polygons. Lengths are
/// geodesic (WGS84) for geographic layers and planar meters otherwise.
std::vector<RoadExposure> affected_roads(const VectorLayer& flood_polygons,
                                         const VectorLayer& roads,
                                         const VectorLayer& zones);

/// Points within buffer_m of any flood polygon (0 = point-in-polygon with
/// the boundary counting as inside). Attributes are preserved.
VectorLayer affected_points(const VectorLayer& flood_polygons,
                            const VectorLayer& points, double buffer_m = 0.0);

/// Length of a vertex path, for geodesy checks and CLI reporting.
double path_length_km(std::span<const geom::Point> vertices,
                      const std::string& crs);

struct ZoneStat {
    std::string zone;
    double total_population = 0.0;
    double affected_population = 0.0;
    double total_road_km = 0.0;
    double affected_road_km = 0.0;
    std::int64_t total_schools = 0;
    std::int64_t affected_schools = 0;
};

struct ImpactReport {
    std::vector<ZoneStat> rows;  // sorted by affected population, descending
    ZoneStat totals;
    double affected_population_share_pct = 0.0;
};

/// Zips the per-operation results into rows; the zone lists must agree.
std::vector<ZoneStat> assemble_zone_stats(
    const std::vector<std::string>& zone_names,
    const std::vector<PopulationExposure>& population,
    const std::vector<RoadExposure>& roads,
    const std::vector<std::int64_t>& total_schools,
    const std::vector<std::int64_t>& affected_schools);

/// Sorts, sums, and computes the affected-population share. Every affected
/// value must stay within its total.
ImpactReport build_report(std::vector<ZoneStat> rows);

/// Fixed-header CSV (Table-style column names), locale-independent, two
/// decimals for people and kilometers.
void write_report_csv(const ImpactReport& report, const std::string& path);

}  // namespace floodfuse
