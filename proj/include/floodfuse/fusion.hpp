#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "floodfuse/raster.hpp"

namespace floodfuse {

enum class FuseRule { Intersect, Majority, Union };

FuseRule fuse_rule_from_string(const std::string& s);
std::string to_string(FuseRule r);

/// Pixel-wise fusion over the inputs that observed each cell (NO_OBS inputs
/// sit the vote out):
///   Intersect - flooded iff every observing input saw water,
///   Majority  - flooded iff strictly more than half did,
///   Union     - flooded iff any did.
/// A cell with no observing input at all stays NO_OBS. Provenance is the
/// union of input provenances; the date range is their envelope.
FloodMask fuse(std::span<const FloodMask> masks, FuseRule rule);

/// Which sensors observed each day of the period, and how the union extends
/// the coverage of any single sensor.
struct CoverageTable {
    DateRange period;
    std::vector<std::string> sensors;  // column order
    /// One row per day: flags aligned with `sensors`, plus the any-sensor flag.
    struct Day {
        Date date;
        std::vector<bool> seen;
        bool any = false;
    };
    std::vector<Day> days;
    std::map<std::string, int> days_per_sensor;
    int combined_days = 0;
};

CoverageTable availability(std::span<const SceneMeta> scenes, const DateRange& period);

void write_coverage_csv(const CoverageTable& table, const std::string& path);

}  // namespace floodfuse
