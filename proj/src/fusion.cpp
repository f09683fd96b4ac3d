#include "floodfuse/fusion.hpp"

#include <algorithm>
#include <fstream>

#include "floodfuse/errors.hpp"
#include "floodfuse/parallel.hpp"

namespace floodfuse {

FuseRule fuse_rule_from_string(const std::string& s) {
    if (s == "intersect") return FuseRule::Intersect;
    if (s == "majority") return FuseRule::Majority;
    if (s == "union") return FuseRule::Union;
    throw InvalidArgumentError("unknown fusion rule: " + s);
}

std::string to_string(FuseRule r) {
    switch (r) {
        case FuseRule::Intersect: return "intersect";
        case FuseRule::Majority: return "majority";
        default: return "union";
    }
}

FloodMask fuse(std::span<const FloodMask> masks, FuseRule rule) {
    if (masks.empty()) throw InvalidArgumentError("fuse of zero masks");
    for (const FloodMask& m : masks) {
        if (!(m.grid() == masks.front().grid())) {
            throw GridMismatchError("fusion inputs are not on the same grid");
        }
    }

    FloodMask out(masks.front().grid(), MaskState::NoObs);
    parallel_for(out.grid().cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        auto st = out.states();
        for (std::int64_t i = i0; i < i1; ++i) {
            int observed = 0, flooded = 0;
            for (const FloodMask& m : masks) {
                const MaskState s = m.states()[static_cast<std::size_t>(i)];
                if (s == MaskState::NoObs) continue;
                ++observed;
                flooded += s == MaskState::Flooded;
            }
            if (observed == 0) continue;  // stays NO_OBS
            bool wet = false;
            switch (rule) {
                case FuseRule::Intersect: wet = flooded == observed; break;
                case FuseRule::Majority: wet = 2 * flooded > observed; break;
                case FuseRule::Union: wet = flooded > 0; break;
            }
            st[i] = wet ? MaskState::Flooded : MaskState::Dry;
        }
    });

    for (const FloodMask& m : masks) {
        out.provenance().insert(m.provenance().begin(), m.provenance().end());
        if (m.date_range()) {
            if (!out.date_range()) {
                out.date_range() = m.date_range();
            } else {
                out.date_range()->start =
                    std::min(out.date_range()->start, m.date_range()->start);
                out.date_range()->end =
                    std::max(out.date_range()->end, m.date_range()->end);
            }
        }
    }
    return out;
}

CoverageTable availability(std::span<const SceneMeta> scenes,
                           const DateRange& period) {
    if (period.end < period.start) {
        throw InvalidArgumentError("coverage period ends before it starts");
    }
    CoverageTable table;
    table.period = period;
    table.sensors = {to_string(Sensor::Sentinel1), to_string(Sensor::Sentinel2),
                     to_string(Sensor::Landsat9)};
    for (const auto& s : table.sensors) table.days_per_sensor[s] = 0;

    for (std::int64_t d = period.start.to_days(); d <= period.end.to_days(); ++d) {
        CoverageTable::Day day;
        day.date = Date::from_days(d);
        day.seen.assign(table.sensors.size(), false);
        for (const SceneMeta& s : scenes) {
            if (s.acquisition_date == day.date) {
                const std::string name = to_string(s.sensor);
                for (std::size_t i = 0; i < table.sensors.size(); ++i) {
                    if (table.sensors[i] == name) day.seen[i] = true;
                }
            }
        }
        for (std::size_t i = 0; i < table.sensors.size(); ++i) {
            if (day.seen[i]) {
                ++table.days_per_sensor[table.sensors[i]];
                day.any = true;
            }
        }
        table.combined_days += day.any;
        table.days.push_back(std::move(day));
    }
    return table;
}

void write_coverage_csv(const CoverageTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "date";
    for (const auto& s : table.sensors) out << ',' << s;
    out << ",combined\n";
    for (const auto& day : table.days) {
        out << day.date.to_iso();
        for (bool b : day.seen) out << ',' << (b ? 1 : 0);
        out << ',' << (day.any ? 1 : 0) << '\n';
    }
    out << "TOTAL";
    for (const auto& s : table.sensors) out << ',' << table.days_per_sensor.at(s);
    out << ',' << table.combined_days << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace floodfuse
