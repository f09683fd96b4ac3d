#include "floodfuse/geo.hpp"

#include <cstdio>

namespace floodfuse {

std::string to_string(Sensor s) {
    switch (s) {
        case Sensor::Sentinel1: return "SENTINEL1";
        case Sensor::Sentinel2: return "SENTINEL2";
        case Sensor::Landsat9: return "LANDSAT9";
    }
    return "?";
}

Sensor sensor_from_string(const std::string& s) {
    if (s == "SENTINEL1" || s == "s1") return Sensor::Sentinel1;
    if (s == "SENTINEL2" || s == "s2") return Sensor::Sentinel2;
    if (s == "LANDSAT9" || s == "l9") return Sensor::Landsat9;
    throw InvalidArgumentError("unknown sensor: " + s);
}

std::string to_string(Polarization p) {
    return p == Polarization::VH ? "VH" : "VV";
}

std::string to_string(BandName b) {
    switch (b) {
        case BandName::Green: return "GREEN";
        case BandName::Nir: return "NIR";
        case BandName::VH: return "VH";
        case BandName::VV: return "VV";
    }
    return "?";
}

// Howard Hinnant's days-from-civil algorithm; exact over the full int range.
std::int64_t Date::to_days() const {
    std::int64_t y = year;
    const std::int64_t m = month;
    const std::int64_t d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date Date::from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

static bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

Date Date::parse(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3 ||
        iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw InvalidArgumentError("bad date (want YYYY-MM-DD): '" + iso + "'");
    }
    static const int mdays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1 ||
        d > (m == 2 && is_leap(y) ? 29 : mdays[m - 1])) {
        throw InvalidArgumentError("bad date: '" + iso + "'");
    }
    return Date{y, m, d};
}

std::string Date::to_iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

void SceneMeta::validate() const {
    if (sensor == Sensor::Sentinel1) {
        const bool vh = band_map.count(BandName::VH) > 0;
        const bool vv = band_map.count(BandName::VV) > 0;
        if (vh == vv) {
            throw InvalidArgumentError(
                "SAR scene must map exactly one polarization (VH or VV)");
        }
        if (band_map.count(BandName::Green) || band_map.count(BandName::Nir)) {
            throw InvalidArgumentError("SAR scene cannot map optical bands");
        }
    } else {
        if (!band_map.count(BandName::Green) || !band_map.count(BandName::Nir)) {
            throw InvalidArgumentError("optical scene must map GREEN and NIR");
        }
    }
}

}  // namespace floodfuse
