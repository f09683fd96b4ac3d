#include "floodfuse/vector_layer.hpp"

#include "floodfuse/errors.hpp"

namespace floodfuse {

std::string Feature::name_or(const std::string& key,
                             const std::string& fallback) const {
    const auto it = attributes.find(key);
    if (it == attributes.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    const double v = std::get<double>(it->second);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void VectorLayer::validate() const {
    for (const Feature& f : features) {
        for (const auto& line : f.lines) {
            if (line.size() < 2) {
                throw InvalidArgumentError("polyline with fewer than 2 vertices");
            }
        }
        for (const auto& poly : f.polygons) {
            if (poly.exterior.size() < 3) {
                throw InvalidArgumentError("polygon ring with fewer than 3 vertices");
            }
            for (const auto& h : poly.holes) {
                if (h.size() < 3) {
                    throw InvalidArgumentError("polygon ring with fewer than 3 vertices");
                }
            }
        }
    }
}

bool crs_is_geographic(const std::string& crs) {
    if (crs == "CRS84" || crs == "OGC:CRS84") return true;
    if (crs.rfind("EPSG:", 0) == 0) {
        try {
            const int code = std::stoi(crs.substr(5));
            return code >= 4000 && code <= 4999;
        } catch (const std::exception&) {
            return false;
        }
    }
    return false;
}

}  // namespace floodfuse
