#include "floodfuse/geojson.hpp"

#include <algorithm>
#include <fstream>

#include "floodfuse/errors.hpp"
#include "json.hpp"

namespace floodfuse {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

geom::Point parse_position(const json& pos) {
    if (!pos.is_array() || pos.size() < 2) {
        throw FormatError("GeoJSON position must be [x, y]");
    }
    return geom::Point{pos[0].get<double>(), pos[1].get<double>()};
}

std::vector<geom::Point> parse_line(const json& coords) {
    std::vector<geom::Point> line;
    for (const auto& p : coords) line.push_back(parse_position(p));
    return line;
}

geom::Ring parse_ring(const json& coords) {
    geom::Ring ring = parse_line(coords);
    if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
    return ring;
}

geom::PolygonGeom parse_polygon(const json& coords) {
    geom::PolygonGeom poly;
    bool first = true;
    for (const auto& ring : coords) {
        if (first) {
            poly.exterior = parse_ring(ring);
            first = false;
        } else {
            poly.holes.push_back(parse_ring(ring));
        }
    }
    return poly;
}

void parse_geometry(const json& g, Feature& f, GeometryKind& kind, bool& kind_set) {
    const std::string type = g.value("type", "");
    const auto& coords = g.at("coordinates");
    auto set_kind = [&](GeometryKind k) {
        if (kind_set && kind != k) {
            throw FormatError("GeoJSON layer mixes geometry kinds");
        }
        kind = k;
        kind_set = true;
    };
    if (type == "Point") {
        set_kind(GeometryKind::Point);
        f.points.push_back(parse_position(coords));
    } else if (type == "MultiPoint") {
        set_kind(GeometryKind::Point);
        for (const auto& p : coords) f.points.push_back(parse_position(p));
    } else if (type == "LineString") {
        set_kind(GeometryKind::Polyline);
        f.lines.push_back(parse_line(coords));
    } else if (type == "MultiLineString") {
        set_kind(GeometryKind::Polyline);
        for (const auto& l : coords) f.lines.push_back(parse_line(l));
    } else if (type == "Polygon") {
        set_kind(GeometryKind::Polygon);
        f.polygons.push_back(parse_polygon(coords));
    } else if (type == "MultiPolygon") {
        set_kind(GeometryKind::Polygon);
        for (const auto& p : coords) f.polygons.push_back(parse_polygon(p));
    } else {
        throw FormatError("unsupported GeoJSON geometry type: " + type);
    }
}

std::string parse_crs(const json& root) {
    if (!root.contains("crs")) return "EPSG:4326";
    const auto& crs = root["crs"];
    std::string name = crs.is_object()
                           ? crs.value("properties", json::object()).value("name", "")
                           : crs.get<std::string>();
    if (name.empty()) return "EPSG:4326";
    if (name.find("CRS84") != std::string::npos) return "EPSG:4326";
    const auto pos = name.rfind("EPSG:");
    if (pos != std::string::npos) {
        std::string code = name.substr(pos + 5);
        while (!code.empty() && code.front() == ':') code.erase(code.begin());
        return "EPSG:" + code;
    }
    return name;
}

ordered_json position(const geom::Point& p) { return ordered_json::array({p.x, p.y}); }

ordered_json ring_closed(const geom::Ring& ring, bool want_ccw) {
    ordered_json arr = ordered_json::array();
    const bool is_ccw = geom::ring_signed_area2(ring) > 0.0;
    if (is_ccw == want_ccw) {
        for (const auto& p : ring) arr.push_back(position(p));
        arr.push_back(position(ring.front()));
    } else {
        for (auto it = ring.rbegin(); it != ring.rend(); ++it) {
            arr.push_back(position(*it));
        }
        arr.push_back(position(ring.back()));
    }
    return arr;
}

ordered_json geometry_json(const Feature& f, GeometryKind kind) {
    ordered_json g;
    if (kind == GeometryKind::Point) {
        if (f.points.size() == 1) {
            g["type"] = "Point";
            g["coordinates"] = position(f.points[0]);
        } else {
            g["type"] = "MultiPoint";
            auto& arr = g["coordinates"] = ordered_json::array();
            for (const auto& p : f.points) arr.push_back(position(p));
        }
    } else if (kind == GeometryKind::Polyline) {
        if (f.lines.size() == 1) {
            g["type"] = "LineString";
            auto& arr = g["coordinates"] = ordered_json::array();
            for (const auto& p : f.lines[0]) arr.push_back(position(p));
        } else {
            g["type"] = "MultiLineString";
            auto& arr = g["coordinates"] = ordered_json::array();
            for (const auto& line : f.lines) {
                ordered_json l = ordered_json::array();
                for (const auto& p : line) l.push_back(position(p));
                arr.push_back(std::move(l));
            }
        }
    } else {
        auto poly_json = [](const geom::PolygonGeom& poly) {
            ordered_json rings = ordered_json::array();
            rings.push_back(ring_closed(poly.exterior, true));
            for (const auto& h : poly.holes) rings.push_back(ring_closed(h, false));
            return rings;
        };
        if (f.polygons.size() == 1) {
            g["type"] = "Polygon";
            g["coordinates"] = poly_json(f.polygons[0]);
        } else {
            g["type"] = "MultiPolygon";
            auto& arr = g["coordinates"] = ordered_json::array();
            for (const auto& poly : f.polygons) arr.push_back(poly_json(poly));
        }
    }
    return g;
}

}  // namespace

VectorLayer read_geojson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file: " + path);
    json root = json::parse(in, nullptr, false);
    if (root.is_discarded()) throw FormatError(path + ": not valid JSON");

    VectorLayer layer;
    layer.crs = parse_crs(root);
    GeometryKind kind = GeometryKind::Point;
    bool kind_set = false;

    auto add_feature = [&](const json& fj) {
        Feature f;
        if (fj.contains("properties") && fj["properties"].is_object()) {
            for (const auto& [k, v] : fj["properties"].items()) {
                if (v.is_number()) {
                    f.attributes[k] = v.get<double>();
                } else if (v.is_string()) {
                    f.attributes[k] = v.get<std::string>();
                } else if (v.is_boolean()) {
                    f.attributes[k] = v.get<bool>() ? 1.0 : 0.0;
                }  // null and nested values are dropped
            }
        }
        const json& g = fj.contains("geometry") ? fj["geometry"] : fj;
        if (g.is_null()) return;
        parse_geometry(g, f, kind, kind_set);
        layer.features.push_back(std::move(f));
    };

    const std::string type = root.value("type", "");
    if (type == "FeatureCollection") {
        for (const auto& fj : root.value("features", json::array())) add_feature(fj);
    } else if (type == "Feature") {
        add_feature(root);
    } else if (!type.empty()) {
        add_feature(json{{"geometry", root}});
    } else {
        throw FormatError(path + ": not a GeoJSON document");
    }

    if (kind_set) layer.kind = kind;
    layer.validate();
    return layer;
}

void write_geojson(const VectorLayer& layer, const std::string& path) {
    ordered_json root;
    root["type"] = "FeatureCollection";
    if (layer.crs != "EPSG:4326" && !layer.crs.empty()) {
        root["crs"] = {{"type", "name"},
                       {"properties", {{"name", "urn:ogc:def:crs:" +
                                                    [&] {
                                                        std::string c = layer.crs;
                                                        const auto p = c.find(':');
                                                        if (p != std::string::npos) {
                                                            c = c.substr(0, p) + "::" +
                                                                c.substr(p + 1);
                                                        }
                                                        return c;
                                                    }()}}}};
    }
    auto& features = root["features"] = ordered_json::array();
    for (const Feature& f : layer.features) {
        ordered_json fj;
        fj["type"] = "Feature";
        ordered_json props = ordered_json::object();
        for (const auto& [k, v] : f.attributes) {
            if (const auto* s = std::get_if<std::string>(&v)) {
                props[k] = *s;
            } else {
                props[k] = std::get<double>(v);
            }
        }
        fj["properties"] = std::move(props);
        fj["geometry"] = geometry_json(f, layer.kind);
        features.push_back(std::move(fj));
    }

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << root.dump(1, '\t') << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace floodfuse
