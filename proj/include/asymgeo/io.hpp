#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymgeo/errors.hpp"
#include "asymgeo/polygon.hpp"

namespace asymgeo {

// Polygon interchange format: {"vertices": [[x, y], ...]}. Readers accept
// any vertex order and canonicalize through make_polygon.
inline nlohmann::json polygon_to_json(const ConvexPolygon& k) {
    nlohmann::json verts = nlohmann::json::array();
    for (Vec2 v : k.vertices()) verts.push_back({v.x, v.y});
    return nlohmann::json{{"vertices", verts}};
}

inline ConvexPolygon polygon_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("polygon JSON must be {\"vertices\": [[x,y], ...]}");
    std::vector<Vec2> pts;
    for (const auto& e : j["vertices"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError("vertex entries must be [x, y] number pairs");
        pts.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    try {
        return make_polygon(pts);
    } catch (const DegenerateInput& e) {
        throw ParseError(std::string("degenerate polygon in file: ") + e.what());
    }
}

inline void write_polygon(const std::string& path, const ConvexPolygon& k) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open for writing: " + path);
    // nlohmann emits shortest round-trip decimals, so coordinates survive.
    f << polygon_to_json(k).dump(2) << "\n";
}

inline ConvexPolygon read_polygon(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return polygon_from_json(j);
}

inline std::string format_sig(double v, int digits = 15) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

}  // namespace asymgeo
