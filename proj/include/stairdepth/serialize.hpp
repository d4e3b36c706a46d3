#pragma once

#include "stairdepth/covering.hpp"
#include "stairdepth/depth.hpp"
#include "stairdepth/pipeline.hpp"

#include <json.hpp>

namespace stairdepth {

using json = nlohmann::json;

inline json to_json(const Rat& r) { return rat_to_string(r); }

inline json to_json(const Point& p) {
    json a = json::array();
    for (const Rat& c : p) a.push_back(rat_to_string(c));
    return a;
}

inline json to_json(const IndexSet& I) {
    json a = json::array();
    for (int i : I.members()) a.push_back(i);
    return a;
}

inline json to_json(const StairHalfspace& H) {
    return json{{"vertex", to_json(H.vertex)}, {"index_set", to_json(H.index_set)}};
}

inline json to_json(const CoveringFamily& fam) {
    json members = json::array();
    for (const auto& H : fam.members) members.push_back(to_json(H));
    json anchors = json::array();
    for (const auto& a : fam.anchors) anchors.push_back(to_json(a));
    return json{{"members", members}, {"delta", fam.delta}, {"anchors", anchors}};
}

inline json to_json(const EuclideanHalfspace& g) {
    return json{{"normal", to_json(g.normal)}, {"offset", rat_to_string(g.offset)}};
}

inline json to_json(const AffineFlat& f) {
    json dirs = json::array();
    for (const auto& v : f.directions) dirs.push_back(to_json(v));
    return json{{"base", to_json(f.base)}, {"directions", dirs}};
}

inline json to_json(const FamilyCertificate& cert) {
    json j{{"pass", cert.pass}, {"message", cert.message}};
    j["cells_checked"] = cert.cover.cells_checked;
    if (cert.cover.violating_cell) {
        j["violating_cell"] = to_json(*cert.cover.violating_cell);
        j["observed_multiplicity"] = cert.cover.observed_multiplicity;
    }
    return j;
}

inline json to_json(const LineCertificate& cert) {
    json j{{"line", to_json(cert.line)},
           {"trivial", cert.trivial},
           {"halfspace", to_json(cert.h3)},
           {"count_h2", cert.count_h2},
           {"count_h3", cert.count_h3}};
    if (!cert.trivial) {
        j["family"] = to_json(cert.family);
        j["chosen_member"] = to_json(*cert.chosen);
        j["member_volume"] = rat_to_string(cert.member_volume);
        j["unit_vertex"] = to_json(cert.unit_vertex);
        j["stretched_vertex"] = to_json(cert.stretched_vertex);
        j["outward_steps"] = cert.outward_steps;
        j["rational_slope_halfspace"] = to_json(*cert.h2);
    }
    return j;
}

inline Point point_from_json(const json& a) {
    Point p;
    for (const auto& c : a) p.push_back(rat_from_string(c.get<std::string>()));
    return p;
}

/// Point set file: {"points": [["p/q", ...], ...]}.
inline std::vector<Point> point_set_from_json(const json& j) {
    std::vector<Point> S;
    for (const auto& row : j.at("points")) S.push_back(point_from_json(row));
    return S;
}

}  // namespace stairdepth
