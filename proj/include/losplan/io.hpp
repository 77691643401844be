#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "losplan/floorplan.hpp"
#include "losplan/losgraph.hpp"
#include "losplan/partition.hpp"
#include "losplan/planner.hpp"

namespace losplan {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Kind::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Error::Kind::Parse, "cannot write " + path);
    out << text;
}

inline Layout load_layout(const std::string& path, double eps_len = kDefaultEpsLen) {
    return parse_layout(read_file(path), eps_len);
}

// Unbounded lengths travel as the string "unbounded" (JSON has no infinity).
inline json length_to_json(double v) { return is_unbounded(v) ? json("unbounded") : json(v); }

inline double length_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "unbounded") return kUnbounded;
    if (!j.is_number()) throw Error(Error::Kind::Parse, "length must be a number or \"unbounded\"");
    return j.get<double>();
}

inline json config_to_json(const PlanConfig& c) {
    return {{"range_r", length_to_json(c.range_r)},
            {"msd_ds", c.msd_ds},
            {"msa_thetas_deg", c.msa_thetas},
            {"coverage_n", c.coverage_n},
            {"ht_R", length_to_json(c.ht_R)},
            {"arc_segments", c.arc_segments},
            {"eps_len", c.eps_len},
            {"eps_area", c.eps_area},
            {"seed", c.seed}};
}

inline PlanConfig config_from_json(const json& j) {
    PlanConfig c;
    try {
        if (j.contains("range_r")) c.range_r = length_from_json(j["range_r"]);
        if (j.contains("msd_ds")) c.msd_ds = j["msd_ds"].get<double>();
        if (j.contains("msa_thetas_deg")) c.msa_thetas = j["msa_thetas_deg"].get<double>();
        if (j.contains("coverage_n")) c.coverage_n = j["coverage_n"].get<int>();
        if (j.contains("ht_R")) c.ht_R = length_from_json(j["ht_R"]);
        if (j.contains("arc_segments")) c.arc_segments = j["arc_segments"].get<int>();
        if (j.contains("eps_len")) c.eps_len = j["eps_len"].get<double>();
        if (j.contains("eps_area")) c.eps_area = j["eps_area"].get<double>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw Error(Error::Kind::Parse, std::string("bad config: ") + e.what());
    }
    return c;
}

inline json deployment_to_json(const Deployment& d, const PlanReport* report = nullptr) {
    json prns = json::array();
    for (const Prn& p : d.prns) {
        prns.push_back({{"x", p.at.x}, {"y", p.at.y}, {"tier", std::string(to_string(p.tier))}, {"area", p.area}});
    }
    json counts = {{"g", d.count(Tier::Primary)}, {"g2", d.count(Tier::Secondary)}, {"g3", d.count(Tier::Trinary)}};
    if (report) counts["hidden_t"] = report->hidden.t;
    return {{"config", config_to_json(d.config)}, {"prns", prns}, {"counts", counts}};
}

inline std::string serialize_deployment(const Deployment& d, const PlanReport* report = nullptr) {
    return deployment_to_json(d, report).dump(2) + "\n";
}

inline Tier tier_from_string(const std::string& s) {
    if (s == "primary") return Tier::Primary;
    if (s == "secondary") return Tier::Secondary;
    if (s == "trinary") return Tier::Trinary;
    throw Error(Error::Kind::Parse, "unknown tier \"" + s + "\"");
}

inline Deployment parse_deployment(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Error::Kind::Parse, std::string("malformed deployment JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("prns") || !j["prns"].is_array()) {
        throw Error(Error::Kind::Parse, "deployment must be an object with a \"prns\" array");
    }
    Deployment d;
    if (j.contains("config")) d.config = config_from_json(j["config"]);
    try {
        for (const json& p : j["prns"]) {
            Prn prn;
            prn.at = {p.at("x").get<double>(), p.at("y").get<double>()};
            if (p.contains("tier")) prn.tier = tier_from_string(p["tier"].get<std::string>());
            if (p.contains("area")) prn.area = p["area"].get<int>();
            d.prns.push_back(prn);
        }
    } catch (const json::exception& e) {
        throw Error(Error::Kind::Parse, std::string("bad PRN entry: ") + e.what());
    }
    return d;
}

inline json triangles_to_json(const std::vector<Triangle>& tris, double R) {
    json arr = json::array();
    for (const Triangle& t : tris) {
        json v = json::array();
        for (const Point& p : t.vertices) v.push_back({p.x, p.y});
        arr.push_back({{"id", t.id}, {"vertices", v}});
    }
    return {{"ht_R", length_to_json(R)}, {"count", tris.size()}, {"triangles", arr}};
}

inline json graph_to_json(const LosGraph& g) {
    json adj = json::object();
    for (int n : g.nodes()) adj[std::to_string(n)] = g.neighbors(n);
    return {{"tier", std::string(to_string(g.tier()))}, {"nodes", g.nodes()}, {"edges", g.edge_count()}, {"adjacency", adj}};
}

inline json cover_to_json(const CliqueCover& c) {
    json cl = json::array();
    for (std::size_t k = 0; k < c.size(); ++k) cl.push_back({{"members", c.cliques[k]}, {"area", c.areas[k].area()}});
    return {{"tier", std::string(to_string(c.tier))}, {"cliques", cl}, {"unplaceable", c.unplaceable}};
}

inline json report_to_json(const PlanReport& r) {
    json w = json::array();
    for (const Point& p : r.hidden.witnesses) w.push_back({p.x, p.y});
    return {{"triangles", r.triangles},
            {"g", r.g},
            {"g2", r.g2},
            {"g3", r.g3},
            {"total", r.total()},
            {"hidden_t", r.hidden.t},
            {"hidden_witnesses", w},
            {"bound_t_le_g", r.bound_1},
            {"bound_2t_le_g_g2", r.bound_2},
            {"bound_3t_le_total", r.bound_3},
            {"provably_optimal", r.provably_optimal},
            {"unplaceable", r.unplaceable}};
}

}  // namespace losplan
