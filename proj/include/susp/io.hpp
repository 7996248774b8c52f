#pragma once

// Serialization: shortest round-trip number formatting, CSV emission for
// curve samples and grid snapshots, JSON for wave structures. Output headers
// echo the effective configuration so identical runs are byte-identical.

#include <charconv>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "susp/fv.hpp"
#include "susp/riemann.hpp"
#include "susp/wave_curves.hpp"

namespace susp {

/// Shortest decimal representation that round-trips the double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

using ConfigEcho = std::map<std::string, std::string>;

inline void write_config_header(std::ostream& os, const ConfigEcho& cfg) {
    for (const auto& [k, v] : cfg) os << "# " << k << "=" << v << "\n";
}

inline void write_curve_csv(std::ostream& os, const CurveSample& cs, const ConfigEcho& cfg) {
    write_config_header(os, cfg);
    os << "h,n,lambda1,lambda2,s,adm1,adm2\n";
    for (const CurvePoint& pt : cs.points) {
        os << format_double(pt.h) << ',' << format_double(pt.n) << ','
           << format_double(pt.lambda1) << ',' << format_double(pt.lambda2) << ','
           << format_double(pt.s) << ',' << (pt.adm1 ? "true" : "false") << ','
           << (pt.adm2 ? "true" : "false") << "\n";
    }
}

inline void write_grid_csv(std::ostream& os, const Grid1D& g, const ConfigEcho& cfg) {
    ConfigEcho full = cfg;
    full["t"] = format_double(g.t);
    full["N"] = std::to_string(g.cells);
    write_config_header(os, full);
    os << "x,h,n\n";
    for (int i = 0; i < g.cells; ++i)
        os << format_double(g.x_center(i)) << ',' << format_double(g.field[i].h) << ','
           << format_double(g.field[i].n) << "\n";
}

inline nlohmann::json to_json(const WaveStructure& ws) {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (const State& u : ws.states) j["states"].push_back({u.h, u.n});
    j["waves"] = nlohmann::json::array();
    for (const Wave& w : ws.waves) {
        nlohmann::json jw;
        jw["family"] = w.family;
        if (w.kind == WaveKind::shock) {
            jw["kind"] = "shock";
            jw["speed"] = w.speed;
        } else {
            jw["kind"] = "rarefaction";
            jw["xi"] = {w.xi_lo, w.xi_hi};
        }
        if (w.conditional) jw["conditional"] = true;
        j["waves"].push_back(jw);
    }
    return j;
}

inline WaveStructure wave_structure_from_json(const nlohmann::json& j) {
    WaveStructure ws;
    for (const auto& s : j.at("states")) ws.states.push_back({s.at(0), s.at(1)});
    for (const auto& jw : j.at("waves")) {
        Wave w;
        w.family = jw.at("family");
        if (jw.at("kind") == "shock") {
            w.kind = WaveKind::shock;
            w.speed = jw.at("speed");
        } else {
            w.kind = WaveKind::rarefaction;
            w.xi_lo = jw.at("xi").at(0);
            w.xi_hi = jw.at("xi").at(1);
        }
        w.conditional = jw.value("conditional", false);
        ws.waves.push_back(w);
    }
    return ws;
}

inline nlohmann::json to_json(const NoSolutionReport& r) {
    nlohmann::json j;
    j["left"] = {r.left.h, r.left.n};
    j["right"] = {r.right.h, r.right.n};
    j["message"] = r.message;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"curve", c.curve}, {"residual", c.residual}});
    return j;
}

}  // namespace susp
