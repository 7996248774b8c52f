// Command-line front end: curve tabulation, exact Riemann solving, profile
// sampling, finite-volume simulation and convergence validation, emitting
// plot-ready CSV/JSON.
//
// Exit codes: 0 ok, 2 domain error, 3 root-finding failure,
//             4 no admissible wave sequence, 5 validation failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "susp/film.hpp"
#include "susp/fv.hpp"
#include "susp/io.hpp"
#include "susp/model.hpp"
#include "susp/riemann.hpp"
#include "susp/rootfind.hpp"
#include "susp/wave_curves.hpp"

namespace {

struct HRange {
    double lo = 0.05;
    double hi = 1.5;
    int count = 200;
};

struct Domain {
    double lo = -1.0;
    double hi = 2.0;
};

struct RunConfig {
    double C = 2.307;
    std::string left_str;
    std::string right_str;
    std::string state_str;
    std::string h_range_str;
    std::string domain_str;
    int grid = 4000;
    double cfl = 0.8;
    double T = 1.0;
    std::string out;
    std::string format = "csv";
    double tol = 0.01;
    double speed_offset = 0.0;  // validate-only test hook
};

susp::State parse_state(const std::string& s, const char* what) {
    double h = 0.0, n = 0.0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> h >> comma >> n) || comma != ',')
        throw susp::DomainError(std::string(what) + ": expected 'h,n', got '" + s + "'");
    return {h, n};
}

HRange parse_h_range(const std::string& s) {
    HRange r;
    if (s.empty()) return r;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':')
        throw susp::DomainError("--h-range: expected 'lo:hi:count', got '" + s + "'");
    return r;
}

Domain parse_domain(const std::string& s) {
    Domain d;
    if (s.empty()) return d;
    char c1 = 0;
    std::istringstream is(s);
    if (!(is >> d.lo >> c1 >> d.hi) || c1 != ':')
        throw susp::DomainError("--domain: expected 'lo:hi', got '" + s + "'");
    return d;
}

susp::ConfigEcho echo_common(const RunConfig& cfg) {
    susp::ConfigEcho e;
    e["C"] = susp::format_double(cfg.C);
    if (!cfg.left_str.empty()) e["left"] = cfg.left_str;
    if (!cfg.right_str.empty()) e["right"] = cfg.right_str;
    e["format"] = cfg.format;
    return e;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
    } else {
        auto os = open_out(path);
        writer(os);
    }
}

susp::State require_omega(const susp::State& u, const char* what) {
    if (!susp::in_omega(u))
        throw susp::DomainError(std::string(what) + ": state outside Omega (need h>0, 0<=n<h)");
    return u;
}

// ---------------------------------------------------------------------------

int cmd_eigen(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::State u = require_omega(parse_state(cfg.state_str, "--state"), "--state");
    const susp::EigenPair e = susp::jacobian_eigensystem(u, p);
    const susp::StructureFlags f = susp::check_structure(u, p);
    auto tri = [](susp::Tristate t) {
        return t == susp::Tristate::yes ? "yes" : t == susp::Tristate::no ? "no" : "boundary";
    };
    nlohmann::json j;
    j["config"] = {{"C", cfg.C}, {"state", {u.h, u.n}}};
    j["lambda1"] = e.lambda1;
    j["lambda2"] = e.lambda2;
    j["r1"] = e.r1;
    j["r2"] = e.r2;
    j["strictly_hyperbolic"] = f.strictly_hyperbolic;
    j["gnl_field1"] = tri(f.gnl_field1);
    j["gnl_field2"] = tri(f.gnl_field2);
    emit(cfg.out, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    return 0;
}

int cmd_curves(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::State anchor = require_omega(parse_state(cfg.left_str, "--left"), "--left");
    const HRange hr = parse_h_range(cfg.h_range_str);

    susp::ConfigEcho echo = echo_common(cfg);
    echo["anchor"] = cfg.left_str;
    echo["h_range"] = cfg.h_range_str.empty() ? "0.05:1.5:200" : cfg.h_range_str;

    const std::string prefix = cfg.out;
    {
        const susp::CurveSample locus = susp::hugoniot_locus(anchor, p, hr.lo, hr.hi, hr.count);
        echo["curve"] = "hugoniot";
        auto os = open_out(prefix + "hugoniot.csv");
        susp::write_curve_csv(os, locus, echo);
    }
    {
        // 1-rarefaction curve: the vertical line h = h_p, n rising toward h_p.
        susp::CurveSample r1;
        for (int i = 0; i < hr.count; ++i) {
            const double n =
                anchor.n + (anchor.h * (1.0 - 1e-9) - anchor.n) * static_cast<double>(i) /
                               (hr.count - 1);
            susp::CurvePoint pt;
            pt.h = anchor.h;
            pt.n = n;
            pt.lambda1 = susp::lambda1({anchor.h, n}, p);
            pt.lambda2 = susp::lambda2({anchor.h, n});
            pt.adm1 = n > anchor.n;
            r1.points.push_back(pt);
        }
        echo["curve"] = "r1";
        auto os = open_out(prefix + "r1.csv");
        susp::write_curve_csv(os, r1, echo);
    }
    {
        // 2-rarefaction curve over h in [h_p, hi].
        susp::CurveSample r2;
        const double lo = anchor.h;
        const double hi = std::max(hr.hi, anchor.h);
        for (int i = 0; i < hr.count; ++i) {
            const double h = lo + (hi - lo) * static_cast<double>(i) / (hr.count - 1);
            const double n = susp::rarefaction2_n_of_h(anchor, h, p);
            susp::CurvePoint pt;
            pt.h = h;
            pt.n = n;
            pt.lambda1 = susp::lambda1({h, n}, p);
            pt.lambda2 = susp::lambda2({h, n});
            pt.adm2 = h > anchor.h;
            r2.points.push_back(pt);
        }
        echo["curve"] = "r2";
        auto os = open_out(prefix + "r2.csv");
        susp::write_curve_csv(os, r2, echo);
    }
    return 0;
}

nlohmann::json solve_to_json(const RunConfig& cfg, const susp::WaveStructure& ws) {
    nlohmann::json j = susp::to_json(ws);
    j["config"] = {{"C", cfg.C}, {"left", cfg.left_str}, {"right", cfg.right_str}};
    return j;
}

int cmd_solve(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::RiemannData data{require_omega(parse_state(cfg.left_str, "--left"), "--left"),
                                 require_omega(parse_state(cfg.right_str, "--right"), "--right")};
    const susp::WaveStructure ws = susp::solve_riemann(data, p);
    emit(cfg.out, [&](std::ostream& os) { os << solve_to_json(cfg, ws).dump(2) << "\n"; });
    return 0;
}

susp::Grid1D sampled_profile(const susp::WaveStructure& ws, const susp::ModelParams& p,
                             const Domain& dom, int cells, double t) {
    susp::Grid1D g = susp::make_grid(dom.lo, dom.hi, cells);
    g.t = t;
    for (int i = 0; i < cells; ++i) {
        const double x = g.x_center(i);
        g.field[i] = t > 0.0 ? susp::sample_solution(ws, x / t, p)
                             : (x < 0.0 ? ws.states.front() : ws.states.back());
    }
    return g;
}

int cmd_sample(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::RiemannData data{require_omega(parse_state(cfg.left_str, "--left"), "--left"),
                                 require_omega(parse_state(cfg.right_str, "--right"), "--right")};
    const susp::WaveStructure ws = susp::solve_riemann(data, p);
    const Domain dom = parse_domain(cfg.domain_str);
    const susp::Grid1D g = sampled_profile(ws, p, dom, cfg.grid, cfg.T);
    susp::ConfigEcho echo = echo_common(cfg);
    echo["domain"] = susp::format_double(dom.lo) + ":" + susp::format_double(dom.hi);
    echo["T"] = susp::format_double(cfg.T);
    emit(cfg.out, [&](std::ostream& os) { susp::write_grid_csv(os, g, echo); });
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::RiemannData data{require_omega(parse_state(cfg.left_str, "--left"), "--left"),
                                 require_omega(parse_state(cfg.right_str, "--right"), "--right")};
    const Domain dom = parse_domain(cfg.domain_str);
    susp::Grid1D g = susp::make_riemann_grid(dom.lo, dom.hi, cfg.grid, data.left, data.right);
    g = susp::llf_run(std::move(g), p, cfg.cfl, cfg.T);
    susp::ConfigEcho echo = echo_common(cfg);
    echo["domain"] = susp::format_double(dom.lo) + ":" + susp::format_double(dom.hi);
    echo["cfl"] = susp::format_double(cfg.cfl);
    emit(cfg.out, [&](std::ostream& os) { susp::write_grid_csv(os, g, echo); });
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    const susp::ModelParams p{cfg.C};
    const susp::RiemannData data{require_omega(parse_state(cfg.left_str, "--left"), "--left"),
                                 require_omega(parse_state(cfg.right_str, "--right"), "--right")};
    susp::WaveStructure ws = susp::solve_riemann(data, p);
    if (cfg.speed_offset != 0.0) {
        for (susp::Wave& w : ws.waves) {
            w.speed += cfg.speed_offset;
            w.xi_lo += cfg.speed_offset;
            w.xi_hi += cfg.speed_offset;
        }
    }
    const Domain dom = parse_domain(cfg.domain_str);
    auto exact = [&](double x) {
        return cfg.T > 0.0 ? susp::sample_solution(ws, x / cfg.T, p)
                           : (x < 0.0 ? data.left : data.right);
    };

    std::vector<int> ladder;
    for (int d = 8; d >= 1; d /= 2) ladder.push_back(std::max(2, cfg.grid / d));
    std::vector<double> errs;
    for (int n_cells : ladder) {
        susp::Grid1D g =
            susp::make_riemann_grid(dom.lo, dom.hi, n_cells, data.left, data.right);
        g = susp::llf_run(std::move(g), p, cfg.cfl, cfg.T);
        errs.push_back(susp::l1_distance(g, exact));
    }

    bool monotone = true;
    for (size_t i = 1; i < errs.size(); ++i) monotone = monotone && errs[i] < errs[i - 1];
    const bool ok = monotone && errs.back() < cfg.tol;

    susp::ConfigEcho echo = echo_common(cfg);
    echo["domain"] = susp::format_double(dom.lo) + ":" + susp::format_double(dom.hi);
    echo["cfl"] = susp::format_double(cfg.cfl);
    echo["T"] = susp::format_double(cfg.T);
    echo["threshold"] = susp::format_double(cfg.tol);
    emit(cfg.out, [&](std::ostream& os) {
        susp::write_config_header(os, echo);
        os << "N,l1,order\n";
        for (size_t i = 0; i < ladder.size(); ++i) {
            os << ladder[i] << ',' << susp::format_double(errs[i]) << ',';
            if (i > 0)
                os << susp::format_double(std::log2(errs[i - 1] / errs[i]));
            os << "\n";
        }
        os << "# result=" << (ok ? "pass" : "fail") << "\n";
    });
    if (!ok) {
        std::cerr << "validate: L1 errors not monotone or final error "
                  << susp::format_double(errs.back()) << " >= threshold "
                  << susp::format_double(cfg.tol) << "\n";
        return 5;
    }
    return 0;
}

int cmd_film_exact(const RunConfig& cfg) {
    Domain dom = parse_domain(cfg.domain_str);
    if (cfg.domain_str.empty()) dom = {-0.5, 3.0};
    susp::Grid1D g = susp::make_grid(dom.lo, dom.hi, cfg.grid);
    g.t = cfg.T;
    for (int i = 0; i < cfg.grid; ++i) g.field[i] = {susp::film_height(g.x_center(i), cfg.T), 0.0};
    susp::ConfigEcho echo;
    echo["C"] = susp::format_double(cfg.C);
    echo["domain"] = susp::format_double(dom.lo) + ":" + susp::format_double(dom.hi);
    echo["T"] = susp::format_double(cfg.T);
    emit(cfg.out, [&](std::ostream& os) { susp::write_grid_csv(os, g, echo); });
    return 0;
}

// Fills CLI-unset fields from a key=value config file; flags win.
void apply_config_file(const std::string& path, const CLI::App& sub, RunConfig& cfg) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto take = [&](const char* flag, const char* key, auto& field) {
        const CLI::Option* opt = sub.get_option_no_throw(flag);
        if (opt && opt->count() > 0) return;  // explicit flag wins
        auto it = kv.find(key);
        if (it == kv.end()) return;
        std::istringstream ss(it->second);
        ss >> field;
    };
    take("--C", "C", cfg.C);
    take("--left", "left", cfg.left_str);
    take("--right", "right", cfg.right_str);
    take("--state", "state", cfg.state_str);
    take("--h-range", "h_range", cfg.h_range_str);
    take("--domain", "domain", cfg.domain_str);
    take("--grid", "grid", cfg.grid);
    take("--cfl", "cfl", cfg.cfl);
    take("--T", "T", cfg.T);
    take("--out", "out", cfg.out);
    take("--format", "format", cfg.format);
    take("--tol", "tol", cfg.tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Riemann solver for the settled-regime suspension system"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--C", cfg.C, "buoyancy parameter (default 2.307)");
        sub->add_option("--config", config_path, "key=value config file (flags win)");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", cfg.tol, "tolerance override");
        return sub;
    };

    auto* sc_curves = add_common(app.add_subcommand("curves", "tabulate wave curves"));
    sc_curves->add_option("--left", cfg.left_str, "anchor state h,n");
    sc_curves->add_option("--h-range", cfg.h_range_str, "lo:hi:count");

    auto* sc_solve = add_common(app.add_subcommand("solve", "solve the Riemann problem"));
    sc_solve->add_option("--left", cfg.left_str, "left state h,n");
    sc_solve->add_option("--right", cfg.right_str, "right state h,n");

    auto* sc_sample = add_common(app.add_subcommand("sample", "sample the exact profile"));
    sc_sample->add_option("--left", cfg.left_str, "left state h,n");
    sc_sample->add_option("--right", cfg.right_str, "right state h,n");
    sc_sample->add_option("--T", cfg.T, "sampling time");
    sc_sample->add_option("--grid", cfg.grid, "sample count");
    sc_sample->add_option("--domain", cfg.domain_str, "lo:hi");

    auto* sc_sim = add_common(app.add_subcommand("simulate", "run the finite-volume scheme"));
    sc_sim->add_option("--left", cfg.left_str, "left state h,n");
    sc_sim->add_option("--right", cfg.right_str, "right state h,n");
    sc_sim->add_option("--T", cfg.T, "final time");
    sc_sim->add_option("--grid", cfg.grid, "cell count");
    sc_sim->add_option("--domain", cfg.domain_str, "lo:hi");
    sc_sim->add_option("--cfl", cfg.cfl, "CFL number in (0, 0.9]");

    auto* sc_val = add_common(app.add_subcommand("validate", "refinement-ladder validation"));
    sc_val->add_option("--left", cfg.left_str, "left state h,n");
    sc_val->add_option("--right", cfg.right_str, "right state h,n");
    sc_val->add_option("--T", cfg.T, "final time");
    sc_val->add_option("--grid", cfg.grid, "finest cell count");
    sc_val->add_option("--domain", cfg.domain_str, "lo:hi");
    sc_val->add_option("--cfl", cfg.cfl, "CFL number in (0, 0.9]");
    sc_val->add_option("--speed-offset", cfg.speed_offset,
                       "test hook: perturb exact wave speeds")
        ->group("");

    auto* sc_film = add_common(app.add_subcommand("film-exact", "dam-break film profile"));
    sc_film->add_option("--T", cfg.T, "sampling time");
    sc_film->add_option("--grid", cfg.grid, "sample count");
    sc_film->add_option("--domain", cfg.domain_str, "lo:hi");

    auto* sc_eigen = add_common(app.add_subcommand("eigen", "eigenstructure at a state"));
    sc_eigen->add_option("--state", cfg.state_str, "state h,n");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config_file(config_path, *sub, cfg);
        const std::string name = sub->get_name();
        if (name == "curves") return cmd_curves(cfg);
        if (name == "solve") return cmd_solve(cfg);
        if (name == "sample") return cmd_sample(cfg);
        if (name == "simulate") return cmd_simulate(cfg);
        if (name == "validate") return cmd_validate(cfg);
        if (name == "film-exact") return cmd_film_exact(cfg);
        if (name == "eigen") return cmd_eigen(cfg);
        return 1;
    } catch (const susp::NoAdmissibleSolutionError& e) {
        std::cerr << susp::to_json(e.report).dump(2) << "\n";
        return 4;
    } catch (const susp::LocusSolveError& e) {
        std::cerr << "error: " << e.what() << " (h=" << susp::format_double(e.h) << ")\n";
        return 3;
    } catch (const susp::NoSignChangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const susp::NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const susp::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
