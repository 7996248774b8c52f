#pragma once

// Composition of admissible waves into a weak solution of the Riemann
// problem, restricted to the allowed sequences: nothing, a single 2-shock, a
// single 2-rarefaction, a single 1-rarefaction (conditional, equal heights),
// or a 1-rarefaction followed by a 2-rarefaction (conditional).

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "susp/model.hpp"
#include "susp/rootfind.hpp"
#include "susp/wave_curves.hpp"

namespace susp {

struct RiemannData {
    State left;
    State right;
};

enum class WaveKind { shock, rarefaction };

struct Wave {
    int family = 0;
    WaveKind kind = WaveKind::shock;
    double speed = 0.0;   // shocks
    double xi_lo = 0.0;   // rarefaction fan edges
    double xi_hi = 0.0;
    bool conditional = false;  // footnote-gated 1-rarefactions

    double left_edge() const { return kind == WaveKind::shock ? speed : xi_lo; }
    double right_edge() const { return kind == WaveKind::shock ? speed : xi_hi; }
};

/// Ordered constant states joined by classified waves; immutable once built.
struct WaveStructure {
    std::vector<State> states;  // U_0 [, U_1], U_2
    std::vector<Wave> waves;
};

struct MembershipCheck {
    std::string curve;
    double residual = 0.0;
    bool passed = false;
};

struct NoSolutionReport {
    State left;
    State right;
    std::vector<MembershipCheck> checks;
    std::string message;
};

struct NoAdmissibleSolutionError : std::runtime_error {
    NoAdmissibleSolutionError(NoSolutionReport r, const std::string& msg)
        : std::runtime_error(msg), report(std::move(r)) {}
    NoSolutionReport report;
};

namespace detail {

// Membership tolerance for classifying file-borne data onto a curve; a
// refinement solve confirms before a wave is emitted.
inline constexpr double kClassifyTol = 1e-8;

// Integration constant of the family-2 curve: e^A(U) = (sqrt(C/2) - sqrt(n/h)) / n.
inline double r2_integration_constant(const State& u, const ModelParams& p) {
    return (std::sqrt(p.C / 2.0) - std::sqrt(u.n / u.h)) / u.n;
}

}  // namespace detail

/// Solves the Riemann problem with left/right data in Omega. Cases, in
/// preference order: equal states; single 2-shock (right on S_2(left) with
/// the 2-entropy chain); single 2-rarefaction (right on R_2(left)); single
/// 1-rarefaction (equal heights, n rising, conditional); 1-rarefaction then
/// 2-rarefaction through a middle state (h_left, n_1), conditional. When
/// nothing fits, throws NoAdmissibleSolutionError carrying the membership
/// residuals that were tested.
inline WaveStructure solve_riemann(const RiemannData& data, const ModelParams& p) {
    const State& l = data.left;
    const State& r = data.right;
    if (!in_omega(l) || !in_omega(r))
        throw DomainError("solve_riemann: Riemann data outside Omega");

    WaveStructure ws;
    if (l == r) {
        ws.states = {l};
        return ws;
    }

    NoSolutionReport report{l, r, {}, ""};

    // (b) single 2-shock: step-down data on the Hugoniot locus of the left state.
    if (r.h < l.h) {
        const double res = hugoniot_residual(r, l, p);
        MembershipCheck chk{"S2(left)", res, false};
        if (std::abs(res) < detail::kClassifyTol) {
            const double n_exact = solve_locus_n(r.h, l, p, r.n);
            if (std::abs(n_exact - r.n) < detail::kClassifyTol) {
                const State r_refined{r.h, n_exact};
                const double s = shock_speed(r_refined, l, p);
                if (entropy_admissible(r_refined, l, s, p) == 2) {
                    ws.states = {l, r};
                    ws.waves = {Wave{2, WaveKind::shock, s}};
                    return ws;
                }
                chk.curve = "S2(left), entropy";
            }
        }
        report.checks.push_back(chk);
    }

    if (r.h > l.h) {
        // (c) single 2-rarefaction: right on R_2(left).
        const double res = rarefaction2_identity_residual(r, l, p);
        MembershipCheck chk{"R2(left)", res, false};
        if (std::abs(res) < detail::kClassifyTol) {
            const double n_exact = rarefaction2_n_of_h(l, r.h, p);
            if (std::abs(n_exact - r.n) < detail::kClassifyTol) {
                ws.states = {l, r};
                ws.waves = {Wave{2, WaveKind::rarefaction, 0.0, lambda2(l), lambda2(r)}};
                return ws;
            }
        }
        report.checks.push_back(chk);
    }

    // (d) single 1-rarefaction: equal heights with n rising below h.
    if (std::abs(r.h - l.h) <= kOmegaEps) {
        if (l.n < r.n && r.n < l.h) {
            ws.states = {l, r};
            ws.waves = {Wave{1, WaveKind::rarefaction, 0.0, lambda1(l, p), lambda1(r, p), true}};
            return ws;
        }
        report.checks.push_back({"R1(left), n_left < n_right < h", r.n - l.n, false});
    }

    // (e) 1-rarefaction then 2-rarefaction through U_1 = (h_left, n_1): n_1
    // solves e^A(h_left, n_1) = e^A(right), i.e.
    //   g(n_1) = sqrt(C/2) - sqrt(n_1/h_left) - kappa n_1 = 0,
    // which is strictly decreasing, so the root in (n_left, h_left) is unique.
    if (r.h > l.h) {
        const double kappa = detail::r2_integration_constant(r, p);
        const double b = std::sqrt(p.C / 2.0);
        auto g = [&](double n1) { return b - std::sqrt(n1 / l.h) - kappa * n1; };
        auto dg = [&](double n1) { return -0.5 / std::sqrt(n1 * l.h) - kappa; };
        const double lo = l.n, hi = l.h * (1.0 - 1e-12);
        const double glo = g(lo), ghi = g(hi);
        if (glo > 0.0 && ghi < 0.0) {
            const double n1 = solve_root({g, dg, lo, hi, 1e-14, 1e-14, 100}).root;
            const State mid{l.h, n1};
            ws.states = {l, mid, r};
            ws.waves = {Wave{1, WaveKind::rarefaction, 0.0, lambda1(l, p), lambda1(mid, p), true},
                        Wave{2, WaveKind::rarefaction, 0.0, lambda2(mid), lambda2(r)}};
            return ws;
        }
        report.checks.push_back({"R1+R2 middle state in (n_left, h_left)", glo, false});
        report.checks.push_back({"R1+R2 middle state in (n_left, h_left)", ghi, false});
    }

    std::ostringstream msg;
    msg << "solve_riemann: no admissible wave sequence connects (" << l.h << ", " << l.n
        << ") to (" << r.h << ", " << r.n << ")";
    for (const auto& c : report.checks)
        msg << "; " << c.curve << " residual " << c.residual;
    report.message = msg.str();
    throw NoAdmissibleSolutionError(std::move(report), msg.str());
}

/// Value of the self-similar solution at xi = x/t. Inside a fan the state is
/// taken from sample_fan; on a shock ray xi = s the right state is returned.
inline State sample_solution(const WaveStructure& ws, double xi, const ModelParams& p) {
    if (ws.states.empty()) throw std::invalid_argument("sample_solution: empty structure");
    for (size_t i = 0; i < ws.waves.size(); ++i) {
        const Wave& w = ws.waves[i];
        if (xi < w.left_edge()) return ws.states[i];
        if (w.kind == WaveKind::rarefaction && xi <= w.xi_hi)
            return sample_fan(ws.states[i], w.family, xi, p);
    }
    return ws.states.back();
}

}  // namespace susp
