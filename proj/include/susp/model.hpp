#pragma once

// Conservation-law system for dilute suspension flow in the settled regime:
//   d_t h + d_x (h^3/3)                 = 0
//   d_t n + d_x (sqrt(2/(9C)) (nh)^3/2) = 0
// with state U = (h, n), n = phi*h, on Omega = { h > 0, 0 <= n < h }.

#include <array>
#include <cmath>
#include <stdexcept>

namespace susp {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Point in phase space: film height h and integrated particle content n = phi*h.
struct State {
    double h = 0.0;
    double n = 0.0;
};

inline bool operator==(const State& a, const State& b) { return a.h == b.h && a.n == b.n; }

/// Buoyancy parameter C > 0. Derived constants are recomputed on demand.
struct ModelParams {
    double C = 2.307;

    double flux_coeff() const { return std::sqrt(2.0 / (9.0 * C)); }   // sqrt(2/(9C))
    double half_inv_c() const { return 1.0 / (2.0 * C); }
};

// Slack used only when classifying states produced by internal root-finding;
// raw user input is checked against the strict inequalities.
inline constexpr double kOmegaEps = 1e-12;

inline bool in_omega(const State& u) {
    return std::isfinite(u.h) && std::isfinite(u.n) && u.h > 0.0 && u.n >= 0.0 && u.n < u.h;
}

inline bool in_omega_closure(const State& u, double eps = 0.0) {
    return std::isfinite(u.h) && std::isfinite(u.n) && u.h >= -eps && u.n >= -eps &&
           u.n <= u.h + eps;
}

struct FluxVector {
    double f_h = 0.0;
    double f_n = 0.0;
};

inline FluxVector flux(const State& u, const ModelParams& p) {
    if (!(p.C > 0.0)) throw DomainError("flux: C must be positive");
    if (!in_omega_closure(u)) throw DomainError("flux: state outside closure of Omega");
    const double nh = u.n * u.h;
    return {u.h * u.h * u.h / 3.0, nh == 0.0 ? 0.0 : p.flux_coeff() * nh * std::sqrt(nh)};
}

// Characteristic speeds. These take raw (h, n) so that curve machinery can
// evaluate them on Hugoniot-locus points that leave Omega (phi > 1); the
// validating entry point is jacobian_eigensystem below.
inline double lambda1(const State& u, const ModelParams& p) {
    return std::sqrt(u.h * u.h * u.h * u.n * p.half_inv_c());
}

inline double lambda2(const State& u) { return u.h * u.h; }

using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 flux_jacobian(const State& u, const ModelParams& p) {
    const double c = p.half_inv_c();
    return {{{u.h * u.h, 0.0},
             {std::sqrt(u.n * u.n * u.n * u.h * c), std::sqrt(u.h * u.h * u.h * u.n * c)}}};
}

/// Eigenvalues with the fixed eigenvector normalization r1 = (0,1),
/// r2 = (h^2 - lambda1, sqrt(n^3 h / (2C))).
struct EigenPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::array<double, 2> r1{};
    std::array<double, 2> r2{};
};

inline EigenPair jacobian_eigensystem(const State& u, const ModelParams& p) {
    if (!in_omega(u)) throw DomainError("jacobian_eigensystem: state outside Omega");
    const double l1 = lambda1(u, p);
    const double l2 = lambda2(u);
    return {l1, l2, {0.0, 1.0}, {l2 - l1, std::sqrt(u.n * u.n * u.n * u.h * p.half_inv_c())}};
}

enum class Tristate { no, yes, boundary };

/// Strict hyperbolicity and genuine nonlinearity of both fields at a point.
/// On the n = 0 boundary grad(lambda1).r1 ~ 1/sqrt(n) is singular, so the
/// first field is reported as `boundary` rather than yes/no.
struct StructureFlags {
    bool strictly_hyperbolic = false;
    Tristate gnl_field1 = Tristate::no;
    Tristate gnl_field2 = Tristate::no;
};

inline StructureFlags check_structure(const State& u, const ModelParams& p) {
    if (!in_omega(u)) throw DomainError("check_structure: state outside Omega");
    constexpr double zero_tol = 1e-14;
    const double l1 = lambda1(u, p);
    const double l2 = lambda2(u);
    StructureFlags out;
    out.strictly_hyperbolic = l1 < l2;
    if (u.n == 0.0) {
        out.gnl_field1 = Tristate::boundary;
    } else {
        const double g1 = 0.5 * std::sqrt(u.h * u.h * u.h * p.half_inv_c() / u.n);
        out.gnl_field1 = std::abs(g1) > zero_tol ? Tristate::yes : Tristate::no;
    }
    const double g2 = 2.0 * u.h * (l2 - l1);
    out.gnl_field2 = std::abs(g2) > zero_tol ? Tristate::yes : Tristate::no;
    return out;
}

}  // namespace susp
