#pragma once

// Wave-curve machinery: Hugoniot locus, shock speed, Lax entropy
// admissibility, rarefaction integral curves and self-similar fan sampling.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "susp/model.hpp"
#include "susp/rootfind.hpp"

namespace susp {

inline constexpr double kRhTol = 1e-9;  // "on the locus" classification tolerance

struct NotOnLocusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateJumpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfFanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LocusSolveError : std::runtime_error {
    LocusSolveError(const std::string& msg, double h_value)
        : std::runtime_error(msg), h(h_value) {}
    double h;
};

/// Hugoniot-locus residual of U against the anchor Up:
///   (n - n_p)(h^2 + h h_p + h_p^2) - sqrt(2/C) ((nh)^3/2 - (n_p h_p)^3/2).
/// Vanishes exactly when U lies on the locus of Up.
inline double hugoniot_residual(const State& u, const State& up, const ModelParams& p) {
    if (u.h < 0.0 || u.n < 0.0 || up.h < 0.0 || up.n < 0.0)
        throw DomainError("hugoniot_residual: negative h or n");
    const double k = u.h * u.h + u.h * up.h + up.h * up.h;
    const double nh = u.n * u.h;
    const double nph = up.n * up.h;
    return (u.n - up.n) * k - std::sqrt(2.0 / p.C) * (nh * std::sqrt(nh) - nph * std::sqrt(nph));
}

namespace detail {

// d/dn of hugoniot_residual at fixed h.
inline double hugoniot_residual_dn(double h, double n, const State& up, const ModelParams& p) {
    const double k = h * h + h * up.h + up.h * up.h;
    return k - std::sqrt(2.0 / p.C) * 1.5 * h * std::sqrt(n * h);
}

// Expands a bracket around `guess` until f changes sign. Used for locus
// branch continuation, where the previous sample keeps the bracket local.
template <class F>
inline bool expand_bracket(const F& f, double guess, double lo_limit, double hi_limit,
                           double& lo, double& hi) {
    double w = std::max(1e-6, 0.05 * std::max(guess, 1e-3));
    for (int k = 0; k < 60; ++k) {
        lo = std::max(lo_limit, guess - w);
        hi = std::min(hi_limit, guess + w);
        if (lo < hi) {
            const double flo = f(lo), fhi = f(hi);
            if ((flo <= 0.0) != (fhi < 0.0) || flo == 0.0 || fhi == 0.0) return true;
        }
        if (lo == lo_limit && hi == hi_limit) return false;
        w *= 2.0;
    }
    return false;
}

}  // namespace detail

/// Solves the locus residual in n at fixed h, continuing the branch from a
/// previous sample (`guess`). The residual in n can admit a second root
/// because of the (nh)^3/2 term; bracket continuation keeps the branch
/// through the anchor connected.
inline double solve_locus_n(double h, const State& up, const ModelParams& p, double guess,
                            double tol = 1e-14) {
    auto f = [&](double n) { return hugoniot_residual({h, n}, up, p); };
    auto df = [&](double n) { return detail::hugoniot_residual_dn(h, n, up, p); };
    double lo = 0.0, hi = 0.0;
    const double hi_limit = std::max({4.0 * up.n, 4.0 * guess, h, 1.0});
    if (!detail::expand_bracket(f, guess, 0.0, hi_limit, lo, hi))
        throw LocusSolveError("locus: no sign change near continuation guess", h);
    try {
        return solve_root({f, df, lo, hi, tol, tol, 100}).root;
    } catch (const NoConvergenceError& e) {
        throw LocusSolveError("locus: root iteration failed to converge", h);
    }
}

struct CurvePoint {
    double h = 0.0;
    double n = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double s = std::numeric_limits<double>::quiet_NaN();
    bool adm1 = false;
    bool adm2 = false;
};

struct CurveSample {
    std::vector<CurvePoint> points;
};

/// Discontinuity speed from the second Rankine-Hugoniot component,
///   s = (2/(81C))^(1/4) sqrt( (h^2+hh_p+h_p^2) ((nh)^3/2-(n_p h_p)^3/2) / (n-n_p) ),
/// cross-checked against the first component s = (h^2 + h h_p + h_p^2)/3.
inline double shock_speed(const State& u, const State& up, const ModelParams& p,
                          double cross_tol = 1e-9) {
    if (u == up) throw DegenerateJumpError("shock_speed: coincident states");
    if (u.n == up.n) throw DegenerateJumpError("shock_speed: degenerate jump, n equals n_p");
    if (u.h == up.h) throw DegenerateJumpError("shock_speed: degenerate jump, h equals h_p");
    if (std::abs(hugoniot_residual(u, up, p)) > kRhTol)
        throw NotOnLocusError("shock_speed: state not on the Hugoniot locus of the anchor");
    const double k = u.h * u.h + u.h * up.h + up.h * up.h;
    const double nh = u.n * u.h;
    const double nph = up.n * up.h;
    const double ratio = (nh * std::sqrt(nh) - nph * std::sqrt(nph)) / (u.n - up.n);
    const double s = std::pow(2.0 / (81.0 * p.C), 0.25) * std::sqrt(k * ratio);
    const double s_first = k / 3.0;
    if (std::abs(s - s_first) > cross_tol)
        throw NotOnLocusError("shock_speed: Rankine-Hugoniot components disagree");
    return s;
}

/// Lax entropy classification of a discontinuity (left = Up, right = U) with
/// speed s. Returns the admitting family, or 0 when neither strict chain
/// holds:  family 1:  lambda1(U) < s < min{lambda1(Up), lambda2(U)}
///         family 2:  max{lambda1(Up), lambda2(U)} < s < lambda2(Up).
inline int entropy_admissible(const State& u, const State& up, double s, const ModelParams& p) {
    const double l1u = lambda1(u, p);
    const double l1p = lambda1(up, p);
    const double l2u = lambda2(u);
    const double l2p = lambda2(up);
    if (l1u < s && s < std::min(l1p, l2u)) return 1;
    if (std::max(l1p, l2u) < s && s < l2p) return 2;
    return 0;
}

namespace detail {

inline CurvePoint classify_curve_point(const State& u, const State& up, const ModelParams& p) {
    CurvePoint pt;
    pt.h = u.h;
    pt.n = u.n;
    pt.lambda1 = lambda1(u, p);
    pt.lambda2 = lambda2(u);
    if (u.h != up.h && u.n != up.n) {
        const double k = u.h * u.h + u.h * up.h + up.h * up.h;
        pt.s = k / 3.0;  // first RH component, exact on the locus
        const int fam = entropy_admissible(u, up, pt.s, p);
        pt.adm1 = fam == 1;
        pt.adm2 = fam == 2;
    }
    return pt;
}

}  // namespace detail

/// Samples the connected Hugoniot branch through Up over [h_lo, h_hi],
/// solving the residual in n at each h by bracket continuation outward from
/// the anchor. Each point carries lambda's, the RH speed and both entropy
/// flags.
inline CurveSample hugoniot_locus(const State& up, const ModelParams& p, double h_lo,
                                  double h_hi, int count) {
    if (!in_omega(up)) throw DomainError("hugoniot_locus: anchor outside Omega");
    if (!(h_lo > 0.0) || !(h_hi > h_lo)) throw DomainError("hugoniot_locus: bad h range");
    if (count < 2) throw std::invalid_argument("hugoniot_locus: count must be >= 2");

    std::vector<double> hs(count);
    for (int i = 0; i < count; ++i)
        hs[i] = h_lo + (h_hi - h_lo) * static_cast<double>(i) / (count - 1);

    // Split into the descending (h < h_p) and ascending (h >= h_p) walks so
    // each starts its continuation at the anchor.
    std::vector<double> below, above;
    for (double h : hs) (h < up.h ? below : above).push_back(h);

    std::vector<CurvePoint> pts(count);
    double guess = up.n;
    for (auto it = below.rbegin(); it != below.rend(); ++it) {
        const double n = (*it == up.h) ? up.n : solve_locus_n(*it, up, p, guess);
        guess = n;
        const auto idx = static_cast<size_t>(std::distance(it, below.rend())) - 1;
        pts[idx] = detail::classify_curve_point({*it, n}, up, p);
    }
    guess = up.n;
    for (size_t j = 0; j < above.size(); ++j) {
        const double h = above[j];
        const double n = (h == up.h) ? up.n : solve_locus_n(h, up, p, guess);
        guess = n;
        pts[below.size() + j] = detail::classify_curve_point({h, n}, up, p);
    }
    return {std::move(pts)};
}

/// Closed form of the family-2 integral curve through Up:
///   h(n) = n n_p^2 / ( n sqrt(n_p/h_p) - (n - n_p) sqrt(C/2) )^2.
inline double rarefaction2_h_of_n(const State& up, double n, const ModelParams& p) {
    if (!in_omega(up) || !(up.n > 0.0))
        throw DomainError("rarefaction2_h_of_n: anchor must be interior, n_p > 0");
    const double a = std::sqrt(up.n / up.h);
    const double b = std::sqrt(p.C / 2.0);
    const double denom = n * a - (n - up.n) * b;
    if (std::abs(denom) <= 1e-14 * (std::abs(n * a) + std::abs((n - up.n) * b)))
        throw PoleError("rarefaction2_h_of_n: pole of the integral curve");
    return n * up.n * up.n / (denom * denom);
}

/// Residual of the family-2 curve identity h (n a - (n-n_p) b)^2 = n n_p^2.
inline double rarefaction2_identity_residual(const State& u, const State& up,
                                             const ModelParams& p) {
    const double a = std::sqrt(up.n / up.h);
    const double b = std::sqrt(p.C / 2.0);
    const double denom = u.n * a - (u.n - up.n) * b;
    return u.h * denom * denom - u.n * up.n * up.n;
}

/// Inverse of rarefaction2_h_of_n on the admissible side h >= h_p, where the
/// curve is strictly increasing up to its pole.
inline double rarefaction2_n_of_h(const State& up, double h, const ModelParams& p,
                                  double tol = 1e-13) {
    if (!in_omega(up) || !(up.n > 0.0))
        throw DomainError("rarefaction2_n_of_h: anchor must be interior, n_p > 0");
    if (h == up.h) return up.n;
    if (h < up.h) throw DomainError("rarefaction2_n_of_h: h below the anchor (curve needs h >= h_p)");
    const double a = std::sqrt(up.n / up.h);
    const double b = std::sqrt(p.C / 2.0);
    auto f = [&](double n) { return rarefaction2_h_of_n(up, n, p) - h; };
    auto df = [&](double n) {
        const double denom = n * a - (n - up.n) * b;
        return up.n * up.n * (denom - 2.0 * n * (a - b)) / (denom * denom * denom);
    };
    double hi;
    if (b > a) {
        hi = up.n * b / (b - a) * (1.0 - 1e-12);  // just short of the pole
        while (f(hi) < 0.0) hi = 0.5 * (hi + up.n * b / (b - a));
    } else {
        hi = up.n;
        while (f(hi) < 0.0) hi *= 2.0;
    }
    return solve_root({f, df, up.n, hi, tol, tol * std::max(1.0, h), 100}).root;
}

/// State inside a self-similar centered rarefaction fan at coordinate
/// xi = x/t, anchored on the left at Up. Family 2 inverts lambda2 = h^2 = xi
/// and places n on the integral curve; family 1 keeps h = h_p and inverts
/// lambda1 = xi, giving n = 2C xi^2 / h_p^3 (an inversion the curve formulas
/// imply but the closed forms do not print).
inline State sample_fan(const State& up, int family, double xi, const ModelParams& p) {
    if (!in_omega(up)) throw DomainError("sample_fan: anchor outside Omega");
    if (family == 1) {
        const double edge = lambda1(up, p);
        if (xi < edge - kOmegaEps) throw OutOfFanError("sample_fan: xi left of the fan edge");
        if (xi <= edge) return up;
        return {up.h, 2.0 * p.C * xi * xi / (up.h * up.h * up.h)};
    }
    if (family == 2) {
        const double edge = lambda2(up);
        if (xi < edge - kOmegaEps) throw OutOfFanError("sample_fan: xi left of the fan edge");
        if (xi <= edge) return up;
        const double h = std::sqrt(xi);
        return {h, rarefaction2_n_of_h(up, h, p)};
    }
    throw std::invalid_argument("sample_fan: family must be 1 or 2");
}

}  // namespace susp
