#pragma once

// Safeguarded scalar root-finding: Newton (or secant when no derivative is
// supplied) with bisection fallback inside a sign-changing bracket.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace susp {

struct RootProblem {
    std::function<double(double)> f;
    std::function<double(double)> df;  // optional; secant/bisection hybrid when absent
    double lo = 0.0;
    double hi = 0.0;
    double tol_x = 1e-12;
    double tol_f = 1e-12;
    int max_iter = 100;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct NoSignChangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergenceError : std::runtime_error {
    NoConvergenceError(const std::string& msg, RootResult best_iterate)
        : std::runtime_error(msg), best(best_iterate) {}
    RootResult best;
};

inline RootResult solve_root(const RootProblem& rp) {
    if (!(rp.tol_x > 0.0) || !(rp.tol_f > 0.0) || rp.max_iter < 1)
        throw std::invalid_argument("solve_root: bad tolerances or iteration cap");
    double a = rp.lo, b = rp.hi;
    if (!(a < b)) throw std::invalid_argument("solve_root: empty bracket");
    double fa = rp.f(a);
    double fb = rp.f(b);
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa < 0.0) == (fb < 0.0))
        throw NoSignChangeError("solve_root: no sign change on bracket");

    double x = 0.5 * (a + b);
    double fx = rp.f(x);
    double x_prev = a, f_prev = fa;
    for (int it = 1; it <= rp.max_iter; ++it) {
        if ((fa < 0.0) == (fx < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (std::abs(fx) <= rp.tol_f || (b - a) <= rp.tol_x) return {x, fx, it};

        double x_new = 0.0;
        bool accepted = false;
        if (rp.df) {
            const double d = rp.df(x);
            if (d != 0.0 && std::isfinite(d)) {
                x_new = x - fx / d;
                accepted = std::isfinite(x_new) && x_new > a && x_new < b;
            }
        } else {
            const double denom = fx - f_prev;
            if (denom != 0.0) {
                x_new = x - fx * (x - x_prev) / denom;
                accepted = std::isfinite(x_new) && x_new > a && x_new < b;
            }
        }
        if (!accepted) x_new = 0.5 * (a + b);  // bisection safeguard
        x_prev = x;
        f_prev = fx;
        x = x_new;
        fx = rp.f(x);
    }
    throw NoConvergenceError("solve_root: no convergence within max_iter",
                             RootResult{x, fx, rp.max_iter});
}

}  // namespace susp
