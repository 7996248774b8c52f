#pragma once

// Closed-form dam-break solution of the decoupled film-height equation
// d_t h + d_x(h^3/3) = 0 with h(x,0) = 1 on [0,1]: a rarefaction fan
// sqrt(x/t) behind a plateau ending at the moving front x_l(t).

#include <cmath>
#include <stdexcept>

namespace susp {

inline constexpr double kFrontSwitchTime = 1.5;

/// Liquid front position: 1 + t/3 until the fan catches the front at
/// t = 3/2, then (9t/4)^(1/3). Both branches meet at 3/2 with value 3/2.
inline double front_position(double t) {
    if (t < 0.0) throw std::domain_error("front_position: negative time");
    return t <= kFrontSwitchTime ? 1.0 + t / 3.0 : std::cbrt(2.25 * t);
}

/// Exact film height: 1 on the plateau t <= x <= x_l, sqrt(x/t) in the fan
/// 0 < x < min(t, x_l), 0 elsewhere; at t = 0 the indicator of [0, 1].
/// Region conditions are applied in that order (the branches agree at x = t).
inline double film_height(double x, double t) {
    if (t < 0.0) throw std::domain_error("film_height: negative time");
    if (t == 0.0) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    const double xl = front_position(t);
    if (t <= x && x <= xl) return 1.0;
    if (0.0 < x && x < std::min(t, xl)) return std::sqrt(x / t);
    return 0.0;
}

}  // namespace susp
