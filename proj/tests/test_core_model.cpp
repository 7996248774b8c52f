#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "susp/model.hpp"

using namespace susp;

static const ModelParams kP{};

TEST_CASE("flux components") {
    SECTION("particle-free film: second flux vanishes") {
        const FluxVector f = flux({1.0, 0.0}, kP);
        CHECK(f.f_h == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(f.f_n == 0.0);
    }
    SECTION("interior point") {
        const FluxVector f = flux({1.0, 0.1}, kP);
        CHECK(f.f_h == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        // sqrt(2/20.763) * 0.1^1.5, high-precision value 0.00981453992067140
        CHECK(f.f_n == Catch::Approx(0.00981453992067140).epsilon(1e-13));
    }
    SECTION("vacuum gives exact zeros") {
        const FluxVector f = flux({0.0, 0.0}, kP);
        CHECK(f.f_h == 0.0);
        CHECK(f.f_n == 0.0);
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(flux({-1.0, 0.0}, kP), DomainError);
        CHECK_THROWS_AS(flux({1.0, -0.1}, kP), DomainError);
        CHECK_THROWS_AS(flux({0.5, 0.6}, kP), DomainError);
    }
}

TEST_CASE("eigenvalues and eigenvectors") {
    SECTION("paper point (1, 0.1)") {
        const EigenPair e = jacobian_eigensystem({1.0, 0.1}, kP);
        CHECK(e.lambda1 == Catch::Approx(std::sqrt(1.0 / 46.14)).epsilon(1e-14));
        CHECK(e.lambda2 == Catch::Approx(1.0).epsilon(1e-15));
        CHECK(e.r1[0] == 0.0);
        CHECK(e.r1[1] == 1.0);
    }
    SECTION("lambda2 = h^2 at (0.4, 0.08)") {
        const EigenPair e = jacobian_eigensystem({0.4, 0.08}, kP);
        CHECK(e.lambda2 == Catch::Approx(0.16).epsilon(1e-15));
        CHECK(e.lambda1 == Catch::Approx(std::sqrt(0.064 * 0.08 / 4.614)).epsilon(1e-13));
    }
    SECTION("outside Omega is an error") {
        CHECK_THROWS_AS(jacobian_eigensystem({1.0, 1.0}, kP), DomainError);
        CHECK_THROWS_AS(jacobian_eigensystem({0.0, 0.0}, kP), DomainError);
    }
}

TEST_CASE("eigenvector residual DF r = lambda r at sampled points") {
    for (int i = 0; i < 200; ++i) {
        const State u = oracles::omega_point(i);
        if (u.n <= 0.0) continue;
        const EigenPair e = jacobian_eigensystem(u, kP);
        const Mat2 df = flux_jacobian(u, kP);
        auto residual = [&](const std::array<double, 2>& r, double lam) {
            const double r0 = df[0][0] * r[0] + df[0][1] * r[1] - lam * r[0];
            const double r1 = df[1][0] * r[0] + df[1][1] * r[1] - lam * r[1];
            const double scale = std::max({std::abs(r[0]), std::abs(r[1]), 1e-30});
            return std::max(std::abs(r0), std::abs(r1)) / scale;
        };
        REQUIRE(residual(e.r1, e.lambda1) < 1e-12);
        REQUIRE(residual(e.r2, e.lambda2) < 1e-12);
    }
}

TEST_CASE("analytic Jacobian matches central finite differences") {
    int checked = 0;
    for (int i = 0; checked < 100; ++i) {
        const State u = oracles::omega_point(i, 0.2, 1.8, 0.05, 0.95);
        const Mat2 an = flux_jacobian(u, kP);
        const Mat2 fd = oracles::fd_jacobian(u, kP);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const double scale = std::max(std::abs(an[r][c]), 1e-8);
                REQUIRE(std::abs(an[r][c] - fd[r][c]) / scale < 1e-5);
            }
        ++checked;
    }
}

TEST_CASE("structure flags") {
    SECTION("paper points are strictly hyperbolic and genuinely nonlinear") {
        for (const State u : {State{1.0, 0.1}, State{0.4, 0.08}}) {
            const StructureFlags f = check_structure(u, kP);
            CHECK(f.strictly_hyperbolic);
            CHECK(f.gnl_field1 == Tristate::yes);
            CHECK(f.gnl_field2 == Tristate::yes);
        }
    }
    SECTION("hyperbolicity up to the phi -> 1 edge") {
        CHECK(check_structure({1.0, 0.999999}, kP).strictly_hyperbolic);
    }
    SECTION("n = 0 boundary reports GNL-1 as undefined") {
        const StructureFlags f = check_structure({1.0, 0.0}, kP);
        CHECK(f.gnl_field1 == Tristate::boundary);
        CHECK(f.strictly_hyperbolic);
        CHECK(f.gnl_field2 == Tristate::yes);
    }
    SECTION("outside Omega is an error") {
        CHECK_THROWS_AS(check_structure({0.5, 0.5}, kP), DomainError);
    }
}

TEST_CASE("strict hyperbolicity and GNL across Omega") {
    for (int i = 0; i < 10000; ++i) {
        const State u = oracles::omega_point(i);
        REQUIRE(lambda1(u, kP) < lambda2(u));
        if (u.n > 0.0) {
            const StructureFlags f = check_structure(u, kP);
            REQUIRE(f.gnl_field1 == Tristate::yes);
            REQUIRE(f.gnl_field2 == Tristate::yes);
        }
    }
}

TEST_CASE("formulas match independent re-derivation pointwise") {
    // lambda1^2 * 2C == h^3 n and the printed GNL expressions.
    for (int i = 0; i < 500; ++i) {
        const State u = oracles::omega_point(i);
        const double l1 = lambda1(u, kP);
        REQUIRE(l1 * l1 * 2.0 * kP.C ==
                Catch::Approx(u.h * u.h * u.h * u.n).epsilon(1e-12).margin(1e-300));
        if (u.n > 0.0) {
            const double g1 = 0.5 * std::sqrt(u.h * u.h * u.h / (2.0 * kP.C * u.n));
            REQUIRE(std::isfinite(g1));
            REQUIRE(g1 > 0.0);
        }
    }
}
