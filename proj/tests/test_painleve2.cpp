#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsw/painleve2.hpp"
#include "dsw/specfun.hpp"
#include "oracles.hpp"

using namespace dsw;
using oracles::fd_bvp_oracle;

TEST_CASE("boundary formulas") {
    // direct evaluation of the truncated tails
    const Real w = 10.0;
    const Real left = std::sqrt(w / 2) - std::pow(w, -2.5) / (8 * std::sqrt(2.0)) -
                      73.0 / (128 * std::sqrt(2.0)) * std::pow(w, -5.5);
    CHECK(hm_boundary_left(-10.0) == doctest::Approx(left).epsilon(1e-15));
    CHECK(hm_boundary_left(-10.0) == doctest::Approx(2.2357871937450842).epsilon(1e-12));
    const Real corr = std::abs(hm_boundary_left(-100.0) / std::sqrt(50.0) - 1.0);
    CHECK(corr < 1e-6);
    CHECK(corr > 0.0);
    CHECK_THROWS_AS(hm_boundary_left(-4.0), std::domain_error);

    CHECK(hm_boundary_right(10.0) == doctest::Approx(1.1083e-10).epsilon(1e-3));
    CHECK(hm_boundary_right(8.0) == doctest::Approx(airy_ai(8.0)).epsilon(1e-2));
    CHECK_THROWS_AS(hm_boundary_right(4.0), std::domain_error);
}

TEST_CASE("starting iterate") {
    CHECK(hm_initial_iterate(0.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("hastings-mcleod collocation solution") {
    const HastingsMcLeodSolution sol = solve_hastings_mcleod();

    SUBCASE("spectral coefficients decay") {
        const Vector& c = sol.core().coeffs;
        const Real cmax = c.cwiseAbs().maxCoeff();
        CHECK(std::abs(c[c.size() - 1]) / cmax < 1e-10);
    }

    SUBCASE("interior residual") {
        // collocation points away from the interval ends
        const int N = sol.core().degree;
        Real rmax = 0.0;
        for (int l = 1; l < N; ++l) {
            const Real x = std::cos(pi * l / N);
            const Real z = -10.0 + (x + 1.0) * 10.0;
            if (z < -9.5 || z > 9.5) continue;
            rmax = std::max(rmax, std::abs(sol.residual(z)));
        }
        CHECK(rmax < 1e-8);
    }

    SUBCASE("residual on an oversampled interior grid") {
        Real rmax = 0.0;
        for (int i = 0; i <= 1280; ++i) {
            const Real z = -9.5 + 19.0 * i / 1280.0;
            rmax = std::max(rmax, std::abs(sol.residual(z)));
        }
        CHECK(rmax < 1e-8);
    }

    SUBCASE("value at zero against the FD oracle") {
        CHECK(sol(0.0) == doctest::Approx(0.36706).epsilon(3e-4));
        const std::vector<Real> oracle = fd_bvp_oracle(-10.0, 10.0, 10000);
        CHECK(std::abs(sol(0.0) - oracle[5000]) < 1e-6);
    }

    SUBCASE("agreement with the FD oracle on [-8, 8]") {
        const int m = 10000;
        const std::vector<Real> oracle = fd_bvp_oracle(-10.0, 10.0, m);
        Real dmax = 0.0;
        for (int i = 0; i <= m; ++i) {
            const Real z = -10.0 + 20.0 * i / m;
            if (z < -8.0 || z > 8.0) continue;
            dmax = std::max(dmax, std::abs(sol(z) - oracle[i]));
        }
        CHECK(dmax < 1e-6);
    }

    SUBCASE("positivity and monotone decay on [0, z_r]") {
        Real prev = sol(0.0);
        CHECK(prev > 0.0);
        for (int i = 1; i <= 1000; ++i) {
            const Real z = 10.0 * i / 1000.0;
            const Real v = sol(z);
            CHECK(v > 0.0);
            CHECK(v <= prev + 1e-14);
            prev = v;
        }
        // positive on the growing side as well
        for (int i = 0; i <= 200; ++i) CHECK(sol(-30.0 + 30.0 * i / 200.0) > 0.0);
    }

    SUBCASE("left-tail approach to sqrt(-z/2)") {
        for (Real z : {-10.0, -9.0, -8.0, -7.0, -6.0}) {
            const Real gap = std::abs(sol(z) - std::sqrt(-z / 2.0));
            const Real predicted = std::pow(-z, -2.5) / (8.0 * std::sqrt(2.0));
            CHECK(gap > 0.5 * predicted);
            CHECK(gap < 2.0 * predicted);
        }
    }

    SUBCASE("global evaluator: boundary, tails, airy ratio") {
        CHECK(std::abs(sol(-10.0) - hm_boundary_left(-10.0)) < 1e-10);
        CHECK(std::abs(sol(10.0) - hm_boundary_right(10.0)) < 1e-10);
        const Real w = 30.0;
        const Real tail = std::sqrt(15.0) - std::pow(w, -2.5) / (8 * std::sqrt(2.0)) -
                          73.0 / (128 * std::sqrt(2.0)) * std::pow(w, -5.5);
        CHECK(sol(-30.0) == doctest::Approx(tail).epsilon(1e-15));
        CHECK(sol(5.0) / airy_ai(5.0) == doctest::Approx(1.0).epsilon(1e-3));
        // continuity across the interval ends
        CHECK(std::abs(sol(-10.0 - 1e-9) - sol(-10.0 + 1e-9)) < 1e-8);
        CHECK(std::abs(sol(10.0 - 1e-9) - sol(10.0 + 1e-9)) < 1e-8);
    }
}

TEST_CASE("solver guards") {
    HmSolveOptions opts;
    opts.max_iterations = 5;
    CHECK_THROWS_AS(solve_hastings_mcleod(opts), std::runtime_error);
}
