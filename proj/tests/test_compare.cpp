#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsw/compare.hpp"

using namespace dsw;

namespace {

GridFunction synthetic_field(Real L, int n, Real epsilon, const Evaluator& f) {
    GridFunction gf;
    gf.grid = Grid1D{L, n};
    gf.epsilon = epsilon;
    gf.values.resize(n);
    for (int i = 0; i < n; ++i) gf.values[i] = f(gf.grid.x(i));
    return gf;
}

EdgeState synthetic_edge(Real x_minus) {
    EdgeState e;
    e.t = 0.4;
    e.x_minus = x_minus;
    e.u = -0.1;
    e.v = -0.85;
    e.u_t = 0.1;
    e.v_t = -0.4;
    e.c = 7.5;
    e.phi0 = -2.0;
    return e;
}

}  // namespace

TEST_CASE("loglog_fit recovers an exact power law") {
    const std::vector<Real> eps = {0.08, 0.04, 0.02, 0.01};
    std::vector<Real> del;
    for (Real e : eps) del.push_back(std::pow(e, 2.0 / 3.0));
    const ScalingFit fit = loglog_fit(eps, del);
    CHECK(fit.a == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(fit.b == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.sigma_a == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("fits are bit-reproducible") {
    const std::vector<Real> eps = {0.08, 0.04, 0.02, 0.01};
    const std::vector<Real> del = {0.21, 0.18, 0.14, 0.115};
    const ScalingFit a = loglog_fit(eps, del);
    const ScalingFit b = loglog_fit(eps, del);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.r == b.r);
    CHECK(a.sigma_a == b.sigma_a);
}

TEST_CASE("loglog_fit input validation") {
    CHECK_THROWS_AS(loglog_fit({0.1, 0.2}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({0.1, 0.2, -0.3}, {1.0, 2.0, 3.0}), std::domain_error);
    CHECK_THROWS_AS(loglog_fit({0.1, 0.1, 0.1}, {1.0, 2.0, 3.0}), std::domain_error);
}

TEST_CASE("pointwise error") {
    const auto f = [](Real x) { return std::sin(3.0 * x); };
    const GridFunction gf = synthetic_field(15.0, 2048, 0.05, f);
    SUBCASE("identical inputs give zero") {
        const SampledCurve c = pointwise_error(gf, f, -4.0, -1.0);
        CHECK(c.values.abs().maxCoeff() == 0.0);
        CHECK(c.x.size() > 100);
        CHECK(c.x[0] >= -4.0);
        CHECK(c.x[c.x.size() - 1] <= -1.0);
    }
    SUBCASE("window outside the grid is rejected") {
        CHECK_THROWS_AS(pointwise_error(gf, f, -20.0, -16.0), std::domain_error);
    }
}

TEST_CASE("edge window policy") {
    const EdgeState e = synthetic_edge(-3.0);
    const Real w1 = edge_window_halfwidth(e, 0.01);
    const Real w2 = edge_window_halfwidth(e, 0.08);
    // width scales like eps^{2/3}
    CHECK(w2 / w1 == doctest::Approx(std::pow(8.0, 2.0 / 3.0)).epsilon(1e-12));
    EdgeWindowPolicy wide;
    wide.z_halfwidth = 4.0;
    CHECK(edge_window_halfwidth(e, 0.01, wide) == doctest::Approx(2.0 * w1).epsilon(1e-12));

    const GridFunction gf = synthetic_field(15.0, 4096, 0.01, [](Real) { return 0.2; });
    CHECK(max_error_near_edge(gf, [](Real) { return 0.2; }, e) == 0.0);
    CHECK(max_error_near_edge(gf, [](Real) { return 0.0; }, e) ==
          doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("better zone detection") {
    const Real eps = 0.02;
    const EdgeState e = synthetic_edge(-3.0);
    const Real xl = e.x_minus;
    // synthetic truth: zero field
    const GridFunction gf = synthetic_field(15.0, 8192, eps, [](Real) { return 0.0; });

    SUBCASE("crossing envelopes give a closed zone straddling the edge") {
        // multiscale error grows away from the edge, the other shrinks toward it
        const Evaluator ms = [&](Real x) { return 0.30 * std::abs(x - xl); };
        const Evaluator as = [&](Real x) { return 0.05 + 0.0 * x; };
        const ZoneBounds zb = better_zone(gf, ms, as, e, eps);
        CHECK(!zb.left_open);
        CHECK(!zb.right_open);
        CHECK(zb.left < xl);
        CHECK(zb.right > xl);
        // crossings land at |x - xl| = 0.05/0.30 up to the envelope window bias
        CHECK(zb.right - xl == doctest::Approx(0.05 / 0.30).epsilon(0.3));
        CHECK(zb.width() == doctest::Approx(2.0 * 0.05 / 0.30).epsilon(0.3));
        CHECK(std::abs((zb.right - xl) - (xl - zb.left)) < 0.02);
    }

    SUBCASE("multiscale everywhere worse reports an open zone") {
        const Evaluator ms = [](Real) { return 0.5; };
        const Evaluator as = [](Real) { return 0.0; };
        const ZoneBounds zb = better_zone(gf, ms, as, e, eps);
        CHECK(zb.left_open);
        CHECK(zb.right_open);
    }

    SUBCASE("multiscale everywhere better reports an open zone at the scan limits") {
        const Evaluator ms = [](Real) { return 0.0; };
        const Evaluator as = [](Real) { return 0.5; };
        const ZoneBounds zb = better_zone(gf, ms, as, e, eps);
        CHECK(zb.left_open);
        CHECK(zb.right_open);
        const Real span = 10.0 * std::pow(eps, 2.0 / 3.0);
        CHECK(zb.right - xl == doctest::Approx(span).epsilon(0.02));
        CHECK(xl - zb.left == doctest::Approx(span).epsilon(0.02));
    }
}
