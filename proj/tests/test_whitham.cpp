#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsw/initial_data.hpp"
#include "dsw/quadrature.hpp"
#include "dsw/whitham.hpp"

using namespace dsw;

namespace {

const Sech2Model& model() {
    static const Sech2Model m;
    return m;
}

// Oracle: nested adaptive quadrature of (q0) with the weight singularities
// removed by substitution (mu = 1 - 2 sigma^2, nu = cos phi).
Real q_adaptive_oracle(Real b1, Real b2, Real b3, Real tol = 1e-11) {
    const auto inner = [&](Real nu) {
        const Real lam = 0.5 * (1.0 + nu) * b1 + 0.5 * (1.0 - nu) * b2;
        return adaptive_simpson(
            [&](Real sig) {
                const Real arg = (1.0 - sig * sig) * lam + sig * sig * b3;
                return model().f_minus(std::min(arg, -1e-14));
            },
            0.0, 1.0, tol);
    };
    const Real outer = adaptive_simpson([&](Real ph) { return inner(std::cos(ph)); }, 0.0,
                                        pi, tol);
    return outer / pi;
}

}  // namespace

TEST_CASE("q at the fully degenerate point equals f_minus") {
    for (Real b : {-0.9, -0.5, -0.2}) {
        const QEval qe = q_with_partials(model(), b, b, b);
        CHECK(qe.q == doctest::Approx(model().f_minus(b)).epsilon(1e-12));
        // all partials coincide by symmetry
        CHECK(qe.d1 == doctest::Approx(qe.d2).epsilon(1e-10));
        CHECK(qe.d2 == doctest::Approx(qe.d3).epsilon(1e-10));
    }
}

TEST_CASE("q is symmetric under argument permutations") {
    const Real b[3] = {-0.3, -0.5, -0.7};
    const Real ref = q_with_partials(model(), b[0], b[1], b[2]).q;
    int idx[3] = {0, 1, 2};
    std::sort(idx, idx + 3);
    do {
        const Real v = q_with_partials(model(), b[idx[0]], b[idx[1]], b[idx[2]]).q;
        CHECK(v == doctest::Approx(ref).epsilon(1e-10));
    } while (std::next_permutation(idx, idx + 3));
}

TEST_CASE("q against the adaptive-quadrature oracle") {
    CHECK(q_epd(model(), -0.3, -0.5, -0.7) ==
          doctest::Approx(q_adaptive_oracle(-0.3, -0.5, -0.7)).epsilon(1e-9));
    CHECK(q_epd(model(), -0.1, -0.55, -0.95) ==
          doctest::Approx(q_adaptive_oracle(-0.1, -0.55, -0.95)).epsilon(1e-9));
    CHECK_THROWS_AS(q_epd(model(), 0.2, -0.5, -0.7), std::domain_error);
}

TEST_CASE("q partials differentiate under the integral") {
    const Real h = 1e-6;
    const QEval qe = q_with_partials(model(), -0.3, -0.5, -0.7);
    const Real fd1 = (q_with_partials(model(), -0.3 + h, -0.5, -0.7).q -
                      q_with_partials(model(), -0.3 - h, -0.5, -0.7).q) /
                     (2 * h);
    const Real fd2 = (q_with_partials(model(), -0.3, -0.5 + h, -0.7).q -
                      q_with_partials(model(), -0.3, -0.5 - h, -0.7).q) /
                     (2 * h);
    const Real fd3 = (q_with_partials(model(), -0.3, -0.5, -0.7 + h).q -
                      q_with_partials(model(), -0.3, -0.5, -0.7 - h).q) /
                     (2 * h);
    CHECK(qe.d1 == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(qe.d2 == doctest::Approx(fd2).epsilon(1e-7));
    CHECK(qe.d3 == doctest::Approx(fd3).epsilon(1e-7));
}

TEST_CASE("euler-poisson-darboux system") {
    // 2 (b_i - b_j) d2q/db_i db_j = dq/db_i - dq/db_j, cross terms by FD
    const Real b[3] = {-0.25, -0.5, -0.8};
    const Real h = 1e-5;
    const auto partial = [&](int i, Real d1, Real d2, Real d3) {
        const QEval qe = q_with_partials(model(), b[0] + d1, b[1] + d2, b[2] + d3);
        return i == 0 ? qe.d1 : (i == 1 ? qe.d2 : qe.d3);
    };
    const QEval qe = q_with_partials(model(), b[0], b[1], b[2]);
    const Real dq[3] = {qe.d1, qe.d2, qe.d3};
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& p : pairs) {
        const int i = p[0], j = p[1];
        Real dj[3] = {0, 0, 0};
        dj[j] = h;
        const Real qij = (partial(i, dj[0], dj[1], dj[2]) -
                          partial(i, -dj[0], -dj[1], -dj[2])) /
                         (2 * h);
        const Real res = 2.0 * (b[i] - b[j]) * qij - (dq[i] - dq[j]);
        CHECK(std::abs(res) < 1e-6);
    }
}

TEST_CASE("identity: f_minus from q on the degenerate diagonal") {
    for (Real u : {-0.4, -0.25}) {
        for (Real v : {-0.8, -0.6}) {
            const QEval qe = q_with_partials(model(), u, v, v);
            const Real lhs = 2.0 * (u - v) * qe.d1 + qe.q;
            CHECK(std::abs(lhs - model().f_minus(u)) < 1e-8);
        }
    }
}

TEST_CASE("identity: phi from q partials on the degenerate diagonal") {
    for (Real u : {-0.35, -0.2}) {
        for (Real v : {-0.75, -0.55}) {
            const QEval qe = q_with_partials(model(), u, v, v);
            const Real rhs = (qe.d2 + qe.d3) + qe.d1;
            CHECK(std::abs(phi(model(), v, u) - rhs) < 1e-8);
        }
    }
}

TEST_CASE("phi collapses to f_minus_prime on the diagonal") {
    for (Real u : {-0.8, -0.5, -0.3})
        CHECK(phi(model(), u, u) == doctest::Approx(model().f_minus_prime(u)).epsilon(1e-12));
}

TEST_CASE("phi derivative identity in the second slot") {
    // d/du Phi(v; u) = (Phi(v,u) - Phi(u,u)) / (2 (v - u))
    for (Real u : {-0.3, -0.45}) {
        for (Real v : {-0.75, -0.6}) {
            const Real lhs = phi_du(model(), v, u);
            const Real rhs =
                (phi(model(), v, u) - model().f_minus_prime(u)) / (2.0 * (v - u));
            CHECK(std::abs(lhs - rhs) < 1e-6);
        }
    }
}

TEST_CASE("phi derivatives match finite differences") {
    const Real u = -0.3, v = -0.7, h = 1e-6;
    const PhiDerivs pd = phi_derivs(model(), v, u);
    const Real fdv = (phi(model(), v + h, u) - phi(model(), v - h, u)) / (2 * h);
    CHECK(pd.dv == doctest::Approx(fdv).epsilon(1e-7));
    const Real fdvv =
        (phi(model(), v + h, u) - 2 * phi(model(), v, u) + phi(model(), v - h, u)) / (h * h);
    CHECK(pd.dvv == doctest::Approx(fdvv).epsilon(1e-3));
}

TEST_CASE("whitham speeds in the degenerate limits") {
    SUBCASE("leading edge: b2 = b3") {
        const WhithamTriple b{-0.3, -0.6, -0.6};
        const Eigen::Vector3d v = whitham_speeds(b);
        CHECK(v[0] == doctest::Approx(6.0 * b.b1).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(12.0 * b.b2 - 6.0 * b.b1).epsilon(1e-12));
        CHECK(v[2] == doctest::Approx(v[1]).epsilon(1e-12));
    }
    SUBCASE("near-degenerate leading edge is continuous") {
        const WhithamTriple b{-0.3, -0.6 + 1e-9, -0.6 - 1e-9};
        const Eigen::Vector3d v = whitham_speeds(b);
        CHECK(v[0] == doctest::Approx(6.0 * b.b1).epsilon(1e-6));
        CHECK(v[1] == doctest::Approx(12.0 * -0.6 - 6.0 * b.b1).epsilon(1e-6));
    }
    SUBCASE("trailing edge: b2 -> b1 stays finite with v1 = v2") {
        for (Real gap : {1e-4, 1e-7}) {
            const WhithamTriple b{-0.4, -0.4 - gap, -0.9};
            const Eigen::Vector3d v = whitham_speeds(b);
            CHECK(std::isfinite(v[0]));
            CHECK(std::abs(v[0] - v[1]) < 2000.0 * gap * std::log(1.0 / gap));
            const Real soliton = 2.0 * (b.b1 + b.b2 + b.b3);
            CHECK(v[0] == doctest::Approx(soliton).epsilon(0.05));
        }
        const WhithamTriple b{-0.4, -0.4, -0.9};
        const Eigen::Vector3d v = whitham_speeds(b);
        CHECK(v[0] == doctest::Approx(v[1]).epsilon(1e-14));
        CHECK(v[2] == doctest::Approx(6.0 * b.b3).epsilon(1e-12));
    }
}

TEST_CASE("leading edge dynamics") {
    const Real t_c = breakup(model()).t_c;

    SUBCASE("collapse onto the breakup point") {
        const EdgeState s = solve_leading_edge(model(), t_c + 1e-6);
        CHECK(std::abs(s.u + 2.0 / 3.0) < 5e-3);
        CHECK(std::abs(s.v + 2.0 / 3.0) < 5e-3);
        CHECK(s.u > -2.0 / 3.0);
        CHECK(s.v < -2.0 / 3.0);
        CHECK(std::abs(s.x_minus - (-1.5245042373906)) < 1e-4);
    }

    SUBCASE("reference edge position at t = 0.4") {
        const EdgeState s = solve_leading_edge(model(), 0.4);
        CHECK(std::abs(s.x_minus - (-3.2297)) < 5e-4);
    }

    SUBCASE("signs along the trajectory") {
        const EdgeTrajectory traj(model(), 0.41);
        for (Real t : {0.22, 0.25, 0.3, 0.35, 0.4}) {
            const EdgeState s = traj.state(t);
            CHECK(s.v_t < 0.0);
            CHECK(s.c > 0.0);
            CHECK(s.u > s.v);
            // residuals of the defining system (edge quadrature resolution)
            CHECK(std::abs(phi(model(), s.v, s.u, 256) + 6.0 * t) < 1e-10);
            CHECK(std::abs(phi_derivs(model(), s.v, s.u, 256).dv) < 1e-10);
            CHECK(std::abs(6.0 * t * s.u + model().f_minus(s.u) - s.x_minus) < 1e-12);
            // v_t = -3/c is the same statement twice
            CHECK(s.v_t == doctest::Approx(-3.0 / s.c).epsilon(1e-10));
        }
    }
}

TEST_CASE("phase integral phi0") {
    const EdgeTrajectory traj(model(), 0.41);
    const Real t_c = traj.t_c();

    SUBCASE("vanishes at breakup") { CHECK(traj.phi0(t_c) == 0.0); }

    SUBCASE("derivative matches the integrand") {
        const Real t = 0.3, h = 1e-5;
        const Real fd = (traj.phi0(t + h) - traj.phi0(t - h)) / (2 * h);
        const EdgeState s = traj.state(t);
        CHECK(std::abs(fd + 16.0 * std::pow(s.u - s.v, 1.5)) < 1e-6);
    }

    SUBCASE("independent quadrature oracle") {
        const Real t = 0.4;
        const auto integrand = [&](Real tau) {
            const EdgeState s = traj.state(std::max(tau, t_c + 1e-13));
            return -16.0 * std::pow(s.u - s.v, 1.5);
        };
        const Real oracle = adaptive_simpson(integrand, t_c, t, 1e-10);
        CHECK(traj.phi0(t) == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(traj.phi0(t) < 0.0);
    }

    SUBCASE("closed-form identity via the q function") {
        // phi0(t) = 4 (u-v)^{3/2} (2t + dq/db1 at (u, v, v))
        for (Real t : {0.3, 0.4}) {
            const EdgeState s = traj.state(t);
            const QEval qe = q_with_partials(model(), s.u, s.v, s.v);
            const Real closed = 4.0 * std::pow(s.u - s.v, 1.5) * (2.0 * t + qe.d1);
            CHECK(traj.phi0(t) == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("hodograph solve across the zone at t = 0.4") {
    const EdgeTrajectory traj(model(), 0.41);
    WhithamZone zone(model(), traj, 0.4);
    const Real xm = zone.x_minus();
    const Real xp = zone.x_plus();
    CHECK(xp > xm);

    SUBCASE("edge boundary condition") {
        const HodographSolveResult r = zone.solve_at(xm);
        CHECK(r.triple.b1 == doctest::Approx(zone.edge().u).epsilon(1e-10));
        CHECK(r.triple.b2 == doctest::Approx(zone.edge().v).epsilon(1e-10));
        CHECK(r.triple.b3 == doctest::Approx(zone.edge().v).epsilon(1e-10));
    }

    SUBCASE("continuation succeeds on a dense sweep and satisfies the original form") {
        std::vector<Real> xs;
        for (int i = 1; i < 200; ++i) xs.push_back(xm + (xp - 1e-4 - xm) * i / 200.0);
        const auto sols = zone.sweep(xs);
        for (size_t i = 0; i < xs.size(); ++i) {
            CHECK(sols[i].residual_norm < 1e-9);
            CHECK(sols[i].triple.ordered());
            const Eigen::Vector3d res = hodograph_residual_original(
                model(), sols[i].triple, xs[i], 0.4, 64, sols[i].x3);
            CHECK(res.cwiseAbs().maxCoeff() < 1e-8);
            const Eigen::Vector3d v = whitham_speeds(sols[i].triple);
            CHECK(v[0] > v[1]);
            CHECK(v[1] > v[2]);
        }
    }

    SUBCASE("small-amplitude laws near the edge") {
        const EdgeState& e = zone.edge();
        const Real fp = model().f_minus_prime(e.u);
        std::vector<Real> rds, rDs;
        for (Real dx : {1e-3, 1e-4, 1e-5, 1e-6}) {
            const HodographSolveResult r = zone.solve_at(xm + dx);
            const Real Delta = r.triple.b1 - e.u;
            const Real delta = 0.5 * (r.triple.b2 - r.triple.b3);
            const Real rel_Delta = std::abs(Delta / (dx / (6.0 * 0.4 + fp)) - 1.0);
            const Real rel_delta = std::abs(delta / std::sqrt(dx / e.c) - 1.0);
            CHECK(rel_Delta < 20.0 * std::sqrt(dx));
            CHECK(rel_delta < 20.0 * std::sqrt(dx));
            rDs.push_back(rel_Delta);
            rds.push_back(rel_delta);
        }
        // the laws sharpen toward the edge roughly like sqrt(x - x^-)
        CHECK(rDs[0] > 3.0 * rDs[2]);
        CHECK(rds[0] > 3.0 * rds[2]);
    }

    SUBCASE("x- and t-continuation agree") {
        // a point interior to the 0.38-zone stays interior as the zone grows
        WhithamZone z38(model(), traj, 0.38);
        const Real x_test = z38.x_minus() + 0.35 * (z38.x_plus() - z38.x_minus());
        WhithamTriple b = z38.solve_at(x_test).triple;
        for (int i = 1; i <= 20; ++i) {
            const Real t = 0.38 + 0.02 * i / 20.0;
            b = solve_whitham(model(), x_test, t, b).triple;
        }
        const HodographSolveResult direct = zone.solve_at(x_test);
        CHECK(std::abs(b.b1 - direct.triple.b1) < 1e-7);
        CHECK(std::abs(b.b2 - direct.triple.b2) < 1e-7);
        CHECK(std::abs(b.b3 - direct.triple.b3) < 1e-7);
    }
}

TEST_CASE("trailing edge") {
    SUBCASE("zone collapses at breakup") {
        const Real t_c = breakup(model()).t_c;
        const EdgeTrajectory traj(model(), t_c + 3e-3);
        WhithamZone zone(model(), traj, t_c + 2e-3);
        const Real xp = zone.x_plus();
        CHECK(std::abs(xp - breakup(model()).x_c) < 0.05);
        CHECK(xp > zone.x_minus());
    }
    SUBCASE("zone width grows monotonically") {
        const EdgeTrajectory traj(model(), 0.41);
        Real prev = 0.0;
        for (Real t : {0.25, 0.3, 0.35, 0.4}) {
            WhithamZone zone(model(), traj, t);
            const Real width = zone.x_plus() - zone.x_minus();
            CHECK(width > prev);
            prev = width;
        }
    }
}

TEST_CASE("foot-parameterized q agrees with the tensor rule before the hump") {
    for (Real b3 : {-0.7, -0.9, -0.96}) {
        const Real x3 = model().f_minus(b3);
        const QEval a = q_with_partials(model(), -0.05, -0.55, b3, 128);
        const QEval b = q_with_partials_foot(model(), -0.05, -0.55, x3, 128);
        CHECK(std::abs(a.q - b.q) < 1e-11);
        CHECK(std::abs(a.d1 - b.d1) < 1e-10);
        CHECK(std::abs(a.d2 - b.d2) < 1e-10);
        CHECK(std::abs(a.d3 - b.d3) < 1e-10);
    }
}

TEST_CASE("continuation crosses the hump inside the zone at t = 0.4") {
    const EdgeTrajectory traj(model(), 0.41);
    WhithamZone zone(model(), traj, 0.4);
    const Real xm = zone.x_minus();
    std::vector<Real> xs;
    for (int i = 0; i <= 40; ++i) xs.push_back(xm + 0.30 + 0.40 * i / 40.0);
    const auto sols = zone.sweep(xs);
    Real b3_min = 0.0;
    bool crossed = false;
    for (size_t i = 0; i < sols.size(); ++i) {
        b3_min = std::min(b3_min, sols[i].triple.b3);
        CHECK(sols[i].triple.b3 >= -1.0);
        if (sols[i].x3 > 0.0) crossed = true;
    }
    CHECK(b3_min < -0.999);  // beta3 grazes the hump bottom
    CHECK(crossed);          // and the foot passes over it
    // the third invariant is V-shaped: decreasing then increasing
    size_t k_min = 0;
    for (size_t i = 0; i < sols.size(); ++i)
        if (sols[i].triple.b3 < sols[k_min].triple.b3) k_min = i;
    CHECK(k_min > 3);
    CHECK(k_min < sols.size() - 4);
    for (size_t i = 1; i <= k_min; ++i) CHECK(sols[i].triple.b3 <= sols[i - 1].triple.b3 + 1e-12);
    for (size_t i = k_min + 1; i < sols.size(); ++i)
        CHECK(sols[i].triple.b3 >= sols[i - 1].triple.b3 - 1e-12);
}

TEST_CASE("post-hump q formula joins the pre-hump one at the crossover") {
    // at b3 = -1 the f_+ contribution is empty and (q01) must agree with (q0)
    const Real b1 = -0.3, b2 = -0.6, b3 = -1.0 + 1e-9;
    const Real q0 = q_with_partials(model(), b1, b2, b3, 256).q;
    const Real q1 = q_epd_posthump(model(), b1, b2, b3, 256);
    CHECK(q1 == doctest::Approx(q0).epsilon(1e-4));
}
