#include "dsw/whitham.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dsw/quadrature.hpp"

namespace dsw {

namespace {

// Quadrature rules shared across calls; sizes fixed so magic statics apply.
const GaussLegendre& unit_rule(int n) {
    switch (n) {
        case 32: { static const GaussLegendre r(32, 0.0, 1.0); return r; }
        case 64: { static const GaussLegendre r(64, 0.0, 1.0); return r; }
        case 128: { static const GaussLegendre r(128, 0.0, 1.0); return r; }
        case 256: { static const GaussLegendre r(256, 0.0, 1.0); return r; }
        case 512: { static const GaussLegendre r(512, 0.0, 1.0); return r; }
        default: throw std::invalid_argument("unit_rule: supported sizes are 32..512");
    }
}

const Array& chebyshev_rule(int n) {
    switch (n) {
        case 32: { static const Array r = gauss_chebyshev_nodes(32); return r; }
        case 64: { static const Array r = gauss_chebyshev_nodes(64); return r; }
        case 128: { static const Array r = gauss_chebyshev_nodes(128); return r; }
        case 256: { static const Array r = gauss_chebyshev_nodes(256); return r; }
        case 512: { static const Array r = gauss_chebyshev_nodes(512); return r; }
        default: throw std::invalid_argument("chebyshev_rule: supported sizes are 32..512");
    }
}

}  // namespace

namespace {

// E/K = 1 - s^2/2 - s^4/16 - s^6/32 - 41 s^8/2048 - 59 s^10/4096 - ...
// The deficit below collects every term past the -s^2/2 one.
Real ek_series_deficit(Real s2) {
    const Real s4 = s2 * s2;
    return s4 * (1.0 / 16.0 + s2 * (1.0 / 32.0 + s2 * (41.0 / 2048.0 + s2 * 59.0 / 4096.0)));
}

}  // namespace

EllipticParams elliptic_params(const WhithamTriple& b) {
    EllipticParams p;
    const Real span = b.b1 - b.b3;
    p.s2 = (b.b2 - b.b3) / span;
    if (p.s2 < 1e-28) {
        p.leading_degenerate = true;
        p.s = 0.0;
        p.K = p.E = 0.5 * pi;
        p.alpha = -b.b3;
        p.d1 = b.b1 - b.b3;
        p.d2 = 0.5 * (b.b2 - b.b3);
        p.d3 = p.d2 - (b.b2 - b.b3);
        p.nome = 0.0;
        return p;
    }
    if (p.s2 > 1.0 - 2.1e-12) {
        p.trailing_degenerate = true;
        p.s = 1.0;
        p.K = std::numeric_limits<Real>::infinity();
        p.E = 1.0;
        p.alpha = -b.b1;
        p.d1 = 0.0;
        p.d2 = b.b2 - b.b1;
        p.d3 = b.b3 - b.b1;
        p.nome = 1.0;
        return p;
    }
    p.s = std::sqrt(p.s2);
    const EllipticKE ke = elliptic_KE(p.s);
    p.K = ke.K;
    p.E = ke.E;
    p.nome = std::exp(-pi * elliptic_Kprime(p.s) / ke.K);
    if (p.s2 < 0.01) {
        // d2 = (b2-b3)/2 - span (s^4/16 + ...): no cancellation at small s
        p.d2 = 0.5 * (b.b2 - b.b3) - span * ek_series_deficit(p.s2);
        p.alpha = p.d2 - b.b2;
    } else {
        p.alpha = -b.b1 + span * ke.E / ke.K;
        p.d2 = b.b2 + p.alpha;
    }
    p.d1 = p.d2 + (b.b1 - b.b2);
    p.d3 = p.d2 - (b.b2 - b.b3);
    return p;
}

Eigen::Vector3d whitham_speeds(const WhithamTriple& b) {
    const EllipticParams p = elliptic_params(b);
    const Real sum2 = 2.0 * (b.b1 + b.b2 + b.b3);
    Eigen::Vector3d v;
    if (p.leading_degenerate) {
        v[0] = 4.0 * (b.b1 - b.b2) + sum2;
        v[1] = 8.0 * (b.b2 - b.b1) + sum2;
        v[2] = 8.0 * (b.b3 - b.b1) + sum2;
        return v;
    }
    if (p.trailing_degenerate) {
        v[0] = sum2;
        v[1] = sum2;
        v[2] = 4.0 * (b.b3 - b.b2) + sum2;
        return v;
    }
    const Real beta[3] = {b.b1, b.b2, b.b3};
    const Real dens[3] = {p.d1, p.d2, p.d3};
    for (int i = 0; i < 3; ++i) {
        Real prod = 4.0;
        for (int k = 0; k < 3; ++k)
            if (k != i) prod *= beta[i] - beta[k];
        if (std::abs(dens[i]) < 1e-12) {
            // collapsed-denominator limit: beta_i + alpha ~ (b2 - b3)/2
            v[i] = 8.0 * (beta[i] - b.b1) + sum2;
        } else {
            v[i] = prod / dens[i] + sum2;
        }
    }
    return v;
}

QEval q_with_partials(const InitialDataModel& model, Real b1, Real b2, Real b3,
                      int nodes) {
    const GaussLegendre& gl = unit_rule(nodes);
    const Array& nu = chebyshev_rule(nodes);
    QEval out{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const Real cnu1 = 0.5 * (1.0 + nu[j]);
        const Real cnu2 = 0.5 * (1.0 - nu[j]);
        const Real lam = cnu1 * b1 + cnu2 * b2;
        Real qj = 0.0, dl = 0.0, d3 = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const Real sig = gl.nodes[i];
            const Real sig2 = sig * sig;
            const Real w = gl.weights[i];
            const Real arg = (1.0 - sig2) * lam + sig2 * b3;
            qj += w * model.f_minus(arg);
            const Real fp = model.f_minus_prime(arg);
            dl += w * fp * (1.0 - sig2);
            d3 += w * fp * sig2;
        }
        out.q += qj;
        out.d1 += dl * cnu1;
        out.d2 += dl * cnu2;
        out.d3 += d3;
    }
    const Real inv = 1.0 / nodes;
    out.q *= inv;
    out.d1 *= inv;
    out.d2 *= inv;
    out.d3 *= inv;
    return out;
}

Real q_epd(const InitialDataModel& model, Real b1, Real b2, Real b3) {
    if (!(b1 <= 0.0 && b1 >= b2 && b2 >= b3 && b3 >= -1.0))
        throw std::domain_error("q_epd: need 0 >= b1 >= b2 >= b3 >= -1");
    Real prev = q_with_partials(model, b1, b2, b3, 64).q;
    for (int n : {128, 256, 512}) {
        const Real cur = q_with_partials(model, b1, b2, b3, n).q;
        if (std::abs(cur - prev) < 1e-11 * std::max(Real(1), std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("q_epd: quadrature not converged at 512 nodes per axis");
}

Real q_epd_posthump(const InitialDataModel& model, Real b1, Real b2, Real b3, int nodes) {
    if (!(b1 <= 0.0 && b1 > b2 && b2 > b3 && b3 > -1.0))
        throw std::domain_error("q_epd_posthump: need 0 >= b1 > b2 > b3 > -1");
    const GaussLegendre& gl = unit_rule(nodes);
    const Array& th = chebyshev_rule(nodes);
    Real acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const Real lam = 0.5 * (b1 + b2) + 0.5 * (b1 - b2) * th[j];
        // I- = 2 int_0^{sqrt(lam+1)} f_-(lam - r^2) dr
        const Real rm = std::sqrt(lam + 1.0);
        Real im = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const Real r = rm * gl.nodes[i];
            Real arg = lam - r * r;
            arg = std::min(arg, -1e-300);
            arg = std::max(arg, -1.0);
            im += rm * gl.weights[i] * model.f_minus(arg);
        }
        im *= 2.0;
        // I+ = -2 int_{sqrt(lam-b3)}^{sqrt(lam+1)} f_+(lam - r^2) dr
        const Real ra = std::sqrt(lam - b3);
        Real ip = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const Real r = ra + (rm - ra) * gl.nodes[i];
            Real arg = lam - r * r;
            arg = std::min(arg, -1e-300);
            arg = std::max(arg, -1.0);
            ip += (rm - ra) * gl.weights[i] * model.f_plus(arg);
        }
        ip *= -2.0;
        acc += (im + ip) / std::sqrt(lam - b3);
    }
    // prefactor 1/(2 pi) continues the pre-hump formula across b3 = -1
    return acc / (2.0 * nodes);
}

QEval q_with_partials_foot(const InitialDataModel& model, Real b1, Real b2, Real x3,
                           int nodes) {
    // q = (1/2pi) int_{b2}^{b1} H(lam, x3) dlam / sqrt((b1-lam)(lam-b2)(lam-b3))
    // with H(lam, x3) = 2 x3 sqrt(lam - b3) - 2 int_{f-(lam)}^{x3} sqrt(lam - u0) dxi;
    // the foot substitution makes the kernel smooth across the hump at x3 = 0.
    const Real b3 = model.u0(x3);
    if (!(b1 <= 0.0 && b1 > b2 && b2 > b3))
        throw std::domain_error("q_with_partials_foot: need 0 >= b1 > b2 > u0(x3)");
    const GaussLegendre& gl = unit_rule(nodes);
    const Array& th = chebyshev_rule(nodes);
    QEval out{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const Real cth = th[j];
        const Real lam = 0.5 * (b1 + b2) + 0.5 * (b1 - b2) * cth;
        const Real fl = model.f_minus(lam);
        const Real wspan = std::sqrt(x3 - fl);
        // J = int sqrt(lam - u0), Jp = int 1/sqrt(lam - u0) over [f-(lam), x3],
        // both via xi = f-(lam) + w^2 so the endpoint square root is exact
        Real J = 0.0, Jp = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const Real w = wspan * gl.nodes[i];
            const Real xi = fl + w * w;
            const Real dv = std::max(lam - model.u0(xi), 0.0);
            const Real root = std::sqrt(dv);
            const Real gw = gl.weights[i] * wspan * 2.0 * w;
            J += gw * root;
            if (root > 0.0) Jp += gw / root;
        }
        const Real rb = std::sqrt(lam - b3);
        const Real H = 2.0 * x3 * rb - 2.0 * J;
        const Real Hlam = x3 / rb - Jp;
        out.q += H / rb;
        const Real core = Hlam / rb - 0.5 * H / (rb * rb * rb);
        out.d1 += core * 0.5 * (1.0 + cth);
        out.d2 += core * 0.5 * (1.0 - cth);
        out.d3 += -x3 / (rb * rb) + 0.5 * H / (rb * rb * rb);
    }
    const Real inv = 1.0 / (2.0 * nodes);
    out.q *= inv;
    out.d1 *= inv;
    out.d2 *= inv;
    out.d3 *= inv;
    return out;
}

Real phi(const InitialDataModel& model, Real v, Real u, int nodes) {
    const GaussLegendre& gl = unit_rule(nodes);
    Real acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const Real sig2 = gl.nodes[i] * gl.nodes[i];
        acc += gl.weights[i] * model.f_minus_prime(v + sig2 * (u - v));
    }
    return acc;
}

PhiDerivs phi_derivs(const InitialDataModel& model, Real v, Real u, int nodes) {
    const GaussLegendre& gl = unit_rule(nodes);
    PhiDerivs out{0.0, 0.0, 0.0};
    for (int i = 0; i < nodes; ++i) {
        const Real sig2 = gl.nodes[i] * gl.nodes[i];
        const Real w = gl.weights[i];
        const Real arg = v + sig2 * (u - v);
        out.value += w * model.f_minus_prime(arg);
        const Real om = 1.0 - sig2;
        out.dv += w * om * model.f_minus_second(arg);
        out.dvv += w * om * om * model.f_minus_third(arg);
    }
    return out;
}

Real phi_du(const InitialDataModel& model, Real v, Real u, int nodes) {
    const GaussLegendre& gl = unit_rule(nodes);
    Real acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const Real sig2 = gl.nodes[i] * gl.nodes[i];
        acc += gl.weights[i] * sig2 * model.f_minus_second(v + sig2 * (u - v));
    }
    return acc;
}

namespace {

// One quadrature pass for the leading-edge Newton system.
struct EdgeSystemEval {
    Real phi, phi_u, phi_v, phi_vv, phi_uv;
};

EdgeSystemEval edge_system(const InitialDataModel& model, Real u, Real v, int nodes = 256) {
    const GaussLegendre& gl = unit_rule(nodes);
    EdgeSystemEval e{0, 0, 0, 0, 0};
    for (int i = 0; i < nodes; ++i) {
        const Real sig2 = gl.nodes[i] * gl.nodes[i];
        const Real om = 1.0 - sig2;
        const Real w = gl.weights[i];
        const Real arg = v + sig2 * (u - v);
        const Real f2 = model.f_minus_second(arg);
        const Real f3 = model.f_minus_third(arg);
        e.phi += w * model.f_minus_prime(arg);
        e.phi_u += w * sig2 * f2;
        e.phi_v += w * om * f2;
        e.phi_vv += w * om * om * f3;
        e.phi_uv += w * om * sig2 * f3;
    }
    return e;
}

struct EdgePoint {
    Real u, v;
    EdgeSystemEval sys;
};

// Newton for Phi(v,u) + 6t = 0, d_v Phi = 0.
EdgePoint edge_newton(const InitialDataModel& model, Real t, Real u0, Real v0) {
    Real u = u0, v = v0;
    EdgeSystemEval e = edge_system(model, u, v);
    for (int it = 0; it < 80; ++it) {
        const Real F1 = e.phi + 6.0 * t;
        const Real F2 = e.phi_v;
        if (std::abs(F1) < 1e-12 && std::abs(F2) < 1e-12) return {u, v, e};
        const Real j11 = e.phi_u, j12 = e.phi_v;
        const Real j21 = e.phi_uv, j22 = e.phi_vv;
        const Real det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        const Real du = (F1 * j22 - F2 * j12) / det;
        const Real dv = (j11 * F2 - j21 * F1) / det;
        Real lam = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lam *= 0.5) {
            const Real un = u - lam * du;
            const Real vn = v - lam * dv;
            if (!(vn < un && un < 0.0 && vn > -1.0)) continue;
            const EdgeSystemEval en = edge_system(model, un, vn);
            const Real fn = std::abs(en.phi + 6.0 * t) + std::abs(en.phi_v);
            const Real f0 = std::abs(F1) + std::abs(F2);
            if (fn < f0 || fn < 1e-12) {
                u = un;
                v = vn;
                e = en;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    const Real F1 = e.phi + 6.0 * t;
    const Real F2 = e.phi_v;
    if (std::abs(F1) < 1e-10 && std::abs(F2) < 1e-10) return {u, v, e};
    std::ostringstream os;
    os << "edge_newton: no convergence at t=" << t << " (|F|=(" << F1 << "," << F2 << "))";
    throw std::runtime_error(os.str());
}

EdgeState assemble_edge_state(const InitialDataModel& model, Real t, const EdgePoint& p,
                              Real phi0) {
    EdgeState s;
    s.t = t;
    s.u = p.u;
    s.v = p.v;
    s.x_minus = 6.0 * t * p.u + model.f_minus(p.u);
    const Real fp = model.f_minus_prime(p.u);
    s.u_t = 12.0 * (p.v - p.u) / (6.0 * t + fp);
    s.v_t = 6.0 / ((p.u - p.v) * p.sys.phi_vv);
    s.c = -0.5 * (p.u - p.v) * p.sys.phi_vv;
    s.phi0 = phi0;
    return s;
}

}  // namespace

EdgeTrajectory::EdgeTrajectory(const InitialDataModel& model, Real t_max, int points)
    : model_(model), bp_(breakup(model)), t_max_(t_max) {
    if (!(t_max > bp_.t_c))
        throw std::domain_error("EdgeTrajectory: t_max must exceed the breakup time");
    if (points < 16) points = 16;
    const Real smax = std::sqrt(t_max - bp_.t_c);
    const Real h = smax / (points - 1);
    s_.resize(points);
    u_.resize(points);
    v_.resize(points);
    phi0_.resize(points);
    s_[0] = 0.0;
    u_[0] = bp_.u_c;
    v_[0] = bp_.u_c;
    phi0_[0] = 0.0;

    const Real f3c = model.f_minus_third(bp_.u_c);
    const GaussLegendre gl3(3, 0.0, 1.0);

    Real u_prev = bp_.u_c, v_prev = bp_.u_c;
    for (int i = 1; i < points; ++i) {
        s_[i] = i * h;
        const Real t = bp_.t_c + s_[i] * s_[i];
        Real useed, vseed;
        if (i == 1) {
            const Real p = std::sqrt(72.0 * (t - bp_.t_c) / (-f3c));
            useed = bp_.u_c + p;
            vseed = bp_.u_c - 0.25 * p;
        } else {
            // linear continuation in s
            useed = 2.0 * u_[i - 1] - u_[i - 2];
            vseed = 2.0 * v_[i - 1] - v_[i - 2];
            if (!(vseed < useed)) {
                useed = u_[i - 1];
                vseed = v_[i - 1];
            }
        }
        const EdgePoint p = edge_newton(model, t, useed, vseed);
        u_[i] = p.u;
        v_[i] = p.v;

        // phase increment over [s_{i-1}, s_i] with polished integrand values
        Real inc = 0.0;
        for (int g = 0; g < 3; ++g) {
            const Real sg = s_[i - 1] + gl3.nodes[g] * h;
            const Real tg = bp_.t_c + sg * sg;
            const Real w = gl3.weights[g] * h;
            const Real frac = gl3.nodes[g];
            Real ug = u_prev + frac * (p.u - u_prev);
            Real vg = v_prev + frac * (p.v - v_prev);
            if (sg > 0.0) {
                const EdgePoint pg = edge_newton(model, tg, ug, vg);
                ug = pg.u;
                vg = pg.v;
            }
            inc += w * (-16.0) * std::pow(std::max(ug - vg, 0.0), 1.5) * 2.0 * sg;
        }
        phi0_[i] = phi0_[i - 1] + inc;
        u_prev = p.u;
        v_prev = p.v;
    }

    // hump crossing: v(t) = -1 inside the built range
    if (v_.minCoeff() <= -1.0 && !model.hump_time()) {
        for (int i = 1; i < points; ++i) {
            if (v_[i] <= -1.0) {
                const Real w = (-1.0 - v_[i - 1]) / (v_[i] - v_[i - 1]);
                const Real sc = s_[i - 1] + w * (s_[i] - s_[i - 1]);
                model.set_hump_time(bp_.t_c + sc * sc);
                break;
            }
        }
    }
}

Real EdgeTrajectory::interp(const Array& f, Real s) const {
    const int n = static_cast<int>(s_.size());
    const Real h = s_[1] - s_[0];
    int k = static_cast<int>(std::floor(s / h));
    k = std::clamp(k, 1, n - 3);
    // 4-point Lagrange on nodes k-1 .. k+2
    Real acc = 0.0;
    for (int j = k - 1; j <= k + 2; ++j) {
        Real lj = 1.0;
        for (int m = k - 1; m <= k + 2; ++m)
            if (m != j) lj *= (s - s_[m]) / (s_[j] - s_[m]);
        acc += lj * f[j];
    }
    return acc;
}

EdgeState EdgeTrajectory::polish(Real t, Real u_seed, Real v_seed) const {
    const EdgePoint p = edge_newton(model_, t, u_seed, v_seed);
    return assemble_edge_state(model_, t, p, phi0(t));
}

EdgeState EdgeTrajectory::state(Real t) const {
    if (!(t > bp_.t_c))
        throw std::domain_error("EdgeTrajectory::state: t must exceed breakup time");
    if (t > t_max_ * (1.0 + 1e-12))
        throw std::domain_error("EdgeTrajectory::state: t beyond cached range");
    const Real s = std::sqrt(t - bp_.t_c);
    return polish(t, interp(u_, s), interp(v_, s));
}

Real EdgeTrajectory::phi0(Real t) const {
    if (t <= bp_.t_c) return 0.0;
    const Real s = std::min(std::sqrt(t - bp_.t_c), s_[s_.size() - 1]);
    const Real h = s_[1] - s_[0];
    int k = std::clamp(static_cast<int>(std::floor(s / h)), 0,
                       static_cast<int>(s_.size()) - 2);
    const Real base = phi0_[k];
    if (s <= s_[k]) return base;
    const auto integrand = [&](Real sg) {
        const Real du = std::max(interp(u_, sg) - interp(v_, sg), 0.0);
        return -16.0 * std::pow(du, 1.5) * 2.0 * sg;
    };
    return base + adaptive_simpson(integrand, s_[k], s, 1e-13);
}

EdgeState solve_leading_edge(const InitialDataModel& model, Real t) {
    const EdgeTrajectory traj(model, t, 400);
    return traj.state(t);
}

Real phase_phi0(const EdgeTrajectory& traj, Real t) { return traj.phi0(t); }

Real trailing_edge(const InitialDataModel& model, Real t) {
    const EdgeTrajectory traj(model, t + 1e-9, 400);
    WhithamZone zone(model, traj, t);
    return zone.x_plus();
}

namespace {

// The tensor rule resolves the leading-edge spike exactly; the foot kernel
// owns the hump neighborhood. Crossover below beta3 = u0(-0.2).
constexpr Real kFootEvaluatorMargin = -0.2;

QEval q_dispatch(const InitialDataModel& model, Real b1, Real b2, Real b3, Real x3,
                 int nodes) {
    if (x3 > kFootEvaluatorMargin) return q_with_partials_foot(model, b1, b2, x3, nodes);
    return q_with_partials(model, b1, b2, b3, nodes);
}

// Residuals plus the magnitude of the cancelling pair inside R3; the third
// equation is a quotient of near-opposite terms near the leading edge and its
// attainable accuracy scales with them.
Eigen::Vector3d hodograph_residual_assemble(const WhithamTriple& b, const QEval& qe,
                                            Real x, Real t, Real* r3_scale) {
    const EllipticParams p = elliptic_params(b);
    if (p.trailing_degenerate)
        throw std::runtime_error("hodograph_residual: trailing-degenerate triple");
    const Real sum = b.b1 + b.b2 + b.b3;
    Eigen::Vector3d R;
    // (v1 t + w1 - x)(alpha + b1), expanded so nothing divides by d1
    R[0] = 4.0 * (b.b1 - b.b2) * (b.b1 - b.b3) * t + 2.0 * sum * t * p.d1 +
           2.0 * (b.b1 - b.b2) * (b.b1 - b.b3) * qe.d1 + (qe.q - x) * p.d1;
    const Real v2m = 4.0 * (b.b2 - b.b1) * (b.b2 - b.b3) / p.d2;  // v2 - 2 sum
    R[1] = v2m * (t + 0.5 * qe.d2) + 2.0 * sum * t + qe.q - x;
    const Real t2 = 2.0 * (b.b2 - b.b1) / p.d2 * (2.0 * t + qe.d2);
    const Real t3 = 2.0 * (b.b3 - b.b1) / p.d3 * (2.0 * t + qe.d3);
    R[2] = t2 + t3;
    if (r3_scale) *r3_scale = std::abs(t2) + std::abs(t3);
    return R;
}

Eigen::Vector3d hodograph_residual_scaled(const InitialDataModel& model,
                                          const WhithamTriple& b, Real x, Real t,
                                          int nodes, Real* r3_scale) {
    const QEval qe = q_with_partials(model, b.b1, b.b2, b.b3, nodes);
    return hodograph_residual_assemble(b, qe, x, t, r3_scale);
}

struct FootState {
    Real b1, b2, x3;
};

Eigen::Vector3d hodograph_residual_foot(const InitialDataModel& model, const FootState& s,
                                        Real x, Real t, int nodes, Real* r3_scale) {
    const Real b3 = model.u0(s.x3);
    const WhithamTriple b{s.b1, s.b2, b3};
    const QEval qe = q_dispatch(model, s.b1, s.b2, b3, s.x3, nodes);
    return hodograph_residual_assemble(b, qe, x, t, r3_scale);
}

bool foot_state_admissible(const InitialDataModel& model, const FootState& s) {
    if (!(s.b1 < 0.0) || !(s.b1 > s.b2)) return false;
    return s.b2 > model.u0(s.x3);
}

struct FootSolveResult {
    FootState state;
    Real residual_norm;
    int newton_iters;
};

FootSolveResult solve_hodograph_foot(const InitialDataModel& model, Real x, Real t,
                                     const FootState& seed, int nodes) {
    FootState s = seed;
    const auto reval = [&](const FootState& ss, Eigen::Vector3d& R) {
        Real scale3 = 0.0;
        R = hodograph_residual_foot(model, ss, x, t, nodes, &scale3);
        Eigen::Vector3d w = R.cwiseAbs();
        w[2] /= std::max(Real(1), scale3);
        return w.maxCoeff();
    };
    Eigen::Vector3d R;
    Real rn = reval(s, R);
    if (!R.allFinite())
        throw std::runtime_error("solve_hodograph: seed residual not finite");
    int it = 0;
    while (rn >= 1e-11) {
        if (++it > 60) {
            if (rn < 1e-9) break;
            std::ostringstream os;
            os << "solve_hodograph: Newton stalled at x=" << x << ", |R|=" << rn;
            throw std::runtime_error(os.str());
        }
        const Real b3 = model.u0(s.x3);
        const Real hb = std::clamp(0.01 * (s.b2 - b3), 1e-11, 1e-7);
        const Real hx = 1e-7;
        Eigen::Matrix3d J;
        for (int k = 0; k < 3; ++k) {
            FootState ss = s;
            const Real h = (k == 2) ? hx : hb;
            (k == 0 ? ss.b1 : k == 1 ? ss.b2 : ss.x3) += h;
            J.col(k) = (hodograph_residual_foot(model, ss, x, t, nodes, nullptr) - R) / h;
        }
        const Eigen::Vector3d step = J.partialPivLu().solve(R);
        if (!step.allFinite())
            throw std::runtime_error("solve_hodograph: singular Jacobian");
        Real lam = 1.0;
        bool accepted = false;
        for (int k = 0; k < 25; ++k, lam *= 0.5) {
            const FootState sn{s.b1 - lam * step[0], s.b2 - lam * step[1],
                               s.x3 - lam * step[2]};
            if (!foot_state_admissible(model, sn)) continue;
            Eigen::Vector3d Rn;
            Real rnn;
            try {
                rnn = reval(sn, Rn);
            } catch (const std::exception&) {
                continue;
            }
            if (!Rn.allFinite()) continue;
            if (rnn < rn || rnn < 1e-11) {
                s = sn;
                R = Rn;
                rn = rnn;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (rn < 1e-9) break;
            std::ostringstream os;
            os << "solve_hodograph: line search failed at x=" << x << ", |R|=" << rn;
            throw std::runtime_error(os.str());
        }
    }
    return {s, rn, it};
}

}  // namespace

Eigen::Vector3d hodograph_residual(const InitialDataModel& model, const WhithamTriple& b,
                                   Real x, Real t, int nodes) {
    return hodograph_residual_scaled(model, b, x, t, nodes, nullptr);
}

QEval q_with_partials_auto(const InitialDataModel& model, Real b1, Real b2, Real x3,
                           int nodes) {
    return q_dispatch(model, b1, b2, model.u0(x3), x3, nodes);
}

Eigen::Vector3d hodograph_residual_original(const InitialDataModel& model,
                                            const WhithamTriple& b, Real x, Real t,
                                            int nodes, std::optional<Real> x3) {
    const QEval qe = x3 ? q_dispatch(model, b.b1, b.b2, b.b3, *x3, nodes)
                        : q_with_partials(model, b.b1, b.b2, b.b3, nodes);
    const Eigen::Vector3d v = whitham_speeds(b);
    const Real sum2 = 2.0 * (b.b1 + b.b2 + b.b3);
    const Real dq[3] = {qe.d1, qe.d2, qe.d3};
    Eigen::Vector3d R;
    for (int i = 0; i < 3; ++i) {
        const Real w = 0.5 * (v[i] - sum2) * dq[i] + qe.q;
        R[i] = v[i] * t + w - x;
    }
    return R;
}

HodographSolveResult solve_whitham(const InitialDataModel& model, Real x, Real t,
                                   const WhithamTriple& seed, int nodes) {
    // triple seeds address the pre-hump branch; the solver itself runs in the
    // foot parameterization so beta3 stays above -1 by construction
    const Real b3c = std::max(seed.b3, -1.0 + 1e-14);
    const FootState s0{seed.b1, seed.b2, model.f_minus(b3c)};
    const FootSolveResult r = solve_hodograph_foot(model, x, t, s0, nodes);
    return {{r.state.b1, r.state.b2, model.u0(r.state.x3)}, r.state.x3, r.residual_norm,
            r.newton_iters};
}

WhithamZone::WhithamZone(const InitialDataModel& model, const EdgeTrajectory& traj, Real t,
                         int quad_nodes)
    : model_(model), t_(t), edge_(traj.state(t)), nodes_(quad_nodes) {
    // Hopf fold on the far side of the zone sets the continuation scale:
    // largest u with f'_-(u) = -6t.
    Real lo = edge_.u, hi = -1e-9;
    const auto g = [&](Real u) { return model_.f_minus_prime(u) + 6.0 * t_; };
    Real glo = g(lo);
    Real x_fold = edge_.x_minus + 0.5;
    if (glo > 0.0 && g(hi) < 0.0) {
        for (int i = 0; i < 200; ++i) {
            const Real mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
            if (hi - lo < 1e-13) break;
        }
        const Real ub = 0.5 * (lo + hi);
        x_fold = 6.0 * t_ * ub + model_.f_minus(ub);
    }
    step0_ = std::max(1e-4, (x_fold - edge_.x_minus)) / 1000.0;
}

WhithamZone::State WhithamZone::near_edge_seed(Real x) const {
    const Real dx = x - edge_.x_minus;
    const Real fp = model_.f_minus_prime(edge_.u);
    const Real delta_cap = 0.45 * (edge_.u - edge_.v);
    const Real dlt = std::min(std::sqrt(std::max(dx, 0.0) / edge_.c), delta_cap);
    const Real Delta = dx / (6.0 * t_ + fp);
    return {edge_.u + Delta, edge_.v + dlt, model_.f_minus(edge_.v - dlt)};
}

bool WhithamZone::try_solve(Real x, const State& seed, HodographSolveResult& out) const {
    FootSolveResult r;
    try {
        r = solve_hodograph_foot(model_, x, t_, {seed.b1, seed.b2, seed.x3}, nodes_);
    } catch (const std::exception&) {
        return false;
    }
    const Real b3 = model_.u0(r.state.x3);
    out = {{r.state.b1, r.state.b2, b3}, r.state.x3, r.residual_norm, r.newton_iters};
    return out.triple.ordered() && out.triple.b1 < 0.0;
}

HodographSolveResult WhithamZone::march_to(Real x) {
    const Real x_eps = 1e-10;
    if (x <= edge_.x_minus + x_eps)
        return {{edge_.u, edge_.v, edge_.v}, model_.f_minus(edge_.v), 0.0, 0};

    // bootstrap a first interior point close to the edge
    if (cache_.empty()) {
        const Real xb = edge_.x_minus + std::min(1e-6, 0.5 * (x - edge_.x_minus));
        HodographSolveResult r;
        if (!try_solve(xb, near_edge_seed(xb), r))
            throw std::runtime_error("WhithamZone: failed to start continuation at the edge");
        cache_[xb] = {r.triple.b1, r.triple.b2, r.x3};
    }

    // nearest cached point
    auto it = cache_.lower_bound(x);
    if (it == cache_.end()) --it;
    if (it != cache_.begin()) {
        auto prev = std::prev(it);
        if (std::abs(prev->first - x) < std::abs(it->first - x)) it = prev;
    }
    Real x_cur = it->first;
    State s_cur = it->second;
    if (std::abs(x_cur - x) < 1e-14)
        return {{s_cur.b1, s_cur.b2, model_.u0(s_cur.x3)}, s_cur.x3, 0.0, 0};

    const Real dir = (x > x_cur) ? 1.0 : -1.0;
    Real h = step0_;
    Real x_prev = x_cur;
    State s_prev = s_cur;
    int successes = 0;
    long guard = 0;
    HodographSolveResult r;
    while (dir * (x - x_cur) > 1e-14) {
        if (++guard > 200000)
            throw std::runtime_error("WhithamZone: continuation exceeded step budget");
        const Real x_next = (dir * (x - x_cur) <= h) ? x : x_cur + dir * h;
        // secant predictor
        State seed = s_cur;
        if (x_cur != x_prev) {
            const Real w = (x_next - x_cur) / (x_cur - x_prev);
            seed = {s_cur.b1 + w * (s_cur.b1 - s_prev.b1),
                    s_cur.b2 + w * (s_cur.b2 - s_prev.b2),
                    s_cur.x3 + w * (s_cur.x3 - s_prev.x3)};
            if (!foot_state_admissible(model_, {seed.b1, seed.b2, seed.x3})) seed = s_cur;
        }
        if (try_solve(x_next, seed, r)) {
            x_prev = x_cur;
            s_prev = s_cur;
            x_cur = x_next;
            s_cur = {r.triple.b1, r.triple.b2, r.x3};
            cache_[x_cur] = s_cur;
            if (++successes >= 2) {
                h = std::min(h * 1.5, step0_ * 20.0);
                successes = 0;
            }
            if (x_cur == x) return r;
        } else {
            h *= 0.5;
            successes = 0;
            if (h < 1e-12)
                throw std::runtime_error("WhithamZone: continuation step underflow");
        }
    }
    // x reached through the cache without a fresh solve
    if (!try_solve(x, s_cur, r))
        throw std::runtime_error("WhithamZone: final solve failed");
    cache_[x] = {r.triple.b1, r.triple.b2, r.x3};
    return r;
}

HodographSolveResult WhithamZone::solve_at(Real x) { return march_to(x); }

std::vector<HodographSolveResult> WhithamZone::sweep(const std::vector<Real>& xs) {
    std::vector<HodographSolveResult> out;
    out.reserve(xs.size());
    for (Real x : xs) out.push_back(march_to(x));
    return out;
}

Real WhithamZone::x_plus() {
    if (x_plus_) return *x_plus_;
    // march rightward until the solve degenerates, then shrink the bracket
    Real x_good = edge_.x_minus + 1e-6;
    {
        HodographSolveResult r = march_to(x_good);
        (void)r;
    }
    if (!cache_.empty()) x_good = cache_.rbegin()->first;
    Real h = step0_ * 4.0;
    long guard = 0;
    while (h > 5e-7) {
        if (++guard > 200000)
            throw std::runtime_error("WhithamZone::x_plus: bracketing exceeded budget");
        const Real x_try = x_good + h;
        const State seed = cache_.rbegin()->second;
        HodographSolveResult r;
        if (try_solve(x_try, seed, r) && r.triple.b1 - r.triple.b2 > 1e-10) {
            x_good = x_try;
            cache_[x_try] = {r.triple.b1, r.triple.b2, r.x3};
        } else {
            h *= 0.5;
        }
    }
    x_plus_ = x_good + 0.5 * h;
    return *x_plus_;
}

}  // namespace dsw
