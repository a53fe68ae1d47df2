#include "dsw/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsw/asymptotics.hpp"

namespace dsw {

ScalingFit loglog_fit(const std::vector<Real>& epsilons, const std::vector<Real>& deltas) {
    const size_t n = epsilons.size();
    if (n != deltas.size() || n < 3)
        throw std::invalid_argument("loglog_fit: need >= 3 matching samples");
    std::vector<Real> X(n), Y(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(epsilons[i] > 0.0) || !(deltas[i] > 0.0))
            throw std::domain_error("loglog_fit: samples must be positive");
        X[i] = -std::log10(epsilons[i]);
        Y[i] = -std::log10(deltas[i]);
    }
    Real xm = 0.0, ym = 0.0;
    for (size_t i = 0; i < n; ++i) {
        xm += X[i];
        ym += Y[i];
    }
    xm /= n;
    ym /= n;
    Real sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (X[i] - xm) * (X[i] - xm);
        sxy += (X[i] - xm) * (Y[i] - ym);
        syy += (Y[i] - ym) * (Y[i] - ym);
    }
    if (sxx < 1e-30) throw std::domain_error("loglog_fit: degenerate abscissae");
    ScalingFit fit;
    fit.a = sxy / sxx;
    fit.b = ym - fit.a * xm;
    fit.r = (syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 1.0;
    Real ssr = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Real res = Y[i] - fit.a * X[i] - fit.b;
        ssr += res * res;
    }
    fit.sigma_a = (n > 2) ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    return fit;
}

SampledCurve pointwise_error(const GridFunction& u_num, const Evaluator& eval, Real x_lo,
                             Real x_hi) {
    if (!(x_lo < x_hi)) throw std::invalid_argument("pointwise_error: empty window");
    const Grid1D& g = u_num.grid;
    if (x_lo < -g.L || x_hi >= g.L)
        throw std::domain_error("pointwise_error: window outside the grid");
    const int i_lo = static_cast<int>(std::ceil((x_lo + g.L) / g.dx()));
    const int i_hi = static_cast<int>(std::floor((x_hi + g.L) / g.dx()));
    const int m = std::max(0, i_hi - i_lo + 1);
    SampledCurve curve;
    curve.x.resize(m);
    curve.values.resize(m);
    for (int i = 0; i < m; ++i) {
        const Real x = g.x(i_lo + i);
        curve.x[i] = x;
        curve.values[i] = u_num.values[i_lo + i] - eval(x);
    }
    return curve;
}

Real edge_window_halfwidth(const EdgeState& edge, Real epsilon,
                           const EdgeWindowPolicy& policy) {
    const Real zw = std::min(policy.z_halfwidth, policy.z_cap);
    const Real scale = std::cbrt(6.0 * (edge.u - edge.v) / std::abs(edge.v_t));
    return zw * std::cbrt(epsilon) * std::cbrt(epsilon) * scale;
}

Real max_error_near_edge(const GridFunction& u_num, const Evaluator& eval,
                         const EdgeState& edge, const EdgeWindowPolicy& policy) {
    const Real w = edge_window_halfwidth(edge, u_num.epsilon, policy);
    const SampledCurve c = pointwise_error(u_num, eval, edge.x_minus - w, edge.x_minus + w);
    if (c.values.size() == 0)
        throw std::runtime_error("max_error_near_edge: window holds no grid points");
    return c.values.abs().maxCoeff();
}

namespace {

// moving-window maximum of |values| with half-window hw points
Array envelope(const Array& values, int hw) {
    const int n = static_cast<int>(values.size());
    Array env(n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - hw);
        const int hi = std::min(n - 1, i + hw);
        Real m = 0.0;
        for (int j = lo; j <= hi; ++j) m = std::max(m, std::abs(values[j]));
        env[i] = m;
    }
    return env;
}

}  // namespace

ZoneBounds better_zone(const GridFunction& u_num, const Evaluator& multiscale_eval,
                       const Evaluator& asymptotic_eval, const EdgeState& edge,
                       Real epsilon) {
    const Real e23 = std::cbrt(epsilon) * std::cbrt(epsilon);
    const Real span = 10.0 * e23;
    const SampledCurve ms = pointwise_error(u_num, multiscale_eval, edge.x_minus - span,
                                            edge.x_minus + span);
    const SampledCurve as = pointwise_error(u_num, asymptotic_eval, edge.x_minus - span,
                                            edge.x_minus + span);
    const int n = static_cast<int>(ms.x.size());
    if (n < 8) throw std::runtime_error("better_zone: scan window under-resolved");

    // envelope window: one local oscillation wavelength
    const Real lambda = pi * epsilon / std::sqrt(edge.u - edge.v);
    const int hw = std::max(1, static_cast<int>(std::lround(0.5 * lambda / u_num.grid.dx())));
    const Array env_ms = envelope(ms.values, hw);
    const Array env_as = envelope(as.values, hw);
    Array d(n);
    for (int i = 0; i < n; ++i) d[i] = env_ms[i] - env_as[i];

    int i_edge = 0;
    for (int i = 0; i < n; ++i)
        if (std::abs(ms.x[i] - edge.x_minus) < std::abs(ms.x[i_edge] - edge.x_minus))
            i_edge = i;

    ZoneBounds zb;
    zb.t = edge.t;
    zb.epsilon = epsilon;

    // A boundary is a crossing beyond which the other description keeps the
    // smaller envelope in a sustained sense; brief re-phasing pockets of the
    // dephased multiscale error deep in the zone do not count.
    const Real dominance = 0.85;

    // right boundary
    {
        int cross = -1;
        for (int i = i_edge; i + 1 < n; ++i) {
            if (!(d[i] <= 0.0 && d[i + 1] > 0.0)) continue;
            int worse = 0;
            for (int j = i + 1; j < n; ++j) worse += d[j] > 0.0;
            if (worse >= dominance * (n - 1 - i)) {
                cross = i;
                break;
            }
        }
        if (cross >= 0) {
            zb.right = ms.x[cross];
        } else if (d[n - 1] <= 0.0) {
            zb.right = ms.x[n - 1];
            zb.right_open = true;
        } else {
            // never better on the right: closest approach
            int best = i_edge;
            for (int i = i_edge; i < n; ++i)
                if (d[i] < d[best]) best = i;
            zb.right = ms.x[best];
            zb.right_open = true;
        }
    }
    // left boundary
    {
        int cross = -1;
        for (int i = i_edge; i - 1 >= 0; --i) {
            if (!(d[i] <= 0.0 && d[i - 1] > 0.0)) continue;
            int worse = 0;
            for (int j = i - 1; j >= 0; --j) worse += d[j] > 0.0;
            if (worse >= dominance * i) {
                cross = i;
                break;
            }
        }
        if (cross >= 0) {
            zb.left = ms.x[cross];
        } else if (d[0] <= 0.0) {
            zb.left = ms.x[0];
            zb.left_open = true;
        } else {
            int best = i_edge;
            for (int i = i_edge; i >= 0; --i)
                if (d[i] < d[best]) best = i;
            zb.left = ms.x[best];
            zb.left_open = true;
        }
    }
    return zb;
}

EdgeComparison compare_at_epsilon(const GridFunction& u_num, WhithamZone& zone,
                                  const EdgeState& edge,
                                  const HastingsMcLeodSolution& hm) {
    EdgeComparison out;
    out.epsilon = u_num.epsilon;
    out.t = zone.t();
    const Real eps = u_num.epsilon;
    const InitialDataModel& model = zone.model();

    const Evaluator ms_eval = [&](Real x) {
        return multiscale_solution(model, edge, hm, x, eps);
    };
    const Evaluator asym_eval = [&](Real x) { return asymptotic_solution(zone, x, eps); };

    const Real xm = zone.x_minus();
    const Real xp = zone.x_plus();
    {
        const Real third = (xp - xm) / 3.0;
        const SampledCurve c = pointwise_error(u_num, asym_eval, xm + third, xm + 2 * third);
        out.interior_elliptic_max = c.values.abs().maxCoeff();
    }
    out.edge_elliptic_max = max_error_near_edge(u_num, asym_eval, edge);
    out.edge_multiscale_max = max_error_near_edge(u_num, ms_eval, edge);
    EdgeWindowPolicy wide;
    wide.z_halfwidth = 4.0;
    out.edge_multiscale_max_wide = max_error_near_edge(u_num, ms_eval, edge, wide);
    out.zone = better_zone(u_num, ms_eval, asym_eval, edge, eps);
    const Evaluator comp_eval = [&](Real x) {
        return composite_solution(zone, edge, hm, x, eps, out.zone);
    };
    out.composite_max = max_error_near_edge(u_num, comp_eval, edge);
    return out;
}

}  // namespace dsw
