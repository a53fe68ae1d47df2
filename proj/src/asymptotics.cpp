#include "dsw/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "dsw/specfun.hpp"

namespace dsw {

Real hopf_outer(const InitialDataModel& model, Real x, Real t, HopfSide side) {
    const HopfSolution h = hopf_solve(model, x, t);
    if (!h.multivalued()) return h.values.front();
    // Characteristics can still fold right of the zone once the trailing edge
    // has crossed the hump; the smooth outer state continues the branch with
    // the outermost foot on that side.
    return (side == HopfSide::left) ? h.values.front() : h.values.back();
}

namespace {

Real elliptic_value(const WhithamTriple& b, Real q_phase, Real x, Real t, Real epsilon) {
    const EllipticParams p = elliptic_params(b);
    if (p.trailing_degenerate)
        throw std::domain_error("elliptic_solution: trailing-degenerate triple");
    const Real sum = b.b1 + b.b2 + b.b3;
    if (p.leading_degenerate) return sum + 2.0 * p.alpha;  // amplitude collapsed
    const Real kappa = std::sqrt(b.b1 - b.b3) / (2.0 * epsilon * p.K);
    const Real omega = kappa * (x - 2.0 * t * sum - q_phase);
    return sum + 2.0 * p.alpha +
           2.0 * epsilon * epsilon * kappa * kappa * theta3_dlog2(omega, p.nome);
}

}  // namespace

EllipticSolutionParams elliptic_solution_params(const InitialDataModel& model,
                                                const WhithamTriple& b, Real x, Real t,
                                                Real epsilon, int nodes) {
    const EllipticParams p = elliptic_params(b);
    const QEval qe = q_with_partials(model, b.b1, b.b2, b.b3, nodes);
    const Real sum = b.b1 + b.b2 + b.b3;
    const Real kappa =
        p.leading_degenerate ? 0.0 : std::sqrt(b.b1 - b.b3) / (2.0 * epsilon * p.K);
    return {b, qe.q, kappa * (x - 2.0 * t * sum - qe.q), p.nome};
}

Real elliptic_solution_from_triple(const InitialDataModel& model, const WhithamTriple& b,
                                   Real x, Real t, Real epsilon, int nodes) {
    const QEval qe = q_with_partials(model, b.b1, b.b2, b.b3, nodes);
    return elliptic_value(b, qe.q, x, t, epsilon);
}

Real elliptic_solution(WhithamZone& zone, Real x, Real epsilon) {
    const HodographSolveResult r = zone.solve_at(x);
    // the phase constant q continues across the hump via the foot dispatch
    const QEval qe = q_with_partials_auto(zone.model(), r.triple.b1, r.triple.b2, r.x3);
    return elliptic_value(r.triple, qe.q, x, zone.t(), epsilon);
}

Real small_amplitude_solution(const InitialDataModel& model, const EdgeState& edge, Real x,
                              Real epsilon) {
    const Real dx = x - edge.x_minus;
    if (dx < 0.0)
        throw std::domain_error("small_amplitude_solution: x left of the leading edge");
    const Real uv = edge.u - edge.v;
    const Real delta = std::sqrt(dx / edge.c);
    const Real fp = model.f_minus_prime(edge.u);
    const Real phase = (edge.phi0 + 2.0 * std::sqrt(uv) * dx) / epsilon;
    return edge.u + dx / (6.0 * edge.t + fp) - 2.0 * delta * std::cos(phase) +
           delta * delta * (std::cos(2.0 * phase) - 1.0) / (2.0 * uv);
}

MultiscaleParams multiscale_params(const EdgeState& edge, const HastingsMcLeodSolution& hm,
                                   Real x, Real epsilon) {
    MultiscaleParams p;
    const Real uv = edge.u - edge.v;
    const Real e23 = std::cbrt(epsilon) * std::cbrt(epsilon);
    p.y = (x - edge.x_minus) / e23;
    p.z = std::cbrt(edge.v_t / (6.0 * uv)) * p.y;
    p.a = 4.0 * std::cbrt(edge.v_t / 6.0) * std::pow(uv, 1.0 / 6.0) * hm(p.z);
    p.psi = edge.phi0 + 2.0 * e23 * p.y * std::sqrt(uv);
    return p;
}

Real multiscale_solution(const InitialDataModel& model, const EdgeState& edge,
                         const HastingsMcLeodSolution& hm, Real x, Real epsilon,
                         MultiscaleOrder order) {
    const MultiscaleParams p = multiscale_params(edge, hm, x, epsilon);
    const Real e13 = std::cbrt(epsilon);
    Real val = edge.u + e13 * p.a * std::cos(p.psi / epsilon);
    if (order == MultiscaleOrder::two_thirds) {
        const Real uv = edge.u - edge.v;
        const Real fp = model.f_minus_prime(edge.u);
        val += e13 * e13 *
               (p.a * p.a * (std::cos(2.0 * p.psi / epsilon) - 1.0) / (8.0 * uv) +
                p.y / (6.0 * edge.t + fp));
    }
    return val;
}

Real asymptotic_solution(WhithamZone& zone, Real x, Real epsilon) {
    const Real xl = zone.x_minus();
    if (x <= xl) return hopf_outer(zone.model(), x, zone.t(), HopfSide::left);
    const Real xr = zone.x_plus();
    if (x >= xr) return hopf_outer(zone.model(), x, zone.t(), HopfSide::right);
    // keep a hair away from the trailing degeneracy
    const Real xe = std::min(x, xr - 1e-6);
    return elliptic_solution(zone, xe, epsilon);
}

Real composite_solution(WhithamZone& zone, const EdgeState& edge,
                        const HastingsMcLeodSolution& hm, Real x, Real epsilon,
                        const ZoneBounds& bounds, MultiscaleOrder order) {
    if (x < bounds.left) return hopf_outer(zone.model(), x, zone.t(), HopfSide::left);
    if (x <= bounds.right)
        return multiscale_solution(zone.model(), edge, hm, x, epsilon, order);
    return asymptotic_solution(zone, x, epsilon);
}

}  // namespace dsw
