#ifndef DSW_WHITHAM_HPP
#define DSW_WHITHAM_HPP

#include <map>
#include <optional>
#include <vector>

#include "dsw/initial_data.hpp"
#include "dsw/specfun.hpp"
#include "dsw/types.hpp"

namespace dsw {

/// Ordered Riemann invariants of the one-phase Whitham system.
struct WhithamTriple {
    Real b1;
    Real b2;
    Real b3;

    Real s2() const { return (b2 - b3) / (b1 - b3); }
    bool ordered() const { return b1 > b2 && b2 > b3 && b3 >= -1.0; }
};

/// Elliptic quantities attached to a triple. The degenerate flags mark the
/// collapsed limits where K or the alpha denominators lose meaning. The
/// combinations d_i = beta_i + alpha are exported because forming them by
/// addition cancels catastrophically near the leading edge; a series branch
/// keeps them accurate at small modulus.
struct EllipticParams {
    Real s2 = 0.0;
    Real s = 0.0;
    Real K = 0.0;
    Real E = 0.0;
    Real alpha = 0.0;
    Real nome = 0.0;
    Real d1 = 0.0;  // b1 + alpha
    Real d2 = 0.0;  // b2 + alpha
    Real d3 = 0.0;  // b3 + alpha
    bool leading_degenerate = false;   // b2 -> b3
    bool trailing_degenerate = false;  // b2 -> b1
};

EllipticParams elliptic_params(const WhithamTriple& b);

/// Characteristic speeds of the Whitham system; analytic limit branches when
/// |beta_i + alpha| falls below 1e-12.
Eigen::Vector3d whitham_speeds(const WhithamTriple& b);

/// Euler-Poisson-Darboux function q and its first partials, evaluated by a
/// tensor rule that treats the 1/sqrt(1-mu), 1/sqrt(1-nu^2) weights exactly.
struct QEval {
    Real q;
    Real d1;
    Real d2;
    Real d3;
};

QEval q_with_partials(const InitialDataModel& model, Real b1, Real b2, Real b3,
                      int nodes = 64);

/// q alone, with automatic node doubling (64 -> 512) until two successive
/// levels agree; throws on non-convergence at the cap.
Real q_epd(const InitialDataModel& model, Real b1, Real b2, Real b3);

/// Hump-capable evaluator parameterized by the characteristic foot x3 of the
/// third invariant (u0(x3) = beta3, x3 < 0 before the hump, > 0 past it).
/// Both q-integral regimes collapse to one smooth kernel in this variable.
QEval q_with_partials_foot(const InitialDataModel& model, Real b1, Real b2, Real x3,
                           int nodes = 64);

/// Post-hump q in its direct two-branch form (f_+ plus f_- contributions).
Real q_epd_posthump(const InitialDataModel& model, Real b1, Real b2, Real b3,
                    int nodes = 128);

/// Dispatch between the tensor rule (foot well left of the hump) and the
/// foot-parameterized kernel (near or past it).
QEval q_with_partials_auto(const InitialDataModel& model, Real b1, Real b2, Real x3,
                           int nodes = 64);

/// Phi(v, u) = (1 / (2 sqrt(v-u))) int_u^v f'_-(m) / sqrt(v - m) dm, the kernel
/// of the leading-edge system, plus derivatives.
Real phi(const InitialDataModel& model, Real v, Real u, int nodes = 64);

struct PhiDerivs {
    Real value;
    Real dv;
    Real dvv;
};

PhiDerivs phi_derivs(const InitialDataModel& model, Real v, Real u, int nodes = 64);

Real phi_du(const InitialDataModel& model, Real v, Real u, int nodes = 64);

/// Leading-edge data at time t: position, Hopf value u, collapsed invariant v,
/// their time derivatives, the curvature constant c and the accumulated phase.
struct EdgeState {
    Real t;
    Real x_minus;
    Real u;
    Real v;
    Real u_t;
    Real v_t;
    Real c;
    Real phi0;
};

/// Edge trajectory cache on a grid uniform in sqrt(t - t_c); queries polish the
/// interpolated seed with Newton so edge residuals stay below 1e-10.
class EdgeTrajectory {
public:
    EdgeTrajectory(const InitialDataModel& model, Real t_max, int points = 1000);

    EdgeState state(Real t) const;
    Real phi0(Real t) const;
    Real t_c() const { return bp_.t_c; }
    Real t_max() const { return t_max_; }
    const BreakupPoint& breakup_point() const { return bp_; }
    const InitialDataModel& model() const { return model_; }

private:
    const InitialDataModel& model_;
    BreakupPoint bp_;
    Real t_max_;
    Array s_, u_, v_, phi0_;

    friend EdgeState solve_leading_edge(const InitialDataModel&, Real);
    EdgeState polish(Real t, Real u_seed, Real v_seed) const;
    Real interp(const Array& f, Real s) const;
};

/// One-off leading-edge solve (builds a local trajectory for continuation).
EdgeState solve_leading_edge(const InitialDataModel& model, Real t);

/// Trailing-edge position x+(t), bracketed to 1e-6 by continuation.
Real trailing_edge(const InitialDataModel& model, Real t);

/// phi0(t) = -16 int_{t_c}^t (u - v)^{3/2} dtau over the cached trajectory.
Real phase_phi0(const EdgeTrajectory& traj, Real t);

struct HodographSolveResult {
    WhithamTriple triple;
    Real x3;  // characteristic foot of beta3 (branch marker through the hump)
    Real residual_norm;
    int newton_iters;
};

/// Residuals of the nondegenerate hodograph form used by Newton.
Eigen::Vector3d hodograph_residual(const InitialDataModel& model, const WhithamTriple& b,
                                   Real x, Real t, int nodes = 64);

/// Residuals of the original implicit form x = v_i t + w_i (diagnostic). The
/// foot position selects the q branch; omitted means pre-hump.
Eigen::Vector3d hodograph_residual_original(const InitialDataModel& model,
                                            const WhithamTriple& b, Real x, Real t,
                                            int nodes = 64,
                                            std::optional<Real> x3 = std::nullopt);

/// Newton solve of the hodograph system at one point from an explicit seed.
HodographSolveResult solve_whitham(const InitialDataModel& model, Real x, Real t,
                                   const WhithamTriple& seed, int nodes = 64);

/// Whitham zone at fixed time t: continuation in x from the leading edge,
/// trailing-edge bracketing, and cached solves for fast sweeps.
class WhithamZone {
public:
    WhithamZone(const InitialDataModel& model, const EdgeTrajectory& traj, Real t,
                int quad_nodes = 64);

    const EdgeState& edge() const { return edge_; }
    Real t() const { return t_; }
    Real x_minus() const { return edge_.x_minus; }

    /// Trailing-edge position, bracketed to 1e-6 on first use.
    Real x_plus();

    /// Solve at interior x by continuation from the nearest cached point.
    HodographSolveResult solve_at(Real x);

    /// Triples at ascending positions (single march across the zone).
    std::vector<HodographSolveResult> sweep(const std::vector<Real>& xs);

    const InitialDataModel& model() const { return model_; }

private:
    struct State {
        Real b1, b2, x3;
    };

    const InitialDataModel& model_;
    Real t_;
    EdgeState edge_;
    int nodes_;
    Real step0_;
    std::optional<Real> x_plus_;
    std::map<Real, State> cache_;

    State near_edge_seed(Real x) const;
    bool try_solve(Real x, const State& seed, HodographSolveResult& out) const;
    HodographSolveResult march_to(Real x);
};

}  // namespace dsw

#endif
