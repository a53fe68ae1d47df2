#ifndef DSW_COMPARE_HPP
#define DSW_COMPARE_HPP

#include <functional>
#include <vector>

#include "dsw/kdv.hpp"
#include "dsw/whitham.hpp"

namespace dsw {

using Evaluator = std::function<Real(Real)>;

/// Least-squares power-law fit -log10(delta) = a (-log10 eps) + b.
struct ScalingFit {
    Real a;        // slope
    Real b;        // intercept
    Real r;        // correlation coefficient
    Real sigma_a;  // standard error of the slope
};

ScalingFit loglog_fit(const std::vector<Real>& epsilons, const std::vector<Real>& deltas);

/// Interval around the leading edge where the multiscale solution beats the
/// elliptic/Hopf description.
struct ZoneBounds {
    Real left = 0.0;
    Real right = 0.0;
    Real t = 0.0;
    Real epsilon = 0.0;
    bool left_open = false;   // no envelope crossing found on that side
    bool right_open = false;
    Real width() const { return right - left; }
    static const char* rule_version() { return "moving-max-envelope-suffix-dominance-v2"; }
};

struct SampledCurve {
    Array x;
    Array values;
};

/// u_num - evaluator on the grid points inside [x_lo, x_hi].
SampledCurve pointwise_error(const GridFunction& u_num, const Evaluator& eval, Real x_lo,
                             Real x_hi);

struct EdgeWindowPolicy {
    Real z_halfwidth = 2.0;  // window in units of the Painleve variable z
    Real z_cap = 4.0;
};

/// Half-width |x - x^-| of the near-edge comparison window.
Real edge_window_halfwidth(const EdgeState& edge, Real epsilon,
                           const EdgeWindowPolicy& policy = {});

/// max |u_num - eval| over the near-edge window.
Real max_error_near_edge(const GridFunction& u_num, const Evaluator& eval,
                         const EdgeState& edge, const EdgeWindowPolicy& policy = {});

/// Scan the two error envelopes outward from the leading edge; each boundary
/// is the last crossing (or closest approach) beyond which the other
/// description has the smaller error envelope.
ZoneBounds better_zone(const GridFunction& u_num, const Evaluator& multiscale_eval,
                       const Evaluator& asymptotic_eval, const EdgeState& edge,
                       Real epsilon);

class HastingsMcLeodSolution;

/// Every error measurement of the comparison methodology for one epsilon at
/// fixed t: interior and edge errors of the elliptic/Hopf description, the
/// multiscale error, the better zone and the patched composite error.
struct EdgeComparison {
    Real epsilon = 0.0;
    Real t = 0.0;
    Real interior_elliptic_max = 0.0;   // middle third of the whitham zone
    Real edge_elliptic_max = 0.0;       // near-edge window
    Real edge_multiscale_max = 0.0;     // same window
    Real edge_multiscale_max_wide = 0.0;  // doubled window (sensitivity)
    Real composite_max = 0.0;           // patched solution, same window
    ZoneBounds zone;
};

EdgeComparison compare_at_epsilon(const GridFunction& u_num, WhithamZone& zone,
                                  const EdgeState& edge,
                                  const HastingsMcLeodSolution& hm);

}  // namespace dsw

#endif
