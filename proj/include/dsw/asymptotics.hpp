#ifndef DSW_ASYMPTOTICS_HPP
#define DSW_ASYMPTOTICS_HPP

#include "dsw/compare.hpp"
#include "dsw/initial_data.hpp"
#include "dsw/painleve2.hpp"
#include "dsw/whitham.hpp"

namespace dsw {

/// Which side of the oscillatory zone an outer Hopf evaluation belongs to;
/// past the hump the right side rides the deep (rightmost-foot) branch.
enum class HopfSide { left, right };

/// Single-valued Hopf evaluation outside the oscillatory zone.
Real hopf_outer(const InitialDataModel& model, Real x, Real t,
                HopfSide side = HopfSide::left);

/// Ingredients of the theta-function solution at one point.
struct EllipticSolutionParams {
    WhithamTriple triple;
    Real q;      // phase constant from the EPD function
    Real omega;  // theta argument Omega(x, t)
    Real nome;
};

EllipticSolutionParams elliptic_solution_params(const InitialDataModel& model,
                                                const WhithamTriple& b, Real x, Real t,
                                                Real epsilon, int nodes = 64);

/// Modulated elliptic (theta) solution from an explicit invariant triple. The
/// invariants are frozen inside the x-differentiation; their slow x-dependence
/// is a higher-order effect.
Real elliptic_solution_from_triple(const InitialDataModel& model, const WhithamTriple& b,
                                   Real x, Real t, Real epsilon, int nodes = 64);

/// Theta-function solution with the triple solved by hodograph continuation.
Real elliptic_solution(WhithamZone& zone, Real x, Real epsilon);

/// Degenerate small-amplitude form of the elliptic solution near the leading
/// edge. The oscillating term carries the sign of the theta expansion (a pi
/// phase relative to writing the amplitude as +2 delta).
Real small_amplitude_solution(const InitialDataModel& model, const EdgeState& edge, Real x,
                              Real epsilon);

enum class MultiscaleOrder { one_third, two_thirds };

/// Stretched-coordinate data entering the multiscale solution at (x, t).
struct MultiscaleParams {
    Real y;    // eps^{-2/3} (x - x^-)
    Real z;    // Painleve argument
    Real a;    // signed envelope amplitude
    Real psi;  // phase
};

MultiscaleParams multiscale_params(const EdgeState& edge, const HastingsMcLeodSolution& hm,
                                   Real x, Real epsilon);

/// Painleve-II multiscale solution near the leading edge.
Real multiscale_solution(const InitialDataModel& model, const EdgeState& edge,
                         const HastingsMcLeodSolution& hm, Real x, Real epsilon,
                         MultiscaleOrder order = MultiscaleOrder::one_third);

/// Hopf outside the Whitham interval, elliptic inside.
Real asymptotic_solution(WhithamZone& zone, Real x, Real epsilon);

/// Patched description: Hopf, then multiscale across the better zone, then
/// elliptic to the trailing edge, then Hopf again.
Real composite_solution(WhithamZone& zone, const EdgeState& edge,
                        const HastingsMcLeodSolution& hm, Real x, Real epsilon,
                        const ZoneBounds& bounds,
                        MultiscaleOrder order = MultiscaleOrder::one_third);

}  // namespace dsw

#endif
