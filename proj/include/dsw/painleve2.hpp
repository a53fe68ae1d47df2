#ifndef DSW_PAINLEVE2_HPP
#define DSW_PAINLEVE2_HPP

#include <string>

#include "dsw/chebyshev.hpp"
#include "dsw/types.hpp"

namespace dsw {

/// Truncated left-tail value sqrt(-z/2) - (-z)^{-5/2}/(8 sqrt 2)
/// - 73 (-z)^{-11/2}/(128 sqrt 2); valid boundary datum for z <= -8.
Real hm_boundary_left(Real z_left);

/// Leading Airy asymptotic exp(-(2/3) z^{3/2}) / (2 sqrt(pi) z^{1/4});
/// valid boundary datum for z >= 8.
Real hm_boundary_right(Real z_right);

/// Tail formulas without the domain guard (used by the global evaluator).
Real hm_left_tail(Real z);
Real hm_right_tail(Real z);

/// Starting iterate A_1(z) = (1 + z^2)^{1/4} / ((1 + e^z) sqrt 2).
Real hm_initial_iterate(Real z);

struct HmSolveOptions {
    Real z_left = -10.0;
    Real z_right = 10.0;
    int degree = 128;
    Real relaxation = 0.009;
    Real tol = 1e-14;
    long max_iterations = 1000000;
    Real divergence_guard = 1e3;
};

/// Spectral representation of A on [z_left, z_right].
struct ChebyshevSolution {
    Vector coeffs;
    Real z_left;
    Real z_right;
    int degree;

    Real to_unit(Real z) const { return 2.0 * (z - z_left) / (z_right - z_left) - 1.0; }
    Real eval(Real z) const { return chebyshev_clenshaw(coeffs, to_unit(z)); }
};

/// Hastings-McLeod solution: Chebyshev core plus asymptotic tails. Immutable;
/// safe to share across readers.
class HastingsMcLeodSolution {
public:
    HastingsMcLeodSolution(ChebyshevSolution core, Vector second_derivative_coeffs,
                           long iterations, Real final_update);

    /// Global piecewise evaluator: left tail / Chebyshev sum / right tail.
    Real operator()(Real z) const;

    /// A''(z) from the spectral derivative; core interval only.
    Real second_derivative(Real z) const;

    /// P_II residual A'' - zA - 2A^3 at z (core interval only).
    Real residual(Real z) const;

    const ChebyshevSolution& core() const { return core_; }
    long iterations() const { return iterations_; }
    Real final_update() const { return final_update_; }

    /// Which right-tail formula the evaluator uses beyond z_right.
    static std::string right_tail_variant() { return "airy-leading-order"; }

private:
    ChebyshevSolution core_;
    Vector d2_coeffs_;
    long iterations_;
    Real final_update_;
};

/// Relaxed collocation iteration A_{n+1} = mu L^{-1}(z A_n + 2 A_n^3) + (1-mu) A_n
/// with tau-method boundary rows. Throws on divergence or iteration-cap hit.
HastingsMcLeodSolution solve_hastings_mcleod(const HmSolveOptions& opts = {});

}  // namespace dsw

#endif
