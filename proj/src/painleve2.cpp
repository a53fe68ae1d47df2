#include "dsw/painleve2.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsw {

namespace {
const Real kSqrt2 = std::sqrt(2.0);
}

Real hm_left_tail(Real z) {
    const Real w = -z;
    return std::sqrt(0.5 * w) - std::pow(w, -2.5) / (8.0 * kSqrt2) -
           73.0 / (128.0 * kSqrt2) * std::pow(w, -5.5);
}

Real hm_right_tail(Real z) {
    return std::exp(-2.0 / 3.0 * std::pow(z, 1.5)) /
           (2.0 * std::sqrt(pi) * std::pow(z, 0.25));
}

Real hm_boundary_left(Real z_left) {
    if (!(z_left <= -8.0))
        throw std::domain_error(
            "hm_boundary_left: need z <= -8 for the truncated tail to be trustworthy");
    return hm_left_tail(z_left);
}

Real hm_boundary_right(Real z_right) {
    if (!(z_right >= 8.0))
        throw std::domain_error(
            "hm_boundary_right: need z >= 8 for the truncated tail to be trustworthy");
    return hm_right_tail(z_right);
}

Real hm_initial_iterate(Real z) {
    return std::pow(1.0 + z * z, 0.25) / ((1.0 + std::exp(z)) * kSqrt2);
}

HastingsMcLeodSolution::HastingsMcLeodSolution(ChebyshevSolution core,
                                               Vector second_derivative_coeffs,
                                               long iterations, Real final_update)
    : core_(std::move(core)),
      d2_coeffs_(std::move(second_derivative_coeffs)),
      iterations_(iterations),
      final_update_(final_update) {}

Real HastingsMcLeodSolution::operator()(Real z) const {
    if (z < core_.z_left) return hm_left_tail(z);
    if (z > core_.z_right) return hm_right_tail(z);
    return core_.eval(z);
}

Real HastingsMcLeodSolution::second_derivative(Real z) const {
    if (!(z >= core_.z_left && z <= core_.z_right))
        throw std::domain_error("second_derivative: outside the spectral interval");
    return chebyshev_clenshaw(d2_coeffs_, core_.to_unit(z));
}

Real HastingsMcLeodSolution::residual(Real z) const {
    const Real a = core_.eval(z);
    return second_derivative(z) - z * a - 2.0 * a * a * a;
}

HastingsMcLeodSolution solve_hastings_mcleod(const HmSolveOptions& opts) {
    if (!(opts.z_left < 0.0 && opts.z_right > 0.0))
        throw std::domain_error("solve_hastings_mcleod: interval must straddle 0");
    const Real a_left = hm_boundary_left(opts.z_left);
    const Real a_right = hm_boundary_right(opts.z_right);

    const int N = opts.degree;
    const ChebyshevBasis basis(N);
    const Real scale = 2.0 / (opts.z_right - opts.z_left);

    // z at the collocation points; x_0 = 1 maps to z_right
    Array z(N + 1);
    for (int l = 0; l <= N; ++l)
        z[l] = opts.z_left + (basis.points[l] + 1.0) * (opts.z_right - opts.z_left) / 2.0;

    Matrix L = (scale * scale) * (basis.derivative * basis.derivative);
    for (int k = 0; k <= N; ++k) {
        L(N - 1, k) = 1.0;                      // sum A_n = A(z_right)
        L(N, k) = (k % 2 == 0) ? 1.0 : -1.0;    // sum (-1)^n A_n = A(z_left)
    }
    const Eigen::PartialPivLU<Matrix> lu(L);

    Vector values(N + 1);
    for (int l = 0; l <= N; ++l) values[l] = hm_initial_iterate(z[l]);
    Vector coeffs = basis.analysis * values;

    const Real mu = opts.relaxation;
    long iterations = 0;
    Real update = std::numeric_limits<Real>::max();
    while (update >= opts.tol) {
        if (++iterations > opts.max_iterations) {
            std::ostringstream os;
            os << "solve_hastings_mcleod: no convergence after " << opts.max_iterations
               << " iterations; last update " << update;
            throw std::runtime_error(os.str());
        }
        Vector rhs_phys = (z * values.array() + 2.0 * values.array().cube()).matrix();
        Vector rhs = basis.analysis * rhs_phys;
        rhs[N - 1] = a_right;
        rhs[N] = a_left;
        Vector next = mu * lu.solve(rhs) + (1.0 - mu) * coeffs;
        update = (next - coeffs).cwiseAbs().maxCoeff();
        coeffs.swap(next);
        values = basis.synthesis * coeffs;
        if (values.cwiseAbs().maxCoeff() > opts.divergence_guard)
            throw std::runtime_error("solve_hastings_mcleod: iteration diverged");
    }

    ChebyshevSolution core{coeffs, opts.z_left, opts.z_right, N};
    Vector d2 = (scale * scale) * (basis.derivative * (basis.derivative * coeffs));
    return HastingsMcLeodSolution(std::move(core), std::move(d2), iterations, update);
}

}  // namespace dsw
