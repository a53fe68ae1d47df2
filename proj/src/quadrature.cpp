#include "dsw/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsw {

GaussLegendre::GaussLegendre(int n, Real a, Real b) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be positive");
    Matrix jacobi = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const Real off = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = off;
        jacobi(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
    nodes.resize(n);
    weights.resize(n);
    const Real mid = 0.5 * (a + b);
    const Real half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + half * es.eigenvalues()[i];
        const Real v0 = es.eigenvectors()(0, i);
        weights[i] = 2.0 * v0 * v0 * half;
    }
}

Array gauss_chebyshev_nodes(int n) {
    Array x(n);
    for (int j = 0; j < n; ++j) x[j] = std::cos((2.0 * j + 1.0) * pi / (2.0 * n));
    return x;
}

namespace {

Real simpson_step(const std::function<Real(Real)>& f, Real a, Real b, Real fa, Real fm,
                  Real fb, Real whole, Real tol, int depth) {
    const Real m = 0.5 * (a + b);
    const Real lm = 0.5 * (a + m);
    const Real rm = 0.5 * (m + b);
    const Real flm = f(lm);
    const Real frm = f(rm);
    const Real left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Real right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Real delta = left + right - whole;
    const bool width_floor = (b - a) < 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    const bool noise_floor =
        std::abs(delta) <=
        64.0 * std::numeric_limits<Real>::epsilon() *
            (std::abs(left) + std::abs(right) + std::abs(whole));
    if (depth <= 0 || width_floor || noise_floor || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real b, Real tol,
                      int max_depth) {
    const Real fa = f(a);
    const Real fb = f(b);
    const Real fm = f(0.5 * (a + b));
    const Real whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace dsw
