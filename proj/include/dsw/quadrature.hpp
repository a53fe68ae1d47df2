#ifndef DSW_QUADRATURE_HPP
#define DSW_QUADRATURE_HPP

#include <functional>

#include "dsw/types.hpp"

namespace dsw {

/// Gauss-Legendre rule on [a, b]; nodes/weights from the Golub-Welsch
/// eigenproblem of the Jacobi matrix.
struct GaussLegendre {
    Array nodes;
    Array weights;
    GaussLegendre(int n, Real a = -1.0, Real b = 1.0);

    template <class F>
    Real integrate(F&& f) const {
        Real acc = 0.0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Gauss-Chebyshev nodes for int_{-1}^{1} g(x)/sqrt(1-x^2) dx ~ (pi/n) sum g(x_j).
Array gauss_chebyshev_nodes(int n);

/// Adaptive Simpson quadrature to absolute tolerance tol.
Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real b, Real tol,
                      int max_depth = 48);

}  // namespace dsw

#endif
