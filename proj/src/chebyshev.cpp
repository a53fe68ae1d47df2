#include "dsw/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace dsw {

ChebyshevBasis::ChebyshevBasis(int n) : N(n) {
    if (n < 2) throw std::invalid_argument("ChebyshevBasis: need degree >= 2");
    points.resize(N + 1);
    for (int l = 0; l <= N; ++l) points[l] = std::cos(pi * l / N);

    synthesis.resize(N + 1, N + 1);
    for (int l = 0; l <= N; ++l)
        for (int k = 0; k <= N; ++k) synthesis(l, k) = std::cos(pi * k * l / N);

    analysis.resize(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
        const Real ck = (k == 0 || k == N) ? 2.0 : 1.0;
        for (int l = 0; l <= N; ++l) {
            const Real cl = (l == 0 || l == N) ? 2.0 : 1.0;
            analysis(k, l) = 2.0 / (N * ck * cl) * std::cos(pi * k * l / N);
        }
    }

    // b_j = (2/c_j) sum_{k>j, k-j odd} k a_k
    derivative = Matrix::Zero(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) {
        const Real cj = (j == 0) ? 2.0 : 1.0;
        for (int k = j + 1; k <= N; ++k)
            if ((k - j) % 2 == 1) derivative(j, k) = 2.0 * k / cj;
    }
}

Real chebyshev_clenshaw(const Vector& coeffs, Real x) {
    Real y1 = 0.0, y2 = 0.0;
    for (Eigen::Index k = coeffs.size() - 1; k >= 1; --k) {
        const Real y = 2.0 * x * y1 - y2 + coeffs[k];
        y2 = y1;
        y1 = y;
    }
    return x * y1 - y2 + coeffs[0];
}

}  // namespace dsw
