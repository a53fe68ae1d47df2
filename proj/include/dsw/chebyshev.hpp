#ifndef DSW_CHEBYSHEV_HPP
#define DSW_CHEBYSHEV_HPP

#include "dsw/types.hpp"

namespace dsw {

/// Chebyshev collocation workspace on the N+1 extrema x_l = cos(pi l / N),
/// l = 0..N (so x_0 = +1 and x_N = -1). Transforms are dense matrix products;
/// at the degrees used here that is cheaper than planning an FFT.
struct ChebyshevBasis {
    int N;
    Array points;      // collocation points x_l
    Matrix synthesis;  // coefficients -> point values, T_n(x_l)
    Matrix analysis;   // point values -> coefficients (DCT-I with endpoint weights)
    Matrix derivative; // d/dx acting on coefficient vectors

    explicit ChebyshevBasis(int n);
};

/// Evaluate sum a_n T_n(x) by the Clenshaw recurrence.
Real chebyshev_clenshaw(const Vector& coeffs, Real x);

}  // namespace dsw

#endif
