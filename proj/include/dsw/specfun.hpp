#ifndef DSW_SPECFUN_HPP
#define DSW_SPECFUN_HPP

#include "dsw/types.hpp"

namespace dsw {

// Moduli this close to 1 are rejected by elliptic_K.
inline constexpr Real kEllipticModulusCutoff = 1.0 - 1e-12;

/// Elliptic modulus s with its square cached; 0 <= s < 1 for K, 0 <= s <= 1 for E.
struct EllipticModulus {
    Real s;
    Real s2;
    explicit EllipticModulus(Real modulus);
};

/// Complete elliptic integral of the first kind, AGM evaluation.
Real elliptic_K(Real s);

/// Complete elliptic integral of the second kind, AGM evaluation. Accepts s = 1.
Real elliptic_E(Real s);

/// K'(s) = K(sqrt(1-s^2)), evaluated as pi / (2 AGM(1, s)) so no precision is
/// lost forming the complementary modulus. Requires s > 0.
Real elliptic_Kprime(Real s);

struct EllipticKE {
    Real K;
    Real E;
};

/// Both integrals from a single AGM sweep.
EllipticKE elliptic_KE(Real s);

/// Argument pair of the Jacobi theta function; purely imaginary period means a
/// real nome in [0, 1).
struct ThetaArgument {
    Real z;
    Real nome;
    ThetaArgument(Real z_, Real nome_);
};

struct Theta3Eval {
    Real value;
    Real dz;     // d/dz
    Real dzz;    // d^2/dz^2
    int terms;   // series terms actually summed
};

/// theta_3(z; q) = sum_{n in Z} q^{n^2} cos(2 pi n z) and its z-derivatives.
/// extra_terms forces that many terms beyond the automatic truncation point.
Theta3Eval theta3_eval(Real z, Real nome, int extra_terms = 0);

Real theta3(Real z, Real nome);

/// d^2/dz^2 log theta_3(z; q), the combination entering the elliptic solution.
Real theta3_dlog2(Real z, Real nome);

/// Airy function Ai on the real line; Maclaurin series for |z| <= 8 and the
/// standard asymptotic expansions beyond.
Real airy_ai(Real z);

}  // namespace dsw

#endif
