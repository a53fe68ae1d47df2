#include "dsw/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsw {

namespace {
constexpr Real kEps = std::numeric_limits<Real>::epsilon();
}

EllipticModulus::EllipticModulus(Real modulus) : s(modulus), s2(modulus * modulus) {
    if (!(modulus >= 0.0) || modulus >= 1.0)
        throw std::domain_error("EllipticModulus: modulus must lie in [0, 1)");
}

Real elliptic_K(Real s) {
    if (!(s >= 0.0) || s >= kEllipticModulusCutoff)
        throw std::domain_error("elliptic_K: modulus outside [0, 1 - 1e-12)");
    Real a = 1.0;
    Real b = std::sqrt((1.0 - s) * (1.0 + s));
    while (std::abs(a - b) > kEps * a) {
        const Real an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return pi / (2.0 * a);
}

Real elliptic_Kprime(Real s) {
    if (!(s > 0.0) || s > 1.0)
        throw std::domain_error("elliptic_Kprime: modulus outside (0, 1]");
    Real a = 1.0;
    Real b = s;
    while (std::abs(a - b) > kEps * a) {
        const Real an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return pi / (2.0 * a);
}

EllipticKE elliptic_KE(Real s) {
    if (!(s >= 0.0) || s > 1.0)
        throw std::domain_error("elliptic_KE: modulus outside [0, 1]");
    if (s > kEllipticModulusCutoff) {
        // Boundary layer at s = 1: E = 1 + s'^2 (log(4/s') - 1/2)/2 + O(s'^4 log s').
        const Real sp = std::sqrt((1.0 - s) * (1.0 + s));
        const Real E = (s == 1.0) ? 1.0 : 1.0 + 0.5 * sp * sp * (std::log(4.0 / sp) - 0.5);
        return {std::numeric_limits<Real>::infinity(), E};
    }
    Real a = 1.0;
    Real b = std::sqrt((1.0 - s) * (1.0 + s));
    Real sum = s * s;  // c_0^2
    Real pw = 1.0;
    while (std::abs(a - b) > kEps * a) {
        const Real c = 0.5 * (a - b);
        const Real an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pw *= 2.0;
        sum += pw * c * c;
    }
    const Real K = pi / (2.0 * a);
    return {K, K * (1.0 - 0.5 * sum)};
}

Real elliptic_E(Real s) { return elliptic_KE(s).E; }

ThetaArgument::ThetaArgument(Real z_, Real nome_) : z(z_), nome(nome_) {
    if (!(nome_ >= 0.0) || nome_ >= 1.0)
        throw std::domain_error("ThetaArgument: nome must lie in [0, 1)");
}

Theta3Eval theta3_eval(Real z, Real nome, int extra_terms) {
    if (!(nome >= 0.0) || nome >= 1.0)
        throw std::domain_error("theta3: nome must lie in [0, 1)");
    Real value = 1.0;
    Real dz = 0.0;
    Real dzz = 0.0;
    int n = 0;
    if (nome > 0.0) {
        int extra = extra_terms;
        while (true) {
            ++n;
            const Real qn = std::pow(nome, static_cast<Real>(n) * n);
            const Real w = 2.0 * pi * n;
            const Real c = std::cos(w * z);
            const Real sn = std::sin(w * z);
            value += 2.0 * qn * c;
            dz -= 2.0 * qn * w * sn;
            dzz -= 2.0 * qn * w * w * c;
            const bool converged = 2.0 * qn * (1.0 + w * w) < 1e-16 * std::abs(value);
            if (converged) {
                if (extra <= 0) break;
                --extra;
            }
            if (n > 4096) break;  // nome pathologically close to 1
        }
    }
    return {value, dz, dzz, n};
}

Real theta3(Real z, Real nome) { return theta3_eval(z, nome).value; }

Real theta3_dlog2(Real z, Real nome) {
    const Theta3Eval t = theta3_eval(z, nome);
    return (t.dzz * t.value - t.dz * t.dz) / (t.value * t.value);
}

namespace {

Real airy_series(Real z) {
    // Ai = c1 f(z) - c2 g(z), DLMF 9.4.1. Extended precision keeps the
    // cancellation between the growing sums below 1e-13 out to |z| = 8.
    constexpr long double c1 = 0.35502805388781723926006318600418317640L;
    constexpr long double c2 = 0.25881940379280679840518356018920396348L;
    const long double zl = z;
    const long double z3 = zl * zl * zl;
    long double f = 1.0L, tf = 1.0L;
    long double g = zl, tg = zl;
    for (int k = 0; k < 200; ++k) {
        tf *= z3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        tg *= z3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += tf;
        g += tg;
        if (std::abs(static_cast<Real>(tf)) + std::abs(static_cast<Real>(tg)) <
            1e-20 * static_cast<Real>(std::abs(f) + std::abs(g)))
            break;
    }
    return static_cast<Real>(c1 * f - c2 * g);
}

// u_k coefficients of the large-|z| expansions, DLMF 9.7.
void airy_u_coeffs(Real* u, int m) {
    u[0] = 1.0;
    for (int k = 1; k < m; ++k)
        u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
               (216.0 * k * (2.0 * k - 1.0));
}

Real airy_asymptotic_pos(Real z) {
    const Real zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    constexpr int m = 40;
    Real u[m];
    airy_u_coeffs(u, m);
    Real s = 1.0;
    Real term = 1.0;
    Real prev = std::numeric_limits<Real>::max();
    for (int k = 1; k < m; ++k) {
        term = u[k] / std::pow(zeta, k);
        if (std::abs(term) >= prev) break;  // asymptotic tail starts growing
        s += (k % 2 ? -term : term);
        prev = std::abs(term);
    }
    return std::exp(-zeta) * s / (2.0 * std::sqrt(pi) * std::pow(z, 0.25));
}

Real airy_asymptotic_neg(Real z) {
    const Real x = -z;
    const Real zeta = 2.0 / 3.0 * std::pow(x, 1.5);
    constexpr int m = 40;
    Real u[m];
    airy_u_coeffs(u, m);
    Real p = 0.0, q = 0.0;
    Real prev = std::numeric_limits<Real>::max();
    for (int k = 0; 2 * k + 1 < m; ++k) {
        const Real tp = u[2 * k] / std::pow(zeta, 2 * k);
        const Real tq = u[2 * k + 1] / std::pow(zeta, 2 * k + 1);
        if (std::abs(tp) >= prev) break;
        p += (k % 2 ? -tp : tp);
        q += (k % 2 ? -tq : tq);
        prev = std::abs(tp);
    }
    const Real phase = zeta - 0.25 * pi;
    return (std::cos(phase) * p + std::sin(phase) * q) /
           (std::sqrt(pi) * std::pow(x, 0.25));
}

}  // namespace

Real airy_ai(Real z) {
    if (std::abs(z) <= 8.0) return airy_series(z);
    return z > 0.0 ? airy_asymptotic_pos(z) : airy_asymptotic_neg(z);
}

}  // namespace dsw
