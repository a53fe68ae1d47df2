#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dsw/quadrature.hpp"
#include "dsw/specfun.hpp"
#include "oracles.hpp"

using namespace dsw;
using oracles::E_integral;
using oracles::K_integral;
using oracles::theta3_direct;

TEST_CASE("elliptic K: degenerate and oracle values") {
    CHECK(elliptic_K(0.0) == doctest::Approx(0.5 * pi).epsilon(1e-15));
    // frozen from the quadrature oracle
    CHECK(elliptic_K(0.5) == doctest::Approx(1.6857503548125961).epsilon(1e-12));
    for (Real s : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99})
        CHECK(elliptic_K(s) == doctest::Approx(K_integral(s)).epsilon(1e-12));
}

TEST_CASE("elliptic K near the logarithmic singularity") {
    const Real s = 1.0 - 1e-6;
    const Real K = elliptic_K(s);
    CHECK(std::isfinite(K));
    // log-singularity expansion K ~ log(4/s') with s' = sqrt(1-s^2)
    const Real sp = std::sqrt((1.0 - s) * (1.0 + s));
    CHECK(K == doctest::Approx(std::log(4.0 / sp)).epsilon(1e-6));
    CHECK(K == doctest::Approx(K_integral(s)).epsilon(1e-9));
    CHECK_THROWS_AS(elliptic_K(1.0 - 1e-13), std::domain_error);
    CHECK_THROWS_AS(elliptic_K(-0.1), std::domain_error);
}

TEST_CASE("elliptic E: endpoints and oracle values") {
    CHECK(elliptic_E(0.0) == doctest::Approx(0.5 * pi).epsilon(1e-15));
    CHECK(elliptic_E(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(elliptic_E(0.5) == doctest::Approx(1.4674622093394272).epsilon(1e-12));
    for (Real s : {0.1, 0.3, 0.5, 0.7, 0.9, 0.999})
        CHECK(elliptic_E(s) == doctest::Approx(E_integral(s)).epsilon(1e-12));
    CHECK_THROWS_AS(elliptic_E(1.5), std::domain_error);
}

TEST_CASE("Legendre relation") {
    for (Real s : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const Real sc = std::sqrt((1.0 - s) * (1.0 + s));
        const Real lhs = elliptic_E(s) * elliptic_Kprime(s) +
                         elliptic_E(sc) * elliptic_K(s) -
                         elliptic_K(s) * elliptic_Kprime(s);
        CHECK(lhs == doctest::Approx(0.5 * pi).epsilon(1e-10));
    }
}

TEST_CASE("Kprime avoids complementary-modulus cancellation") {
    for (Real s : {0.3, 0.9}) {
        const Real sc = std::sqrt((1.0 - s) * (1.0 + s));
        CHECK(elliptic_Kprime(s) == doctest::Approx(K_integral(sc)).epsilon(1e-11));
    }
    // tiny modulus: complementary K has the log asymptote ln(4/s) + O(s^2)
    CHECK(elliptic_Kprime(1e-8) == doctest::Approx(std::log(4e8)).epsilon(1e-12));
}

TEST_CASE("E/K degenerate expansion near s = 0") {
    // E/K at s^2 = 2 d / (uv + d) vs 1 - d/uv + (3/4) d^2/uv^2, error O(d^3)
    const Real uv = 0.5;
    for (Real d : {1e-2, 1e-3, 1e-4}) {
        const Real s = std::sqrt(2.0 * d / (uv + d));
        const EllipticKE ke = elliptic_KE(s);
        const Real expansion = 1.0 - d / uv + 0.75 * d * d / (uv * uv);
        const Real err = std::abs(ke.E / ke.K - expansion);
        CHECK(err < 8.0 * std::pow(d / uv, 3.0));
    }
}

TEST_CASE("theta3 basics") {
    for (Real z : {-0.7, 0.0, 0.3, 1.2}) CHECK(theta3(z, 0.0) == 1.0);
    // frozen from the direct-summation oracle
    CHECK(theta3(0.0, 0.1) == doctest::Approx(1.2002000020000002).epsilon(1e-15));
    for (Real q : {0.05, 0.3, 0.7}) {
        CHECK(theta3(0.0, q) == doctest::Approx(theta3_direct(0.0, q, 64)).epsilon(1e-14));
        CHECK(theta3(0.37, q) ==
              doctest::Approx(theta3_direct(0.37, q, 64)).epsilon(1e-14));
        // parity
        CHECK(theta3(0.25, q) == doctest::Approx(theta3(-0.25, q)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(theta3(0.0, 1.0), std::domain_error);
}

TEST_CASE("theta3 truncation is saturated") {
    for (Real q : {0.1, 0.5, 0.9}) {
        for (Real z : {0.0, 0.21, 0.77}) {
            const Theta3Eval a = theta3_eval(z, q, 0);
            const Theta3Eval b = theta3_eval(z, q, 4);
            CHECK(std::abs(a.value - b.value) < 1e-14);
            CHECK(std::abs(a.dz - b.dz) < 1e-14 * (1.0 + std::abs(a.dz)));
            CHECK(std::abs(a.dzz - b.dzz) < 1e-13 * (1.0 + std::abs(a.dzz)));
        }
    }
}

TEST_CASE("theta3 derivatives match finite differences") {
    const Real q = 0.4, z = 0.13, h = 1e-5;
    const Theta3Eval e = theta3_eval(z, q);
    const Real fd1 = (theta3(z + h, q) - theta3(z - h, q)) / (2 * h);
    const Real fd2 = (theta3(z + h, q) - 2 * theta3(z, q) + theta3(z - h, q)) / (h * h);
    CHECK(e.dz == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(e.dzz == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("airy at zero matches Maclaurin constants") {
    const Real c1 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    CHECK(airy_ai(0.0) == doctest::Approx(c1).epsilon(1e-14));
    CHECK(airy_ai(0.0) == doctest::Approx(0.3550280539).epsilon(1e-9));
}

TEST_CASE("airy matches leading asymptotic at z = 10") {
    const Real z = 10.0;
    const Real zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    const Real leading = std::exp(-zeta) / (2.0 * std::sqrt(pi) * std::pow(z, 0.25));
    // next asymptotic correction is u1/zeta ~ 3.3e-3
    CHECK(std::abs(airy_ai(z) / leading - 1.0) < 5e-3);
}

namespace {
Real airy_ode_residual(Real z, Real h) {
    const Real d2 = (-airy_ai(z + 2 * h) + 16.0 * airy_ai(z + h) - 30.0 * airy_ai(z) +
                     16.0 * airy_ai(z - h) - airy_ai(z - 2 * h)) /
                    (12.0 * h * h);
    return std::abs(d2 - z * airy_ai(z));
}
}  // namespace

TEST_CASE("airy satisfies its ODE") {
    for (Real z = -4.0; z <= 4.01; z += 0.25) CHECK(airy_ode_residual(z, 2.5e-3) < 1e-10);
    // looser sweep across the asymptotic branches (FD truncation dominates)
    for (Real z = -12.0; z <= 12.01; z += 0.5) CHECK(airy_ode_residual(z, 5e-3) < 1e-7);
}

TEST_CASE("airy branches agree at the switch points") {
    CHECK(std::abs(airy_ai(8.0) - airy_ai(8.0 + 1e-12)) < 1e-12);
    CHECK(std::abs(airy_ai(-8.0) - airy_ai(-8.0 - 1e-12)) < 1e-11);
}

TEST_CASE("domain types validate their invariants") {
    CHECK(EllipticModulus(0.5).s2 == doctest::Approx(0.25));
    CHECK_THROWS_AS(EllipticModulus(1.0), std::domain_error);
    CHECK_THROWS_AS(EllipticModulus(-0.2), std::domain_error);
    CHECK(ThetaArgument(0.3, 0.9).nome == 0.9);
    CHECK_THROWS_AS(ThetaArgument(0.0, 1.0), std::domain_error);
}
