#include "htype/glz.hpp"
#include "htype/quadrature.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using htype::Rational;

TEST_CASE("explicit eigenvalues") {
    CHECK(htype::explicit_eigenvalue(1.0, 0, 0, 2) == doctest::Approx(-6.0));
    CHECK(htype::explicit_eigenvalue(1.0, 3, 2, 2) == doctest::Approx(-26.0));
    CHECK(htype::explicit_eigenvalue(0.5, 1, 1, 4) == doctest::Approx(-7.0));
    const auto rec = htype::explicit_spectrum(1.0, 2, 3, 2);
    CHECK(rec.eigenvalues.size() == 12);
    CHECK(rec.provenance == "explicit");
}

TEST_CASE("Laguerre eigenfunctions are exact") {
    for (int k : {2, 4, 8})
        for (int n = 0; n <= 3; ++n)
            for (int r = 0; r <= 6; ++r) {
                const auto u = htype::laguerre_eigenfunction(r, n, k);
                REQUIRE(static_cast<int>(u.size()) == r + 1);
                CHECK(u.back() == 1);
                const Rational alpha(k + 2 * n - 2, 2);
                for (const auto& c : htype::laguerre_residual(u, alpha, r)) CHECK(c == 0);
            }
}

TEST_CASE("Laguerre eigenfunctions match associated Laguerre polynomials") {
    // Monic u = (-1)^r r! L_r^alpha(t)
    const int k = 4, n = 1, r = 5;
    const double alpha = k / 2.0 + n - 1;
    const auto u = htype::laguerre_eigenfunction(r, n, k);
    for (double t : {0.0, 0.4, 1.7, 5.2}) {
        const double ref = -boost::math::factorial<double>(r) * boost::math::laguerre(r, alpha, t);
        CHECK(htype::evaluate_polynomial(u, t) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("Laguerre eigenfunctions are orthogonal") {
    const int k = 2, n = 2;
    const double alpha = k / 2.0 + n - 1;
    const auto rule = htype::gauss_laguerre(40, alpha);
    for (int r = 0; r <= 4; ++r)
        for (int s = 0; s < r; ++s) {
            const auto ur = htype::laguerre_eigenfunction(r, n, k), us = htype::laguerre_eigenfunction(s, n, k);
            double acc = 0;
            for (int i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights(i) * htype::evaluate_polynomial(ur, rule.nodes(i)) *
                       htype::evaluate_polynomial(us, rule.nodes(i));
            CHECK(std::abs(acc) < 1e-9);
        }
}

TEST_CASE("collocation reproduces explicit eigenvalues on a long interval") {
    for (int p = 0; p <= 2; ++p) {
        const htype::RadialGLZOperator op(4, p, p, 1.0);
        const auto rec = htype::compact_spectrum(op, std::sqrt(80.0), htype::BoundaryCondition::dirichlet(), 4);
        REQUIRE(rec.eigenvalues.size() == 4);
        CHECK(rec.provenance == "discretized");
        for (int r = 0; r < 4; ++r)
            CHECK(rec.eigenvalues[r].value == doctest::Approx(htype::explicit_eigenvalue(1.0, r, p, 4)).epsilon(1e-8));
    }
}

TEST_CASE("collocation converges with the node count") {
    const htype::RadialGLZOperator op(2, 1, -1, 0.7);
    htype::CollocationOptions a, b;
    a.nodes = 120;
    b.nodes = 240;
    const auto bc = htype::BoundaryCondition::robin(0.6, 0.8);
    const auto ra = htype::compact_spectrum(op, 2.0, bc, 5, a);
    const auto rb = htype::compact_spectrum(op, 2.0, bc, 5, b);
    for (int i = 0; i < 5; ++i)
        CHECK(ra.eigenvalues[i].value == doctest::Approx(rb.eigenvalues[i].value).epsilon(1e-10));
}

TEST_CASE("Z-ball eigenvalues") {
    // l = 3, s = 0: sin(sqrt(lambda) r)/r vanishes at r = 1.
    const auto d3 = htype::zball_eigenvalues(3, 0, 1.0, htype::BoundaryCondition::dirichlet(), 4);
    for (int i = 0; i < 4; ++i) {
        const double ip = (i + 1) * std::numbers::pi;
        CHECK(d3[i] == doctest::Approx(ip * ip).epsilon(1e-10));
    }
    // l = 2: squares of the zeros of J_s, scaled by 1/R^2.
    const auto d2 = htype::zball_eigenvalues(2, 1, 2.0, htype::BoundaryCondition::dirichlet(), 3);
    const double j1[3] = {3.8317059702075123, 7.0155866698156187, 10.173468135062722};
    for (int i = 0; i < 3; ++i) CHECK(d2[i] == doctest::Approx(j1[i] * j1[i] / 4.0).epsilon(1e-10));
}

TEST_CASE("harmonic space dimensions") {
    // k = 2: one complex variable, z^p conj(z)^q harmonic only when p q = 0.
    CHECK(htype::harmonic_space_dimension(2, 0, 0) == 1);
    CHECK(htype::harmonic_space_dimension(2, 3, 0) == 1);
    CHECK(htype::harmonic_space_dimension(2, 1, 1) == 0);
    // k = 4: bidegree (p, 0) holomorphic polynomials in two variables.
    CHECK(htype::harmonic_space_dimension(4, 2, 0) == 3);
    CHECK(htype::harmonic_space_dimension(4, 1, 1) == 3);
}

TEST_CASE("operator validation") {
    CHECK_THROWS(htype::RadialGLZOperator(3, 0, 0, 1.0).validate());
    CHECK_THROWS(htype::BoundaryCondition::robin(0.0, 0.0));
}
