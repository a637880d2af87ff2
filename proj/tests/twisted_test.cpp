#include "htype/twisted.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

namespace {

Eigen::VectorXd unit(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = N(rng);
    return v.normalized();
}

}  // namespace

TEST_CASE("Theta_Q is an eigenfunction of D_K") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    const Eigen::VectorXd Q = unit(4, 1);
    Eigen::VectorXd K(3);
    K << 0.4, -1.1, 0.3;
    for (const auto& [p, q] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 1}, std::pair{3, 0}}) {
        const auto c = htype::dk_eigencheck(alg, Q, K, p, q);
        const std::complex<double> expected(0.0, htype::kSigma * (p - q) * K.norm());
        CHECK(std::abs(c.expected - expected) < 1e-14);
        CHECK(c.residual < 1e-10);
        CHECK(c.fd_residual < 1e-5);
    }
}

TEST_CASE("sphere-bundle transforms: M and Delta_Z eigenvalues") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    for (double R : {0.7, 1.5}) {
        auto tf = htype::TwistedFunction::one_pole(alg, unit(4, 2), 2, 1);
        tf.radius = [R](const htype::Jet& x2) { return htype::Jet(x2.dim(), R); };
        const auto m = htype::m_operator_eigencheck(tf);
        CHECK(std::abs(m.expected - std::complex<double>(htype::kSigma * (1 - 2) * R, 0.0)) < 1e-14);
        CHECK(m.residual < 1e-6);
        CHECK(std::abs(m.delta_z + R * R) < 1e-6 * R * R);
    }
}

TEST_CASE("transform of Theta^0 on a sphere bundle is radial in Z") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    auto tf = htype::TwistedFunction::one_pole(alg, unit(4, 3), 0, 0);
    tf.radius = [](const htype::Jet& x2) { return htype::Jet(x2.dim(), 1.2); };
    const Eigen::VectorXd X = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd Z1(3), Z2(3);
    Z1 << 0.5, 0.0, 0.0;
    Z2 << 0.0, 0.3, 0.4;
    CHECK(std::abs(htype::twisted_transform(tf, X, Z1) - htype::twisted_transform(tf, X, Z2)) < 1e-10);
}

TEST_CASE("spherical harmonic dimensions") {
    for (int s = 0; s < 6; ++s) {
        CHECK(htype::spherical_harmonic_dimension(3, s) == 2 * s + 1);
        CHECK(htype::spherical_harmonic_dimension(2, s) == (s == 0 ? 1 : 2));
    }
    CHECK(htype::spherical_harmonic_dimension(4, 2) == 9);
}

TEST_CASE("projection window") {
    CHECK(htype::projth_window(2, 1) == std::vector<int>{1, 3});
    CHECK(htype::projth_window(0, 3) == std::vector<int>{3});
    CHECK(htype::projth_admissible(1, 1, 2));
    CHECK_FALSE(htype::projth_admissible(1, 1, 1));
}

TEST_CASE("zonal kernel reproduces at the pole") {
    // Z_s(1) = dim H_s
    CHECK(htype::zonal_kernel(3, 4, 1.0) == doctest::Approx(9.0));
    CHECK(htype::zonal_kernel(2, 3, 1.0) == doctest::Approx(2.0));
}
