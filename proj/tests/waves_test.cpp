#include "htype/waves.hpp"

#include <doctest.h>

#include <cmath>

using htype::OperatorKind;

TEST_CASE("dispersion and plane waves") {
    const htype::PhysicalConstants pc{1.0, 2.0, 0.5};
    CHECK(htype::dispersion_omega(3.0, pc) == doctest::Approx(2.0 * std::sqrt(9.0 + 1.0)));
    Eigen::VectorXd K(3);
    K << 0.3, 1.2, -0.4;
    CHECK(std::abs(htype::relativistic_residual(K, pc)) < 1e-12);
    CHECK_THROWS(htype::PhysicalConstants{0.0, 1.0, 1.0}.validate());
}

TEST_CASE("non-relativistic link") {
    Eigen::VectorXd K(3);
    K << 0.2, 0.1, -0.3;
    const htype::PhysicalConstants pc{1.0, 1.0, 1.0};
    const auto nl = htype::nonrelativistic_link(K, pc);
    CHECK(nl.omega_tilde == doctest::Approx(nl.omega - 1.0));
    CHECK(nl.omega_taylor == doctest::Approx(K.squaredNorm() / 2));
    CHECK(nl.link_residual < 1e-12);
    CHECK(nl.nonrel_residual < 1e-12);
    CHECK_THROWS(htype::nonrelativistic_link(K, htype::PhysicalConstants{1.0, 1.0, 0.0}));
}

TEST_CASE("static split N + S is exact") {
    const htype::PhysicalConstants pc{1.0, 1.0, 1.0};
    const auto sum = htype::static_operator(OperatorKind::Neutrino, pc, 4, 3) +
                     htype::static_operator(OperatorKind::Schrodinger, pc, 4, 3);
    CHECK(htype::coefficient_distance(sum, htype::static_operator(OperatorKind::FullStatic, pc, 4, 3)) == 0.0);
}

TEST_CASE("solvable split and time reversal") {
    const htype::PhysicalConstants pc{1.0, 1.0, 0.7};
    for (double q : {0.5, 1.0}) {
        const auto full = htype::solvable_operator(OperatorKind::FullSolvable, pc, 4, 3, q);
        const auto sum = htype::solvable_operator(OperatorKind::ShrinkingNeutrino, pc, 4, 3, q) +
                         htype::solvable_operator(OperatorKind::ExpandingSchrodinger, pc, 4, 3, q) +
                         htype::solvable_operator(OperatorKind::Tractor, pc, 4, 3, q);
        CHECK(htype::coefficient_distance(sum, full) < 1e-15);
        CHECK(htype::coefficient_distance(htype::time_reversed(htype::time_reversed(full)), full) == 0.0);
        CHECK(htype::time_reversed(full).reversed);
    }
}

TEST_CASE("full solvable operator is the Laplace-Beltrami operator") {
    const htype::SolvableExtension ext{htype::Algebra::h_type(3, 1, 0), 1.0, -1, 1};
    const htype::PhysicalConstants pc{1.0, 1.0, 0.0};
    const htype::JetField f = [](const std::vector<htype::Jet>& v) {
        return exp(v[0] * 0.3 + v[4] * std::complex<double>(0.0, 0.7) - v[7] * 0.2) * (v[1] * v[5] + 1.0);
    };
    Eigen::VectorXd X(4), Z(3);
    X << 0.1, -0.2, 0.3, 0.05;
    Z << 0.2, 0.1, -0.1;
    const auto a = htype::solvable_apply(ext, pc, OperatorKind::FullSolvable, f, X, Z, 0.3);
    const auto b = htype::solvable_laplace_beltrami(ext, f, X, Z, 0.3);
    CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(b)));
}

TEST_CASE("meson phase identity") {
    for (double T : {-1.0, 0.0, 0.8}) CHECK(htype::meson_residual_closed(1.3, 1.3, T) == doctest::Approx(0.0));
    CHECK(htype::meson_residual_closed(1.0, 2.0, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("operator names") {
    CHECK(htype::to_string(OperatorKind::Meson) == "meson");
    CHECK(htype::to_string(OperatorKind::FullSolvable) == "full_solvable");
    CHECK(htype::is_solvable_kind(OperatorKind::Tractor));
    CHECK_FALSE(htype::is_solvable_kind(OperatorKind::Neutrino));
}

TEST_CASE("cross term equals x^2/4 Delta_Z on H-type algebras") {
    // On an X-independent plane wave e^{i<Z,K>}, Delta_X and the spin term vanish, so S f = -(x^2/4)|K|^2 f.
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    const htype::PhysicalConstants pc{1.0, 1.0, 1.0};
    Eigen::VectorXd K(3), X(4), Z(3);
    K << 0.7, -0.2, 1.1;
    X << 0.3, 0.5, -0.4, 0.1;
    Z << 0.2, -0.6, 0.3;
    const htype::JetField f = [K](const std::vector<htype::Jet>& v) {
        htype::Jet phase(v[0].dim());
        for (int a = 0; a < 3; ++a) phase += v[4 + a] * K(a);
        return exp(phase * std::complex<double>(0.0, 1.0));
    };
    const std::complex<double> value = std::exp(std::complex<double>(0.0, K.dot(Z)));
    const auto s = htype::static_apply(alg, pc, OperatorKind::Schrodinger, f, X, Z, 0.4);
    CHECK(std::abs(s + 0.25 * X.squaredNorm() * K.squaredNorm() * value) < 1e-12);
}
