#include "htype/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

TEST_CASE("Ricci tensor: -l/2 on X, k/4 on Z") {
    for (const auto& [l, a, b] : {std::tuple{3, 1, 0}, std::tuple{3, 1, 1}, std::tuple{1, 1, 0}, std::tuple{5, 1, 0}}) {
        const auto alg = htype::Algebra::h_type(l, a, b);
        const int k = alg.k();
        const auto rep = htype::curvature_report(alg, 10, 2);
        CHECK(rep.ok());
        for (int i = 0; i < k + l; ++i) {
            CHECK(rep.ricci_trace(i, i) == doctest::Approx(i < k ? -l / 2.0 : k / 4.0).epsilon(1e-12));
            for (int j = 0; j < k + l; ++j)
                if (i != j) CHECK(std::abs(rep.ricci_trace(i, j)) < 1e-12);
        }
        // Scalar curvature of the nilpotent group: -kl/4.
        CHECK(rep.scalar == doctest::Approx(-k * l / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("Koszul engine agrees with the closed connection") {
    const auto alg = htype::Algebra::h_type(3, 2, 1);
    const auto eng = htype::nilpotent_structure(alg);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N;
    Eigen::VectorXd U(alg.dim()), V(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) {
        U(i) = N(rng);
        V(i) = N(rng);
    }
    CHECK((eng.connection(U, V) - htype::connection(alg, U, V)).norm() < 1e-12);
    // Torsion-free.
    CHECK((eng.connection(U, V) - eng.connection(V, U) - eng.bracket(U, V)).norm() < 1e-12);
}

TEST_CASE("solvable scalar curvature at q = 1") {
    // -(k/4 + l)(k + l + 1)
    const htype::SolvableExtension e43{htype::Algebra::h_type(3, 1, 0), 1.0, 1, 1};
    CHECK(htype::solvable_structure(e43).scalar() == doctest::Approx(-32.0).epsilon(1e-12));
    CHECK(htype::solvable_scalar(e43) == doctest::Approx(-32.0).epsilon(1e-12));
    const htype::SolvableExtension e83{htype::Algebra::h_type(3, 2, 0), 1.0, 1, 1};
    CHECK(htype::solvable_structure(e83).scalar() == doctest::Approx(-60.0).epsilon(1e-12));
    const htype::SolvableExtension heis{htype::Algebra::h_type(1, 1, 0), 1.0, 1, 1};
    // Complex hyperbolic plane: k = 2, l = 1 gives -(3/2)(4) = -6.
    CHECK(htype::solvable_structure(heis).scalar() == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("Einstein tensor time component") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    const double k = 4, l = 3;
    for (int sig : {1, -1}) {
        const htype::SolvableExtension ext{alg, 1.0, sig, 1};
        const auto eng = htype::solvable_structure(ext);
        const int T = ext.dim() - 1;
        CHECK(eng.gram()(T, T) == sig);
        const double einstein = eng.ricci()(T, T) - 0.5 * eng.scalar() * sig;
        // Riemannian: Ric_TT = -(k/4 + l), S = -(k/4 + l)(k + l + 1).
        if (sig == 1) CHECK(einstein == doctest::Approx((k / 4 + l) * (k + l - 1) / 2).epsilon(1e-12));
        if (sig == -1) CHECK(einstein == doctest::Approx(9.0).epsilon(1e-12));
    }
    // The closed entry is a fixed expression in (k, l) and <T,T>; it differs from both values above.
    CHECK(htype::einstein_tt_closed(4, 3, 1.0) == doctest::Approx(34.0));
    CHECK(htype::einstein_tt_closed(4, 3, -1.0) == doctest::Approx(-34.0));
}

TEST_CASE("Hubble scaling of X and Z curves") {
    for (double tau : {-1.0, 0.0, 0.3, 2.0})
        for (double q : {0.5, 1.0, 2.0}) {
            CHECK(htype::hubble_scaling(htype::CurveType::X, 1.7, tau, q) ==
                  doctest::Approx(1.7 * std::exp(q * tau / 2)).epsilon(1e-14));
            CHECK(htype::hubble_scaling(htype::CurveType::Z, 1.7, tau, q) ==
                  doctest::Approx(1.7 * std::exp(q * tau)).epsilon(1e-14));
        }
}

TEST_CASE("solvable metric at X = 0 is diagonal in t") {
    const htype::SolvableExtension ext{htype::Algebra::h_type(3, 1, 0), 1.0, -1, 1};
    const double t = 2.5;
    const Eigen::MatrixXd g = htype::solvable_metric(ext, Eigen::VectorXd::Zero(4), t);
    for (int i = 0; i < 4; ++i) CHECK(g(i, i) == doctest::Approx(1 / t));
    for (int a = 4; a < 7; ++a) CHECK(g(a, a) == doctest::Approx(1 / (t * t)));
    CHECK(g(7, 7) == doctest::Approx(-1 / (t * t)));
}
