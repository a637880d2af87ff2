#include "htype/algebra.hpp"
#include "htype/errors.hpp"

#include <doctest.h>

#include <random>

namespace {

Eigen::VectorXd randn(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = N(rng);
    return v;
}

}  // namespace

TEST_CASE("H-type groups have the expected dimensions") {
    const auto h3 = htype::Algebra::h_type(3, 1, 0);
    CHECK(h3.k() == 4);
    CHECK(h3.l() == 3);
    const auto heis = htype::Algebra::h_type(1, 1, 0);
    CHECK(heis.k() == 2);
    CHECK(heis.l() == 1);
    CHECK(htype::Algebra::h_type(7, 1, 1).k() == 16);
}

TEST_CASE("bracket is dual to J") {
    const auto alg = htype::Algebra::h_type(3, 2, 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const Eigen::VectorXd X = randn(alg.k(), rng), Y = randn(alg.k(), rng), Z = randn(alg.l(), rng);
        // <[X,Y], Z> = <J_Z X, Y>
        CHECK(alg.bracket(X, Y).dot(Z) == doctest::Approx((alg.J(Z) * X).dot(Y)).epsilon(1e-12));
        CHECK((alg.bracket(X, Y) + alg.bracket(Y, X)).norm() < 1e-12);
        const Eigen::MatrixXd JZ = alg.J(Z);
        CHECK((JZ * JZ + Z.squaredNorm() * Eigen::MatrixXd::Identity(alg.k(), alg.k())).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("group law is associative with inverses") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    std::mt19937_64 rng(5);
    auto el = [&] { return htype::GroupElement{randn(4, rng), randn(3, rng)}; };
    for (int t = 0; t < 5; ++t) {
        const auto a = el(), b = el(), c = el();
        const auto l = htype::group_multiply(alg, htype::group_multiply(alg, a, b), c);
        const auto r = htype::group_multiply(alg, a, htype::group_multiply(alg, b, c));
        CHECK((l.X - r.X).norm() < 1e-12);
        CHECK((l.Z - r.Z).norm() < 1e-12);
        const auto e = htype::group_multiply(alg, a, htype::group_inverse(a));
        CHECK(e.X.norm() < 1e-12);
        CHECK(e.Z.norm() < 1e-12);
    }
}

TEST_CASE("H-type verdicts") {
    CHECK(htype::is_h_type(htype::Algebra::h_type(3, 2, 1), 50).h_type);
    CHECK(htype::is_h_type(htype::Algebra::h_type(5, 1, 0), 50).h_type);
    // su(3) on C^3 = R^6: J_Z^2 is not a multiple of the identity.
    const auto su3 = htype::from_representation(htype::su3_generators());
    CHECK_FALSE(htype::is_h_type(su3, 50).h_type);
}

TEST_CASE("from_representation rejects non-skew generators") {
    Eigen::MatrixXd A(2, 2);
    A << 0, 1, 1, 0;
    CHECK_THROWS_AS(htype::from_representation({A}), htype::InvalidArgument);
}

TEST_CASE("from_representation uses the unnormalized trace form") {
    Eigen::MatrixXd j(2, 2);
    j << 0, -1, 1, 0;
    const auto alg = htype::from_representation({3.0 * j});
    // -Tr((3j)(3j)) = 18, so the unit generator is 3j / sqrt(18) and squares to -(1/2) I.
    CHECK(alg.z_gram()(0, 0) == doctest::Approx(18.0));
    CHECK((alg.J(0) * alg.J(0) + 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    const auto verdict = htype::is_h_type(alg, 20);
    CHECK_FALSE(verdict.h_type);
    CHECK(verdict.max_residual >= 0.5);
}

TEST_CASE("the (a,b) <-> (b,a) swap is an isomorphism") {
    const auto w = htype::swap_witness(3, 2, 1);
    const double defect =
        htype::isomorphism_defect(htype::Algebra::h_type(3, 2, 1), htype::Algebra::h_type(3, 1, 2), w.A, w.Bz);
    CHECK(defect < 1e-12);
}
