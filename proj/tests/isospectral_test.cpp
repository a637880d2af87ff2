#include "htype/isospectral.hpp"

#include <doctest.h>

namespace {

htype::SpectrumRecord record(std::vector<double> values, int mult = 1) {
    htype::SpectrumRecord rec;
    for (double v : values) {
        htype::EigenEntry e;
        e.value = v;
        e.multiplicity = mult;
        rec.eigenvalues.push_back(e);
    }
    return rec;
}

}  // namespace

TEST_CASE("spectra comparison flags a shifted eigenvalue") {
    const auto a = record({-1.0, -2.0, -3.5});
    auto b = a;
    CHECK(htype::spectra_compare(a, b, 1e-6).isospectral());
    b.eigenvalues[1].value += 1e-3;
    const auto c = htype::spectra_compare(a, b, 1e-6);
    CHECK_FALSE(c.isospectral());
    REQUIRE(c.mismatches.size() == 1);
    CHECK(c.mismatches[0].index == 1);
    CHECK(htype::spectra_compare(a, record({-1.0, -2.0}), 1e-6).length_mismatch);
    CHECK_FALSE(htype::spectra_compare(a, record({-1.0, -2.0, -3.5}, 2), 1e-6).isospectral());
}

TEST_CASE("flipping one Clifford block maps (1,1) to (2,0)") {
    const auto left = htype::Algebra::h_type(3, 2, 0);
    const auto flipped = htype::flip_block(htype::Algebra::h_type(3, 1, 1), 1);
    for (int a = 0; a < 3; ++a) CHECK((flipped.J(a) - left.J(a)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduced parameters agree across non-isomorphic groups") {
    const auto L = htype::Algebra::h_type(3, 2, 0);
    const auto R = htype::Algebra::h_type(3, 1, 1);
    const Eigen::VectorXd Q = Eigen::VectorXd::Unit(8, 0);
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 2; ++q) {
            const auto a = htype::reduce_pole(L, Q, p, q, 1.0);
            const auto b = htype::reduce_pole(R, Q, p, q, 1.0);
            CHECK(a == b);
            CHECK(a.n == p + q);
            CHECK(a.m == htype::kSigma * (p - q));
            CHECK(a.dk_residual < 1e-10);
        }
}

TEST_CASE("reduced spectra coincide") {
    const auto L = htype::Algebra::h_type(3, 2, 0);
    const auto R = htype::Algebra::h_type(3, 1, 1);
    htype::CollocationOptions opt;
    opt.nodes = 120;
    for (const auto& bc : {htype::BoundaryCondition::dirichlet(), htype::BoundaryCondition::neumann()}) {
        const auto a = htype::reduced_spectrum(L, 1, 1, 1.0, 2.0, bc, 4, opt);
        const auto b = htype::reduced_spectrum(R, 1, 1, 1.0, 2.0, bc, 4, opt);
        CHECK(htype::spectra_compare(a, b, 1e-8).isospectral());
    }
}

TEST_CASE("pole change is an isometry of the transforms") {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    const Eigen::VectorXd Q = Eigen::VectorXd::Unit(4, 0);
    Eigen::VectorXd Qt(4);
    Qt << 0.5, 0.5, 0.5, 0.5;
    const auto pt = htype::point_transformation(alg, Q, Qt);
    CHECK(pt.orthogonality < 1e-12);
    CHECK(pt.span_defect < 1e-12);
}
