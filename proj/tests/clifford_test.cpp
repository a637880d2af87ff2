#include "htype/clifford.hpp"

#include <doctest.h>

namespace {

using htype::IntMatrix;

// Bott periodicity table of irreducible real Cl_{0,l} modules.
long long bott_dimension(int l) {
    static const long long base[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    long long n = base[l % 8];
    for (int i = 0; i < l / 8; ++i) n *= 16;
    return n;
}

}  // namespace

TEST_CASE("irreducible dimensions follow Bott periodicity") {
    for (int l = 1; l <= 16; ++l) CHECK(htype::irreducible_dimension(l) == bott_dimension(l));
    CHECK(htype::irreducible_dimension(3) == 4);
    CHECK(htype::irreducible_dimension(7) == 8);
    CHECK(htype::irreducible_dimension(9) == 32);
}

TEST_CASE("generators anticommute exactly in integer arithmetic") {
    for (int l = 1; l <= 9; ++l) {
        const htype::CliffordModule mod = htype::build_generators(l);
        REQUIRE(static_cast<int>(mod.generators.size()) == l);
        const int n = mod.n;
        CHECK(n == bott_dimension(l));
        const IntMatrix I = IntMatrix::Identity(n, n);
        for (int a = 0; a < l; ++a) {
            const IntMatrix& ja = mod.generators[a];
            CHECK((ja + ja.transpose()).cwiseAbs().maxCoeff() == 0);
            for (int b = 0; b < l; ++b) {
                const IntMatrix& jb = mod.generators[b];
                const IntMatrix expected = a == b ? IntMatrix(-2 * I) : IntMatrix::Zero(n, n);
                CHECK((ja * jb + jb * ja - expected).cwiseAbs().maxCoeff() == 0);
            }
        }
        const htype::CliffordDefects d = htype::check_clifford(mod);
        CHECK(d.anticommutation == 0);
        CHECK(d.skewness == 0);
        CHECK(d.orthogonality == 0);
    }
}

TEST_CASE("construction is deterministic") {
    const auto a = htype::build_generators(7);
    const auto b = htype::build_generators(7);
    for (int i = 0; i < 7; ++i) CHECK(a.generators[i] == b.generators[i]);
}

TEST_CASE("endomorphism spaces stack blocks with signs") {
    const htype::EndomorphismSpace s(3, 2, 1);
    CHECK(s.block_dim() == 4);
    CHECK(s.k() == 12);
    const IntMatrix J0 = s.basis_matrix(0);
    const IntMatrix j0 = s.module().generators[0];
    CHECK(J0.block(0, 0, 4, 4) == j0);
    CHECK(J0.block(4, 4, 4, 4) == j0);
    CHECK(J0.block(8, 8, 4, 4) == IntMatrix(-j0));
    CHECK(J0.block(0, 4, 4, 8).cwiseAbs().maxCoeff() == 0);

    Eigen::VectorXd Z(3);
    Z << 0.3, -1.2, 0.7;
    const Eigen::MatrixXd JZ = s.J(Z);
    CHECK((JZ * JZ + Z.squaredNorm() * Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("invalid block counts are rejected") {
    CHECK_THROWS(htype::EndomorphismSpace(3, 0, 0));
    CHECK_THROWS(htype::EndomorphismSpace(0, 1, 0));
    CHECK_THROWS(htype::build_generators(0));
}
