#include "htype/algebra.hpp"

#include "htype/errors.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>

namespace htype {

Algebra::Algebra(std::vector<Eigen::MatrixXd> J) : J_(std::move(J)) {
    if (J_.empty()) throw InvalidArgument("Algebra: need at least one endomorphism");
    k_ = static_cast<int>(J_.front().rows());
    for (std::size_t a = 0; a < J_.size(); ++a) {
        const auto& m = J_[a];
        if (m.rows() != k_ || m.cols() != k_) throw DimensionMismatch("Algebra: endomorphisms must be k x k");
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
            throw InvalidArgument("Algebra: endomorphism " + std::to_string(a) + " is not skew");
    }
    z_frame_ = Eigen::MatrixXd::Identity(l(), l());
    z_gram_ = Eigen::MatrixXd::Identity(l(), l());
}

Algebra Algebra::h_type(int l, int a, int b) { return h_type(EndomorphismSpace(l, a, b)); }

Algebra Algebra::h_type(const EndomorphismSpace& space) {
    Algebra alg(space.basis());
    alg.space_ = space;
    return alg;
}

Eigen::MatrixXd Algebra::J(const Eigen::VectorXd& Z) const {
    if (Z.size() != l()) throw DimensionMismatch("Algebra::J: Z has wrong length");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k_, k_);
    for (int a = 0; a < l(); ++a) out += Z(a) * J_[a];
    return out;
}

Eigen::VectorXd Algebra::bracket(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
    if (X.size() != k_ || Y.size() != k_) throw DimensionMismatch("bracket: X-vectors have wrong length");
    Eigen::VectorXd out(l());
    for (int a = 0; a < l(); ++a) out(a) = (J_[a] * X).dot(Y);
    return out;
}

Eigen::VectorXd Algebra::full_bracket(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const {
    if (U.size() != dim() || V.size() != dim()) throw DimensionMismatch("full_bracket: wrong length");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    out.tail(l()) = bracket(U.head(k_), V.head(k_));
    return out;
}

Algebra from_representation(const std::vector<Eigen::MatrixXd>& generators) {
    if (generators.empty()) throw InvalidArgument("from_representation: no generators");
    const int l = static_cast<int>(generators.size());
    const Eigen::Index k = generators.front().rows();
    for (int a = 0; a < l; ++a) {
        const auto& m = generators[a];
        if (m.rows() != k || m.cols() != k)
            throw DimensionMismatch("from_representation: generator " + std::to_string(a) + " is not k x k");
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff()))
            throw InvalidArgument("from_representation: generator " + std::to_string(a) + " is not skew");
    }
    Eigen::MatrixXd G(l, l);
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) G(a, b) = -(generators[a] * generators[b]).trace();

    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success || llt.matrixLLT().diagonal().minCoeff() < 1e-10)
        throw InvalidArgument("from_representation: generators are linearly dependent");

    // G = L L^T; the columns of L^{-T} are G-orthonormal.
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd F = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(l, l));

    std::vector<Eigen::MatrixXd> J(l, Eigen::MatrixXd::Zero(k, k));
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) J[a] += F(b, a) * generators[b];

    Algebra alg(std::move(J));
    alg.z_frame_ = F;
    alg.z_gram_ = G;
    return alg;
}

GroupElement group_multiply(const Algebra& alg, const GroupElement& p, const GroupElement& q) {
    if (p.X.size() != alg.k() || q.X.size() != alg.k() || p.Z.size() != alg.l() || q.Z.size() != alg.l())
        throw DimensionMismatch("group_multiply: element dimensions do not match the algebra");
    return {p.X + q.X, p.Z + q.Z + 0.5 * alg.bracket(p.X, q.X)};
}

GroupElement group_inverse(const GroupElement& p) { return {-p.X, -p.Z}; }

GroupElement group_identity(const Algebra& alg) {
    return {Eigen::VectorXd::Zero(alg.k()), Eigen::VectorXd::Zero(alg.l())};
}

HTypeCheck is_h_type(const Algebra& alg, int samples, std::uint64_t seed, double tol) {
    if (samples < 1) throw InvalidArgument("is_h_type: samples must be >= 1");
    const int k = alg.k();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(k, k);
    double worst = 0.0;
    for (int a = 0; a < alg.l(); ++a) {
        worst = std::max(worst, (alg.J(a) * alg.J(a) + I).cwiseAbs().maxCoeff());
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd Z(alg.l());
        for (int a = 0; a < alg.l(); ++a) Z(a) = normal(rng);
        const Eigen::MatrixXd JZ = alg.J(Z);
        worst = std::max(worst, (JZ * JZ + Z.squaredNorm() * I).cwiseAbs().maxCoeff());
    }
    return {worst < tol, worst};
}

std::vector<Eigen::MatrixXd> su3_generators() {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    std::vector<Eigen::Matrix3cd> lambda(8, Eigen::Matrix3cd::Zero());
    lambda[0](0, 1) = lambda[0](1, 0) = 1.0;
    lambda[1](0, 1) = -i;
    lambda[1](1, 0) = i;
    lambda[2](0, 0) = 1.0;
    lambda[2](1, 1) = -1.0;
    lambda[3](0, 2) = lambda[3](2, 0) = 1.0;
    lambda[4](0, 2) = -i;
    lambda[4](2, 0) = i;
    lambda[5](1, 2) = lambda[5](2, 1) = 1.0;
    lambda[6](1, 2) = -i;
    lambda[6](2, 1) = i;
    lambda[7](0, 0) = lambda[7](1, 1) = 1.0 / std::sqrt(3.0);
    lambda[7](2, 2) = -2.0 / std::sqrt(3.0);

    std::vector<Eigen::MatrixXd> out;
    for (const auto& lam : lambda) {
        const Eigen::Matrix3cd A = i * lam;  // anti-Hermitian
        Eigen::MatrixXd R(6, 6);
        R << A.real(), -A.imag(), A.imag(), A.real();
        out.push_back(R);
    }
    return out;
}

FrameMatrix frame_matrix(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                         const Eigen::VectorXd& Zu) {
    const int k = alg.k();
    if (k % 2 != 0) throw DimensionMismatch("frame_matrix: k must be even");
    if (B.rows() != k || B.cols() != k / 2) throw DimensionMismatch("frame_matrix: B must be k x k/2");
    if (Q.rows() != k || Q.cols() != k) throw DimensionMismatch("frame_matrix: Q must be k x k");
    if (std::abs(Zu.norm() - 1.0) > 1e-12) throw InvalidArgument("frame_matrix: Z_u must be a unit vector");

    Eigen::MatrixXd BR(k, k);
    BR.leftCols(k / 2) = B;
    BR.rightCols(k / 2) = alg.J(Zu) * B;
    FrameMatrix out;
    // B_i = sum_j A_ij Q_j with Q orthonormal.
    out.A = BR.transpose() * Q;
    out.det = out.A.determinant();
    out.singular = std::abs(out.det) < kSingularDetThreshold;
    return out;
}

double charger(const Eigen::MatrixXd& A) { return A.trace() - static_cast<double>(A.rows()) / 2.0; }

double volumer(const Eigen::MatrixXd& A) { return A.determinant(); }

Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& B, const Eigen::MatrixXd& mix, bool negative) {
    const Eigen::Index k = B.rows();
    const Eigen::Index m = B.cols();
    if (mix.rows() != k - m || mix.cols() != k - m) throw DimensionMismatch("complete_basis: mix has wrong size");
    // Gram-Schmidt of the standard basis against span(B).
    Eigen::MatrixXd C(k, k - m);
    Eigen::Index filled = 0;
    for (Eigen::Index e = 0; e < k && filled < k - m; ++e) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(k, e);
        for (int pass = 0; pass < 2; ++pass) {
            v -= B * (B.transpose() * v);
            if (filled > 0) v -= C.leftCols(filled) * (C.leftCols(filled).transpose() * v);
        }
        const double n = v.norm();
        if (n > 1e-8) C.col(filled++) = v / n;
    }
    if (filled != k - m) throw InvalidArgument("complete_basis: B is rank deficient");
    Eigen::MatrixXd Q(k, k);
    Q.leftCols(m) = B;
    Q.rightCols(k - m) = C * mix;
    const bool positive = Q.determinant() > 0.0;
    if (positive == negative) Q.col(k - 1) *= -1.0;
    return Q;
}

double isomorphism_defect(const Algebra& left, const Algebra& right, const Eigen::MatrixXd& A,
                          const Eigen::MatrixXd& Bz) {
    if (left.k() != right.k() || left.l() != right.l()) throw DimensionMismatch("isomorphism_defect: shapes differ");
    const Eigen::MatrixXd Ainv = A.inverse();
    double worst = 0.0;
    for (int a = 0; a < left.l(); ++a) {
        const Eigen::VectorXd Z = Eigen::VectorXd::Unit(left.l(), a);
        const Eigen::MatrixXd lhs = right.J(Bz * Z);
        const Eigen::MatrixXd rhs = A * left.J(Z) * Ainv;
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

IsomorphismWitness swap_witness(int l, int a, int b) {
    const int n = static_cast<int>(irreducible_dimension(l));
    const int k = (a + b) * n;
    IsomorphismWitness w;
    w.A = Eigen::MatrixXd::Zero(k, k);
    // Block i of H^{(a,b)} goes to block (i + b) mod (a + b) of H^{(b,a)}.
    for (int blk = 0; blk < a + b; ++blk) {
        const int target = (blk + b) % (a + b);
        w.A.block(target * n, blk * n, n, n) = Eigen::MatrixXd::Identity(n, n);
    }
    w.Bz = -Eigen::MatrixXd::Identity(l, l);
    return w;
}

}  // namespace htype
