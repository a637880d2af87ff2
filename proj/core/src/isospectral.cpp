#include "htype/isospectral.hpp"

#include "htype/errors.hpp"
#include "htype/geometry.hpp"
#include "htype/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace htype {

namespace {

void require_same_shape(const Algebra& a, const Algebra& b) {
    if (a.k() != b.k() || a.l() != b.l()) throw DimensionMismatch("intertwine: algebras differ in (k, l)");
}

/// Orthonormal basis whose first columns span S; completed by Gram-Schmidt over e_1..e_k.
Eigen::MatrixXd adapted_basis(const Eigen::MatrixXd& S) {
    const Eigen::Index k = S.rows();
    Eigen::MatrixXd B(k, k);
    Eigen::Index filled = 0;
    auto push = [&](Eigen::VectorXd v) {
        for (Eigen::Index j = 0; j < filled; ++j) v -= B.col(j).dot(v) * B.col(j);
        for (Eigen::Index j = 0; j < filled; ++j) v -= B.col(j).dot(v) * B.col(j);
        const double n = v.norm();
        if (n < 1e-10) return false;
        B.col(filled++) = v / n;
        return true;
    };
    for (Eigen::Index c = 0; c < S.cols(); ++c)
        if (!push(S.col(c))) throw NumericalFailure("point_transformation: degenerate span", 0.0);
    for (Eigen::Index e = 0; e < k && filled < k; ++e) push(Eigen::VectorXd::Unit(k, e));
    return B;
}

Eigen::MatrixXd pole_span(const Algebra& alg, const Eigen::VectorXd& Q) {
    Eigen::MatrixXd S(alg.k(), alg.l() + 1);
    S.col(0) = Q;
    for (int a = 0; a < alg.l(); ++a) S.col(a + 1) = alg.J(a) * Q;
    return S;
}

}  // namespace

TwistedFunction intertwine(const IntertwineSpec& spec, const TwistedFunction& tf) {
    tf.validate();
    TwistedFunction out = tf;
    if (spec.kind == IntertwineSpec::Kind::PoleChange) {
        if (tf.poles.cols() != 1) throw InvalidArgument("intertwine: pole change needs a one-pole function");
        if (spec.target_pole.size() != tf.alg.k()) throw DimensionMismatch("intertwine: target pole has wrong size");
        const double n0 = tf.poles.col(0).norm();
        if (std::abs(spec.target_pole.norm() - n0) > 1e-12 * std::max(1.0, n0))
            throw InvalidArgument("intertwine: |Q| and |Q~| differ");
        out.poles.col(0) = spec.target_pole;
    } else {
        require_same_shape(tf.alg, spec.target_algebra);
        out.alg = spec.target_algebra;
    }
    return out;
}

BoundaryFunction intertwine(const IntertwineSpec& spec, const BoundaryFunction& bf) {
    BoundaryFunction out = bf;
    out.tf = intertwine(spec, bf.tf);
    return out;
}

Algebra flip_block(const Algebra& alg, int block) {
    const auto space = alg.space();
    if (!space) throw InvalidArgument("flip_block: algebra was not built from Clifford blocks");
    const int n = space->block_dim();
    if (block < 0 || block >= space->a + space->b) throw InvalidArgument("flip_block: block index out of range");
    std::vector<Eigen::MatrixXd> J = alg.J_basis();
    for (auto& M : J) M.block(block * n, block * n, n, n) *= -1.0;
    return Algebra(J);
}

PointTransformation point_transformation(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& Qt) {
    if (Q.size() != alg.k() || Qt.size() != alg.k()) throw DimensionMismatch("point_transformation: pole size");
    if (std::abs(Q.norm() - Qt.norm()) > 1e-12 * std::max(1.0, Q.norm()))
        throw InvalidArgument("point_transformation: |Q| and |Q~| differ");
    if (Q.norm() == 0.0) throw InvalidArgument("point_transformation: zero pole");
    const Eigen::MatrixXd BQ = adapted_basis(pole_span(alg, Q));
    const Eigen::MatrixXd BQt = adapted_basis(pole_span(alg, Qt));
    PointTransformation out;
    out.O = BQ * BQt.transpose();
    out.orthogonality =
        (out.O.transpose() * out.O - Eigen::MatrixXd::Identity(alg.k(), alg.k())).cwiseAbs().maxCoeff();
    out.span_defect = (out.O * Qt - Q).norm();
    for (int a = 0; a < alg.l(); ++a)
        out.span_defect = std::max(out.span_defect, (out.O * alg.J(a) * Qt - alg.J(a) * Q).norm());
    return out;
}

std::string record_label(const SpectrumRecord& rec) {
    std::ostringstream os;
    if (rec.group) os << "H^(" << rec.group->a << "," << rec.group->b << ")_" << rec.group->l << " ";
    os << "k=" << rec.k << " n=" << rec.n << " m=" << rec.m << " mu=" << rec.mu << " bc=" << rec.bc;
    return os.str();
}

SpectraComparison spectra_compare(const SpectrumRecord& left, const SpectrumRecord& right, double tol) {
    if (!(tol >= 0.0)) throw InvalidArgument("spectra_compare: tol must be >= 0");
    SpectraComparison out;
    out.left = record_label(left);
    out.right = record_label(right);
    out.tol = tol;
    auto sorted = [](std::vector<EigenEntry> v) {
        std::stable_sort(v.begin(), v.end(), [](const EigenEntry& a, const EigenEntry& b) { return a.value > b.value; });
        return v;
    };
    const auto L = sorted(left.eigenvalues);
    const auto R = sorted(right.eigenvalues);
    out.length_mismatch = L.size() != R.size();
    const std::size_t n = std::min(L.size(), R.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool ok = std::abs(L[i].value - R[i].value) <= tol * (1.0 + std::abs(L[i].value)) &&
                        L[i].multiplicity == R[i].multiplicity;
        if (ok) {
            ++out.matched;
        } else {
            out.mismatches.push_back(
                {static_cast<int>(i), L[i].value, R[i].value, L[i].multiplicity, R[i].multiplicity});
        }
    }
    return out;
}

ReducedParameters reduce_pole(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, double mu,
                              std::uint64_t seed) {
    if (!(mu > 0.0)) throw InvalidArgument("reduce_pole: mu must be positive");
    ReducedParameters r;
    r.k = alg.k();
    Eigen::VectorXd u = Eigen::VectorXd::Unit(alg.l(), 0);
    const Eigen::VectorXd K = 2.0 * mu * u;
    r.mu = K.norm() / 2.0;
    const DkCheck dk = dk_eigencheck(alg, Q, K, p, q, 4, seed);
    r.dk_residual = dk.residual;
    r.m = static_cast<int>(std::lround(dk.eigenvalue.imag() / (kSigma * K.norm())));
    if (p == q) r.m = 0;
    const ComplexPolynomial P = theta_polynomial(alg, Q, p, q, u);
    const ComplexPolynomial H = alg.k() >= 2 && p + q > 0 ? harmonic_projection(P) : P;
    r.n = H.degree();
    r.harmonic_defect = H.laplacian().max_abs_coeff();
    return r;
}

SpectrumRecord reduced_spectrum(const Algebra& alg, int p, int q, double mu, double R, const BoundaryCondition& bc,
                                int count, const CollocationOptions& options) {
    RadialGLZOperator op(alg.k(), p + q, p - q, mu);
    SpectrumRecord rec = compact_spectrum(op, R, bc, count, options);
    if (const auto space = alg.space()) rec.group = SpectrumRecord::Group{space->l, space->a, space->b};
    const int mult = static_cast<int>(harmonic_space_dimension(alg.k(), p, q));
    for (auto& e : rec.eigenvalues) e.multiplicity = mult;
    return rec;
}

IsotropySweep isotropy_sweep(const Algebra& alg, const std::vector<Eigen::VectorXd>& poles,
                             const std::vector<std::pair<int, int>>& strata, double mu, double R,
                             const BoundaryCondition& bc, int count, double tol) {
    if (poles.empty()) throw InvalidArgument("isotropy_sweep: no poles");
    for (const auto& Q : poles)
        if (std::abs(Q.norm() - 1.0) > 1e-12) throw InvalidArgument("isotropy_sweep: poles must be unit vectors");
    IsotropySweep out;
    out.consistent = true;
    const std::size_t ns = strata.size();
    for (const auto& Q : poles) {
        for (const auto& [p, q] : strata) {
            const ReducedParameters r = reduce_pole(alg, Q, p, q, mu);
            out.parameters.push_back(r);
            RadialGLZOperator op(r.k, r.n, r.m, r.mu);
            SpectrumRecord rec = compact_spectrum(op, R, bc, count);
            if (const auto space = alg.space()) rec.group = SpectrumRecord::Group{space->l, space->a, space->b};
            out.spectra.push_back(std::move(rec));
        }
    }
    for (std::size_t i = 1; i < poles.size(); ++i)
        for (std::size_t s = 0; s < ns; ++s) {
            const std::size_t a = s;
            const std::size_t b = i * ns + s;
            if (!(out.parameters[a] == out.parameters[b])) out.consistent = false;
            out.comparisons.push_back(spectra_compare(out.spectra[a], out.spectra[b], tol));
            if (!out.comparisons.back().isospectral()) out.consistent = false;
        }
    return out;
}

IntertwineCheck intertwine_laplacian_check(const TwistedFunction& tf, const Eigen::VectorXd& Qt, int samples,
                                           std::uint64_t seed) {
    if (tf.poles.cols() != 1) throw InvalidArgument("intertwine_laplacian_check: one-pole function expected");
    const Algebra& alg = tf.alg;
    IntertwineSpec spec;
    spec.target_pole = Qt;
    const TwistedFunction moved = intertwine(spec, tf);
    const PointTransformation pt = point_transformation(alg, tf.poles.col(0), Qt);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    IntertwineCheck out;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd X(alg.k()), Z(alg.l());
        for (int i = 0; i < alg.k(); ++i) X(i) = 0.6 * N01(rng);
        for (int a = 0; a < alg.l(); ++a) Z(a) = 0.6 * N01(rng);
        const Eigen::VectorXd OX = pt.O * X;
        const Jet a = twisted_transform_jet(moved, X, Z);
        const Jet b = twisted_transform_jet(tf, OX, Z);
        const auto da = laplacian_parts(alg, a, X).total();
        const auto db = laplacian_parts(alg, b, OX).total();
        out.residual = std::max({out.residual, std::abs(da - db), std::abs(a.value() - b.value())});
        out.scale = std::max(out.scale, std::abs(da));
    }
    return out;
}

}  // namespace htype
