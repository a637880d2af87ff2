#include "htype/geometry.hpp"

#include "htype/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace htype {

namespace {

struct Split {
    Eigen::VectorXd X;
    Eigen::VectorXd Z;
};

Split split(const Algebra& alg, const Eigen::VectorXd& U) {
    if (U.size() != alg.dim()) throw DimensionMismatch("expected a vector of length k + l");
    return {U.head(alg.k()), U.tail(alg.l())};
}

Eigen::VectorXd join(const Eigen::VectorXd& X, const Eigen::VectorXd& Z) {
    Eigen::VectorXd out(X.size() + Z.size());
    out << X, Z;
    return out;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

LieMetricAlgebra::LieMetricAlgebra(std::vector<Eigen::MatrixXd> ad, Eigen::MatrixXd G)
    : ad_(std::move(ad)), G_(std::move(G)) {
    const int n = static_cast<int>(G_.rows());
    if (G_.cols() != n || static_cast<int>(ad_.size()) != n) throw DimensionMismatch("LieMetricAlgebra: bad sizes");
    for (const auto& a : ad_)
        if (a.rows() != n || a.cols() != n) throw DimensionMismatch("LieMetricAlgebra: bad ad block");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(G_);
    if (!lu.isInvertible()) throw InvalidArgument("LieMetricAlgebra: degenerate metric");
    Ginv_ = lu.inverse();
    conn_.assign(n, Eigen::MatrixXd::Zero(n, n));
    auto br = [&](int a, int b) -> Eigen::VectorXd { return ad_[a].col(b); };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXd rhs(n);
            for (int c = 0; c < n; ++c)
                rhs(c) = 0.5 * (br(a, b).dot(G_.col(c)) - br(b, c).dot(G_.col(a)) + br(c, a).dot(G_.col(b)));
            conn_[a].col(b) = Ginv_ * rhs;
        }
    }
}

Eigen::VectorXd LieMetricAlgebra::bracket(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    for (int a = 0; a < dim(); ++a)
        if (U(a) != 0.0) out += U(a) * (ad_[a] * V);
    return out;
}

Eigen::VectorXd LieMetricAlgebra::connection(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    for (int a = 0; a < dim(); ++a)
        if (U(a) != 0.0) out += U(a) * (conn_[a] * V);
    return out;
}

Eigen::VectorXd LieMetricAlgebra::riemann(const Eigen::VectorXd& U, const Eigen::VectorXd& V,
                                          const Eigen::VectorXd& W) const {
    return connection(U, connection(V, W)) - connection(V, connection(U, W)) - connection(bracket(U, V), W);
}

Eigen::MatrixXd LieMetricAlgebra::ricci() const {
    const int n = dim();
    Eigen::MatrixXd Ric = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a) Ric(b, c) += riemann(I.col(a), I.col(b), I.col(c))(a);
    return Ric;
}

double LieMetricAlgebra::scalar() const { return (Ginv_ * ricci()).trace(); }

LieMetricAlgebra nilpotent_structure(const Algebra& alg) {
    const int k = alg.k();
    const int n = alg.dim();
    std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < alg.l(); ++a) ad[i](k + a, j) = alg.J(a)(j, i);
    return LieMetricAlgebra(std::move(ad), Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd invariant_frame(const Algebra& alg, const Eigen::VectorXd& X) {
    if (X.size() != alg.k()) throw DimensionMismatch("invariant_frame: X has wrong length");
    const int k = alg.k();
    Eigen::MatrixXd F = Eigen::MatrixXd::Identity(alg.dim(), alg.dim());
    for (int a = 0; a < alg.l(); ++a) {
        const Eigen::VectorXd JX = alg.J(a) * X;
        for (int i = 0; i < k; ++i) F(k + a, i) = 0.5 * JX(i);
    }
    return F;
}

Eigen::VectorXd connection(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V) {
    const Split u = split(alg, U);
    const Split v = split(alg, V);
    const Eigen::VectorXd X = -0.5 * alg.J(v.Z) * u.X - 0.5 * alg.J(u.Z) * v.X;
    return join(X, 0.5 * alg.bracket(u.X, v.X));
}

Eigen::VectorXd riemann(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V,
                        const Eigen::VectorXd& W) {
    const Split u = split(alg, U);
    const Split v = split(alg, V);
    const Split w = split(alg, W);
    auto JZ = [&](const Eigen::VectorXd& Z) { return alg.J(Z); };
    auto br = [&](const Eigen::VectorXd& A, const Eigen::VectorXd& B) { return alg.bracket(A, B); };

    // R(X,Y)X*
    auto rxxx = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const Eigen::VectorXd& Xs) {
        return Eigen::VectorXd(0.5 * JZ(br(X, Y)) * Xs - 0.25 * JZ(br(Y, Xs)) * X + 0.25 * JZ(br(X, Xs)) * Y);
    };
    // R(X,Y)Z
    auto rxxz = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
        return Eigen::VectorXd(-0.25 * br(X, JZ(Z) * Y) + 0.25 * br(Y, JZ(Z) * X));
    };
    // R(X,Z)Y
    auto rxzx = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Z, const Eigen::VectorXd& Y) {
        return Eigen::VectorXd(-0.25 * br(X, JZ(Z) * Y));
    };
    // R(X,Z)Z*
    auto rxzz = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Z, const Eigen::VectorXd& Zs) {
        return Eigen::VectorXd(-0.25 * JZ(Z) * JZ(Zs) * X);
    };
    // R(Z,Z*)X
    auto rzzx = [&](const Eigen::VectorXd& Z, const Eigen::VectorXd& Zs, const Eigen::VectorXd& X) {
        return Eigen::VectorXd(-0.25 * JZ(Zs) * JZ(Z) * X + 0.25 * JZ(Z) * JZ(Zs) * X);
    };

    Eigen::VectorXd outX = rxxx(u.X, v.X, w.X) + rxzz(u.X, v.Z, w.Z) - rxzz(v.X, u.Z, w.Z) + rzzx(u.Z, v.Z, w.X);
    Eigen::VectorXd outZ = rxxz(u.X, v.X, w.Z) + rxzx(u.X, v.Z, w.X) - rxzx(v.X, u.Z, w.X);
    return join(outX, outZ);
}

double ricci(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V) {
    const Split u = split(alg, U);
    const Split v = split(alg, V);
    double xx = 0.0;
    for (int a = 0; a < alg.l(); ++a) xx += (alg.J(a) * u.X).dot(alg.J(a) * v.X);
    const double zz = (alg.J(u.Z).transpose() * alg.J(v.Z)).trace();
    return -0.5 * xx + 0.25 * zz;
}

double ricci_frame_trace(const Algebra& alg, const Eigen::VectorXd& V, const Eigen::VectorXd& W) {
    const int n = alg.dim();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += riemann(alg, I.col(a), V, W)(a);
    return s;
}

double scalar_curvature(const Algebra& alg) {
    const int n = alg.dim();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += ricci(alg, I.col(a), I.col(a));
    return s;
}

bool CurvatureReport::ok(double tol) const {
    return std::max({pair_antisymmetry, pair_symmetry, bianchi, ricci_defect, connection_defect, riemann_defect,
                     torsion, metric_compatibility}) < tol;
}

CurvatureReport curvature_report(const Algebra& alg, int samples, std::uint64_t seed) {
    const int n = alg.dim();
    const LieMetricAlgebra engine = nilpotent_structure(alg);
    CurvatureReport rep;
    rep.ricci.resize(n, n);
    rep.ricci_trace.resize(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            rep.ricci(a, b) = ricci(alg, I.col(a), I.col(b));
            rep.ricci_trace(a, b) = ricci_frame_trace(alg, I.col(a), I.col(b));
        }
    rep.ricci_defect = (rep.ricci - rep.ricci_trace).cwiseAbs().maxCoeff();
    rep.scalar = rep.ricci.trace();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    auto rnd = [&] {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = N01(rng);
        return v;
    };
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXd U = rnd(), V = rnd(), W = rnd(), S = rnd();
        const Eigen::VectorXd RUVW = riemann(alg, U, V, W);
        rep.pair_antisymmetry = std::max(rep.pair_antisymmetry, std::abs(RUVW.dot(S) + riemann(alg, V, U, W).dot(S)));
        rep.pair_symmetry = std::max(rep.pair_symmetry, std::abs(RUVW.dot(S) - riemann(alg, W, S, U).dot(V)));
        rep.bianchi = std::max(rep.bianchi, max_abs(RUVW + riemann(alg, V, W, U) + riemann(alg, W, U, V)));
        rep.riemann_defect = std::max(rep.riemann_defect, max_abs(RUVW - engine.riemann(U, V, W)));
        const Eigen::VectorXd nUV = connection(alg, U, V);
        rep.connection_defect = std::max(rep.connection_defect, max_abs(nUV - engine.connection(U, V)));
        rep.torsion = std::max(rep.torsion, max_abs(nUV - connection(alg, V, U) - alg.full_bracket(U, V)));
        // Invariant fields have constant inner products, so d<V,W>(U) = 0.
        rep.metric_compatibility = std::max(
            rep.metric_compatibility, std::abs(connection(alg, U, V).dot(W) + V.dot(connection(alg, U, W))));
    }
    return rep;
}

MetricComponents metric_components(const Algebra& alg, const Eigen::VectorXd& X) {
    if (X.size() != alg.k()) throw DimensionMismatch("metric_components: X has wrong length");
    const int k = alg.k();
    const int l = alg.l();
    Eigen::MatrixXd JX(k, l);
    for (int a = 0; a < l; ++a) JX.col(a) = alg.J(a) * X;
    MetricComponents m;
    m.g = Eigen::MatrixXd::Identity(k + l, k + l);
    m.ginv = Eigen::MatrixXd::Identity(k + l, k + l);
    m.g.topLeftCorner(k, k) += 0.25 * JX * JX.transpose();
    m.g.topRightCorner(k, l) = -0.5 * JX;
    m.g.bottomLeftCorner(l, k) = -0.5 * JX.transpose();
    m.ginv.topRightCorner(k, l) = 0.5 * JX;
    m.ginv.bottomLeftCorner(l, k) = 0.5 * JX.transpose();
    m.ginv.bottomRightCorner(l, l) += 0.25 * JX.transpose() * JX;
    return m;
}

LaplacianParts laplacian_parts(const Algebra& alg, const Jet& f, const Eigen::VectorXd& X) {
    const int k = alg.k();
    const int l = alg.l();
    if (f.dim() < k + l) throw DimensionMismatch("laplacian_parts: jet has too few variables");
    LaplacianParts p;
    for (int i = 0; i < k; ++i) p.delta_x += f.d2(i, i);
    for (int a = 0; a < l; ++a) p.delta_z += f.d2(k + a, k + a);
    std::vector<Eigen::VectorXd> JX(l);
    for (int a = 0; a < l; ++a) JX[a] = alg.J(a) * X;
    for (int a = 0; a < l; ++a)
        for (int i = 0; i < k; ++i) p.spin += JX[a](i) * f.d2(k + a, i);
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) p.cross += 0.25 * JX[a].dot(JX[b]) * f.d2(k + a, k + b);
    return p;
}

Jet::Scalar laplacian(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z) {
    return laplacian_parts(alg, evaluate_jet(f, join(X, Z)), X).total();
}

Jet::Scalar laplacian_htype(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X,
                            const Eigen::VectorXd& Z) {
    const LaplacianParts p = laplacian_parts(alg, evaluate_jet(f, join(X, Z)), X);
    return p.delta_x + (1.0 + 0.25 * X.squaredNorm()) * p.delta_z + p.spin;
}

Jet::Scalar laplace_beltrami(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X,
                             const Eigen::VectorXd& Z) {
    const int k = alg.k();
    const int n = alg.dim();
    const Jet J = evaluate_jet(f, join(X, Z));
    const MetricComponents m = metric_components(alg, X);
    // First-order coefficients b^b = d_a g^{ab} + g^{ab} d_a log sqrt(det g); the metric depends on x only.
    const double h = 1e-5;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd xp = X, xm = X;
        xp(i) += h;
        xm(i) -= h;
        const MetricComponents mp = metric_components(alg, xp);
        const MetricComponents mm = metric_components(alg, xm);
        const Eigen::VectorXd dginv_row = (mp.ginv.row(i) - mm.ginv.row(i)).transpose() / (2 * h);
        const double dlogsqrt = 0.25 * (std::log(mp.g.determinant()) - std::log(mm.g.determinant())) / h;
        b += dginv_row + m.ginv.col(i) * dlogsqrt;
    }
    return second_order_apply(J, m.ginv, b);
}

void SolvableExtension::validate() const {
    if (!(q > 0.0)) throw InvalidArgument("SolvableExtension: q must be positive");
    if (time_signature != 1 && time_signature != -1) throw InvalidArgument("SolvableExtension: signature must be +-1");
    if (orientation != 1 && orientation != -1) throw InvalidArgument("SolvableExtension: orientation must be +-1");
}

LieMetricAlgebra solvable_structure(const SolvableExtension& ext) {
    ext.validate();
    const Algebra& alg = ext.base;
    const int k = alg.k();
    const int l = alg.l();
    const int n = k + l + 1;
    const int t = k + l;
    std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < l; ++a) ad[i](k + a, j) = alg.J(a)(j, i);
    const double o = ext.orientation;
    for (int i = 0; i < k; ++i) {
        ad[t](i, i) = o * ext.q / 2.0;
        ad[i](i, t) = -o * ext.q / 2.0;
    }
    for (int a = 0; a < l; ++a) {
        ad[t](k + a, k + a) = o * ext.q;
        ad[k + a](k + a, t) = -o * ext.q;
    }
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
    G(t, t) = ext.time_signature;
    return LieMetricAlgebra(std::move(ad), std::move(G));
}

Eigen::VectorXd solvable_connection(const SolvableExtension& ext, const Eigen::VectorXd& U,
                                    const Eigen::VectorXd& V) {
    ext.validate();
    const Algebra& alg = ext.base;
    const int k = alg.k();
    const int l = alg.l();
    if (U.size() != k + l + 1 || V.size() != k + l + 1) throw DimensionMismatch("solvable_connection: bad length");
    const double q = ext.q;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(k + l + 1);
    out.head(k + l) = connection(alg, U.head(k + l), V.head(k + l));
    out(k + l) = -q * (0.5 * U.head(k).dot(V.head(k)) + U.segment(k, l).dot(V.segment(k, l)));
    const double a2 = V(k + l);
    out.head(k) += a2 * (q / 2.0) * U.head(k);
    out.segment(k, l) += a2 * q * U.segment(k, l);
    return out;
}

double solvable_ricci(const SolvableExtension& ext, const Eigen::VectorXd& U, const Eigen::VectorXd& V) {
    ext.validate();
    const Algebra& alg = ext.base;
    const int k = alg.k();
    const int l = alg.l();
    if (U.size() != k + l + 1 || V.size() != k + l + 1) throw DimensionMismatch("solvable_ricci: bad length");
    const double q2 = ext.q * ext.q;
    return ricci(alg, U.head(k + l), V.head(k + l)) - q2 * (k / 4.0 + l / 2.0) * U.head(k).dot(V.head(k)) -
           q2 * (k / 2.0 + l) * U.segment(k, l).dot(V.segment(k, l)) - q2 * (k / 4.0 + l) * U(k + l) * V(k + l);
}

double solvable_scalar(const SolvableExtension& ext) {
    const int n = ext.dim();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += solvable_ricci(ext, I.col(a), I.col(a));
    return s;
}

double einstein_tt_closed(int k, int l, double tt) { return (k / 4.0 + l) * (k + l + 1.5) * tt; }

Eigen::MatrixXd solvable_metric(const SolvableExtension& ext, const Eigen::VectorXd& X, double t) {
    ext.validate();
    if (!(t > 0.0)) throw InvalidArgument("solvable_metric: t must be positive");
    const int k = ext.k();
    const int l = ext.l();
    // Coframe rows: t^{-1/2} dx, t^{-1} theta, dt / (q t).
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k + l + 1, k + l + 1);
    C.topLeftCorner(k, k) = Eigen::MatrixXd::Identity(k, k) / std::sqrt(t);
    for (int a = 0; a < l; ++a) {
        const Eigen::VectorXd JX = ext.base.J(a) * X;
        C.block(k + a, 0, 1, k) = -0.5 * JX.transpose() / t;
        C(k + a, k + a) = 1.0 / t;
    }
    C(k + l, k + l) = 1.0 / (ext.q * t);
    Eigen::VectorXd sig = Eigen::VectorXd::Ones(k + l + 1);
    sig(k + l) = ext.time_signature;
    return C.transpose() * sig.asDiagonal() * C;
}

Eigen::MatrixXd solvable_frame(const SolvableExtension& ext, const Eigen::VectorXd& X, double t) {
    ext.validate();
    const int k = ext.k();
    const int l = ext.l();
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(k + l + 1, k + l + 1);
    const Eigen::MatrixXd N = invariant_frame(ext.base, X);
    F.topLeftCorner(k + l, k) = std::sqrt(t) * N.leftCols(k);
    F.block(0, k, k + l, l) = t * N.rightCols(l);
    F(k + l, k + l) = ext.q * t;
    return F;
}

double hubble_scaling(CurveType curve, double length, double tau, double q) {
    if (length < 0.0) throw InvalidArgument("hubble_scaling: length must be >= 0");
    return curve == CurveType::X ? length * std::exp(q * tau / 2.0) : length * std::exp(q * tau);
}

}  // namespace htype
