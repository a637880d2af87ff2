#pragma once

#include "htype/algebra.hpp"
#include "htype/jet.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace htype {

/// Left-invariant metric on a Lie algebra given by structure constants.
/// Levi-Civita connection from the Koszul formula; signature is whatever G has.
class LieMetricAlgebra {
public:
    /// ad[a](c, b) = coefficient of e_c in [e_a, e_b]; G is the Gram matrix of the basis.
    LieMetricAlgebra(std::vector<Eigen::MatrixXd> ad, Eigen::MatrixXd G);

    int dim() const { return static_cast<int>(G_.rows()); }
    const Eigen::MatrixXd& gram() const { return G_; }
    double inner(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const { return U.dot(G_ * V); }

    Eigen::VectorXd bracket(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const;
    Eigen::VectorXd connection(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const;
    /// R(U,V)W = nabla_U nabla_V W - nabla_V nabla_U W - nabla_[U,V] W.
    Eigen::VectorXd riemann(const Eigen::VectorXd& U, const Eigen::VectorXd& V, const Eigen::VectorXd& W) const;
    /// Ric(V,W) = trace of U -> R(U,V)W, as a matrix on the basis.
    Eigen::MatrixXd ricci() const;
    double scalar() const;

private:
    std::vector<Eigen::MatrixXd> ad_;
    Eigen::MatrixXd G_;
    Eigen::MatrixXd Ginv_;
    // conn_[a](:, b) = nabla_{e_a} e_b
    std::vector<Eigen::MatrixXd> conn_;
};

/// Structure constants of n = X (+) Z in the orthonormal basis (E_i, e_alpha).
LieMetricAlgebra nilpotent_structure(const Algebra& alg);

/// Columns are X_i = d_i + 1/2 sum_alpha <J_alpha X, E_i> d_alpha and Z_alpha = d_alpha
/// in the coordinate basis (d_x, d_z) at the point X.
Eigen::MatrixXd invariant_frame(const Algebra& alg, const Eigen::VectorXd& X);

/// Closed-form connection on invariant fields; U, V are (X, Z) of length k + l.
Eigen::VectorXd connection(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V);

/// Closed-form curvature tensor R(U,V)W, multilinear in (X, Z) parts.
Eigen::VectorXd riemann(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V,
                        const Eigen::VectorXd& W);

/// Closed-form Ricci: -1/2 sum_a <J_a X, J_a X*> + 1/4 Tr(J_Z^T J_Z*); the mixed part vanishes.
double ricci(const Algebra& alg, const Eigen::VectorXd& U, const Eigen::VectorXd& V);

/// sum_A <R(E_A, V) W, E_A> over the orthonormal basis using the closed Riemann forms.
double ricci_frame_trace(const Algebra& alg, const Eigen::VectorXd& V, const Eigen::VectorXd& W);

double scalar_curvature(const Algebra& alg);

struct CurvatureReport {
    Eigen::MatrixXd ricci;           // closed form on the basis
    Eigen::MatrixXd ricci_trace;     // frame trace of the closed Riemann forms
    double scalar = 0.0;
    double pair_antisymmetry = 0.0;  // <R(U,V)W,S> + <R(V,U)W,S>
    double pair_symmetry = 0.0;      // <R(U,V)W,S> - <R(W,S)U,V>
    double bianchi = 0.0;
    double ricci_defect = 0.0;       // closed Ricci vs frame trace
    double connection_defect = 0.0;  // closed connection vs Koszul engine
    double riemann_defect = 0.0;     // closed Riemann vs Koszul engine
    double torsion = 0.0;            // nabla_U V - nabla_V U - [U,V]
    double metric_compatibility = 0.0;
    bool ok(double tol = 1e-12) const;
};

/// Residuals on `samples` random invariant quadruples.
CurvatureReport curvature_report(const Algebra& alg, int samples = 20, std::uint64_t seed = 1);

/// Coordinate metric on (x, z) and its inverse from the closed formulas.
struct MetricComponents {
    Eigen::MatrixXd g;
    Eigen::MatrixXd ginv;
};
MetricComponents metric_components(const Algebra& alg, const Eigen::VectorXd& X);

/// Pieces of the Laplacian applied to a jet in the coordinates (x, z):
/// Delta = Delta_X + Delta_Z + sum_a d_a D_a + 1/4 sum_ab <J_a X, J_b X> d_ab,
/// with D_a = sum_i (J_a X)_i d_i.
struct LaplacianParts {
    Jet::Scalar delta_x = 0.0;
    Jet::Scalar delta_z = 0.0;
    Jet::Scalar spin = 0.0;   // sum_a d_a D_a
    Jet::Scalar cross = 0.0;  // 1/4 sum_ab <J_a X, J_b X> d_ab
    Jet::Scalar total() const { return delta_x + delta_z + spin + cross; }
};
LaplacianParts laplacian_parts(const Algebra& alg, const Jet& f, const Eigen::VectorXd& X);

/// Delta f at (X, Z); f is a field on R^{k+l}.
Jet::Scalar laplacian(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z);

/// H-type form Delta_X + (1 + x^2/4) Delta_Z + sum_a d_a D_a.
Jet::Scalar laplacian_htype(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X,
                            const Eigen::VectorXd& Z);

/// g^{ab} d_a d_b f + (d_a g^{ab}) d_b f from the coordinate metric (Laplace-Beltrami).
Jet::Scalar laplace_beltrami(const Algebra& alg, const JetField& f, const Eigen::VectorXd& X,
                             const Eigen::VectorXd& Z);

/// Solvable extension SN = N x R_+ with time generator T.
///   [T, X] = orientation * (q/2) X,  [T, Z] = orientation * q Z,  <T,T> = time_signature.
/// The unit-normalized generator T = q t d_t has orientation +1.
struct SolvableExtension {
    Algebra base;
    double q = 1.0;
    int time_signature = 1;
    int orientation = 1;

    int k() const { return base.k(); }
    int l() const { return base.l(); }
    int dim() const { return base.dim() + 1; }
    void validate() const;
};

LieMetricAlgebra solvable_structure(const SolvableExtension& ext);

/// Closed-form connection for the generator with [T,X] = -(q/2)X, [T,Z] = -qZ and <T,T> = 1:
///   nabla_{X+Z}(X*+Z*) = nabla^N - q(1/2<X,X*> + <Z,Z*>) T,
///   nabla_X T = (q/2) X,  nabla_Z T = q Z,  nabla_T = 0.
/// Vectors are (X, Z, T) of length k + l + 1.
Eigen::VectorXd solvable_connection(const SolvableExtension& ext, const Eigen::VectorXd& U,
                                    const Eigen::VectorXd& V);

/// Riemannian closed forms Ri_q(X) = Ri(X) - q^2(k/4 + l/2)X, Ri_q(Z) = Ri(Z) - q^2(k/2 + l)Z,
/// Ric_q(T,T) = -q^2(k/4 + l); no mixed terms.
double solvable_ricci(const SolvableExtension& ext, const Eigen::VectorXd& U, const Eigen::VectorXd& V);

/// Trace of the closed Ricci forms; -(k/4 + l)(k + l + 1) at q = 1 on H-type bases.
double solvable_scalar(const SolvableExtension& ext);

/// (k/4 + l)(k + l + 3/2) <T,T>, the closed Einstein-tensor entry at q = 1.
double einstein_tt_closed(int k, int l, double tt);

/// Coordinate metric on (x, z, t): t^{-1}|dx|^2 + t^{-2}|theta|^2 + s dt^2/(q t)^2,
/// theta_a = dz_a - 1/2 <J_a X, dx>, s = time_signature.
Eigen::MatrixXd solvable_metric(const SolvableExtension& ext, const Eigen::VectorXd& X, double t);

/// Columns Y_i = t^{1/2} X_i, V_a = t Z_a, T = q t d_t in coordinates (x, z, t).
Eigen::MatrixXd solvable_frame(const SolvableExtension& ext, const Eigen::VectorXd& X, double t);

inline double time_T(double t, double q) { return std::log(t) / q; }
inline double time_t(double T, double q) { return std::exp(q * T); }
/// tau = -T.
inline double reversed_time(double T) { return -T; }

enum class CurveType { X, Z };

/// Length of an X- or Z-curve after the tau-flow: e^{q tau/2} resp. e^{q tau}.
double hubble_scaling(CurveType curve, double length, double tau, double q);

}  // namespace htype
