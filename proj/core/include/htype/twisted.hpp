#pragma once

#include "htype/algebra.hpp"
#include "htype/glz.hpp"
#include "htype/jet.hpp"
#include "htype/polynomial.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace htype {

/// Orientation of D_K = sum_i (J_K X)_i d_i relative to Theta_Q: D_K Theta_Q = kSigma * i|K| Theta_Q.
inline constexpr int kSigma = 1;

/// Theta_Q(X, K_u) = <Q + i J_{K_u} Q, X>; K_u must be a unit vector.
std::complex<double> theta_eval(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& X,
                                const Eigen::VectorXd& Ku);

/// Theta_Q at jets X (the first k entries of `vars`) for a fixed unit K_u.
Jet theta_jet(const Algebra& alg, const Eigen::VectorXd& Q, const std::vector<Jet>& vars, const Eigen::VectorXd& Ku);

struct DkCheck {
    std::complex<double> eigenvalue;  // D_K f / f
    std::complex<double> expected;    // kSigma (p - q) i |K|
    double residual = 0.0;            // max |D_K f - expected f| / |f| over the samples, exact derivatives
    double fd_residual = 0.0;         // same with a central difference along X + s J_K X
};

/// D_K acting on Theta_Q^p conj(Theta_Q)^q at `samples` random X.
DkCheck dk_eigencheck(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& K, int p, int q,
                      int samples = 8, std::uint64_t seed = 7);

enum class KDomain { FullSpace, SphereBundle, LatticePoint };
std::string to_string(KDomain d);

/// phi(x^2, |K|) as a jet in the point variables.
using ProfileJet = std::function<Jet(const Jet& x2, const Jet& k)>;
/// R(x^2) for sphere bundles.
using RadiusJet = std::function<Jet(const Jet& x2)>;

/// int e^{i<Z,K>} phi(x,|K|) phi^(v)(K_u) prod_j Theta_{B_j}^{p_j} conj(Theta_{B_j})^{q_j} dK
/// over a K-domain, with optional projections Pi_K^(s) (in K_u) and Pi_X (in X, one pole only).
struct TwistedFunction {
    Algebra alg;
    Eigen::MatrixXd poles;                      // k x m, column j is B_j (Q for one pole)
    std::vector<std::pair<int, int>> exponents;  // (p_j, q_j)
    ProfileJet profile;                          // empty means 1
    std::optional<RealPolynomial> angular;       // harmonic of degree v on R^l, evaluated at K_u
    KDomain domain = KDomain::SphereBundle;
    RadiusJet radius;                            // SphereBundle
    Eigen::VectorXd lattice_point;               // LatticePoint: K = 2 pi Z_gamma
    std::optional<int> project_k;                // Pi_K^(s)
    bool project_x = false;                      // Pi_X^(p+q)
    double radial_cutoff = 8.0;                  // FullSpace
    int radial_nodes = 48;                       // FullSpace
    int sphere_degree = 0;                       // 0 chooses from the oscillation scale

    static TwistedFunction one_pole(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q);
    static TwistedFunction multi_pole(const Algebra& alg, const Eigen::MatrixXd& B,
                                      std::vector<std::pair<int, int>> exponents);

    int p() const;
    int q() const;
    int twist_degree() const;  // sum p_j + q_j
    int angular_degree() const;
    void validate() const;
};

/// Transform as a jet in the k + l point variables (X, Z).
Jet twisted_transform_jet(const TwistedFunction& tf, const Eigen::VectorXd& X, const Eigen::VectorXd& Z);
std::complex<double> twisted_transform(const TwistedFunction& tf, const Eigen::VectorXd& X, const Eigen::VectorXd& Z);

/// Angular integrand F(X, K_u) (twist polynomial times phi^(v), with Pi_X if requested) at jets X.
Jet twist_factor(const TwistedFunction& tf, const std::vector<Jet>& vars, const Eigen::VectorXd& u);

/// Pi_K^(s) F at u by integrating against the zonal kernel; exact for the polynomial K_u-dependence.
Jet project_k(const TwistedFunction& tf, const std::vector<Jet>& vars, const Eigen::VectorXd& u, int s);

/// dim of degree-s spherical harmonics on S^{l-1}.
long long spherical_harmonic_dimension(int l, int s);

/// Z_s(t) with int Y(v) Z_s(<u,v>) dv_normalized = Y(u) for degree-s harmonics Y.
double zonal_kernel(int l, int s, double t);

/// Closed-form Pi_X(Theta^p conj(Theta)^q) = sum_s c_s (4|Q|^2)^s p!q!/((p-s)!(q-s)!) |X|^{2s} Theta^{p-s} conj^{q-s}.
Jet project_x_theta(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, const std::vector<Jet>& vars,
                    const Eigen::VectorXd& Ku);

/// Theta_Q^p conj(Theta_Q)^q as a polynomial in the k real coordinates of X.
ComplexPolynomial theta_polynomial(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q,
                                   const Eigen::VectorXd& Ku);

struct ZCrystalReduction {
    double mu = 0.0;     // pi |Z_gamma|
    Eigen::VectorXd K;   // 2 pi Z_gamma
    Eigen::VectorXd Ku;  // K / |K|, empty for Z_gamma = 0
};
ZCrystalReduction zcrystal_reduce(const Algebra& alg, const Eigen::VectorXd& Zgamma);

struct ZCrystalCheck {
    std::complex<double> direct;   // Delta(psi e^{2 pi i<Z_gamma,Z>}) e^{-2 pi i<Z_gamma,Z>}
    std::complex<double> reduced;  // Delta_X psi + i D_K psi - 1/4 |J_K X|^2 psi - |K|^2 psi
};
/// psi is a field on R^k; on H-type groups the reduced form is Delta_X + 2i mu D_{K_u} - mu^2 x^2 - 4 mu^2.
ZCrystalCheck zcrystal_apply(const Algebra& alg, const Eigen::VectorXd& Zgamma, const JetField& psi,
                             const Eigen::VectorXd& X);

/// Admissible s for Pi^(s) of phi^(v) times a degree-a polynomial: |v-a| <= s <= v+a, s = v+a mod 2.
std::vector<int> projth_window(int v, int a);
bool projth_admissible(int v, int a, int s);

struct BoundaryFunction {
    TwistedFunction tf;
    double root = 0.0;  // sqrt(lambda_i^(s)) at unit ball radius
    bool outside_window = false;
    RadiusJet ball_radius;
};

/// Z-ball bundle |Z| <= R(x^2) with sphere-bundle radius sqrt(lambda_i^(s)(R(x^2))).
BoundaryFunction boundary_function(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, int s, int i,
                                   const BoundaryCondition& bc, RadiusJet ball_radius,
                                   std::optional<RealPolynomial> angular = std::nullopt);

struct BoundaryResidual {
    double residual = 0.0;  // Dirichlet: max |f|; Neumann: max |d_r f| on |Z| = R(x)
    double scale = 0.0;     // max |f| on the interior samples
};
BoundaryResidual boundary_residual(const BoundaryFunction& bf, const BoundaryCondition& bc, int samples = 6,
                                   std::uint64_t seed = 11);

struct MCheck {
    std::complex<double> eigenvalue;    // M f / f
    std::complex<double> expected;      // kSigma (q - p) R
    double residual = 0.0;
    std::complex<double> delta_z;       // Delta_Z f / f
    double delta_z_residual = 0.0;      // against -R^2
};

/// M = sum_a d_a D_a and Delta_Z on a one-pole sphere-bundle transform, sampled at random (X, Z).
MCheck m_operator_eigencheck(const TwistedFunction& tf, int samples = 4, std::uint64_t seed = 5);

/// Straight <-> twisted coordinates at fixed K_u.  Twisted variables (z, conj z) with
/// z_i = <B_i + i J_{K_u} B_i, X>; straight variables are the real coordinates <Q_j, X>.
struct FrameConversion {
    FrameMatrix frame;
    Eigen::MatrixXcd to_twisted;   // [z; conj z] = C x
    Eigen::MatrixXcd to_straight;  // C^{-1}; empty when singular
};
FrameConversion frame_conversion(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                 const Eigen::VectorXd& Ku);

/// P(z, conj z) -> P(C x).
ComplexPolynomial twisted_to_straight(const ComplexPolynomial& P, const FrameConversion& conv);
/// S(x) -> S(C^{-1}[z; conj z]); throws on the singular set.
ComplexPolynomial straight_to_twisted(const ComplexPolynomial& S, const FrameConversion& conv);

/// psi_eps(|det A|): 0 for |det A| <= eps/2, 1 for >= eps, C^1 smoothstep between.
double singular_cutoff(double abs_det, double eps);

struct RoundTrip {
    double l2_error = 0.0;     // sqrt(mean over K_u of ||psi S - S||^2), coefficient norm
    double cutoff_mass = 0.0;  // measure of K_u with psi < 1
};
/// Straight -> twisted (with cutoff) -> straight over K_u on the unit Z-sphere.
RoundTrip round_trip(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                     const ComplexPolynomial& S, double eps, int sphere_degree = 24);

/// Compound index (v, a, s).
struct CompoundIndex {
    int v = 0;
    int a = 0;
    int s = 0;
};

/// Radial functions f_alpha(k) as complex polynomial coefficients in k (power basis).
struct RouletteState {
    std::vector<CompoundIndex> index;
    std::vector<Eigen::VectorXcd> f;
    int depth = 1;
};

/// circ_alpha = -(p - q) i (k f_alpha + d/dk sum_beta S(alpha, beta) f_beta).
RouletteState roulette_one_turn(const RouletteState& state, const Eigen::MatrixXcd& S, int p, int q);

struct SpinMatrix {
    std::vector<int> strata;  // s values labelling rows and columns
    Eigen::MatrixXcd S;       // [D_K, Pi^s] F = sum_s' S(s, s') Pi^s' M_perp F
    double residual = 0.0;    // relative least-squares residual
    int rank = 0;
};

/// Least-squares fit of the commutator over the family phi^(v) Theta_Q^p conj^q, phi^(v)
/// ranging over a basis of degree-v harmonics.
SpinMatrix spin_matrix(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, int v, int samples = 6,
                       std::uint64_t seed = 13);

/// Numerical rank and singular values of the Gram matrix of twist polynomials
/// prod z_i^{p_i} conj(z_i)^{q_i} sampled at random X for a fixed K_u.
struct GramRank {
    int rank = 0;
    Eigen::VectorXd singular_values;
};
GramRank twist_gram_rank(const Algebra& alg, const Eigen::MatrixXd& B,
                         const std::vector<std::vector<std::pair<int, int>>>& exponent_sets,
                         const Eigen::VectorXd& Ku, int samples, std::uint64_t seed = 3);

/// dim of X-harmonic polynomials of bidegree (p, q) on C^{k/2} from the rank of Delta.
long long harmonic_dimension_bruteforce(int k, int p, int q);

/// Degree-v real harmonic basis on R^l (Pi applied to the monomials, then independent subset).
std::vector<RealPolynomial> harmonic_basis(int l, int v);

}  // namespace htype
