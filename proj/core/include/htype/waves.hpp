#pragma once

#include "htype/algebra.hpp"
#include "htype/geometry.hpp"
#include "htype/jet.hpp"
#include "htype/twisted.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace htype {

/// hbar, c, m in consistent units; natural units by default.
struct PhysicalConstants {
    double hbar = 1.0;
    double c = 1.0;
    double m = 0.0;
    void validate() const;
};

/// omega = c sqrt(k^2 + m^2 c^2 / hbar^2).
double dispersion_omega(double k, const PhysicalConstants& pc);

/// (nabla^2 - c^{-2} d_tt - m^2 c^2/hbar^2) e^{i(<K,Z> - omega t)} / e^{...} with omega from the dispersion relation.
double relativistic_residual(const Eigen::VectorXd& K, const PhysicalConstants& pc);

struct NonrelLink {
    double omega = 0.0;         // relativistic frequency
    double omega_tilde = 0.0;   // omega - m c^2 / hbar
    double omega_taylor = 0.0;  // hbar k^2 / 2m
    double link_residual = 0.0;    // wave equation on e^{-i m c^2 t/hbar} psi~, relative
    double nonrel_residual = 0.0;  // nabla^2 + 2im/hbar d_t - c^{-2} d_tt on psi~, relative
    double taylor_residual = 0.0;  // same operator with omega_taylor in place of omega_tilde
};

/// Plane-wave check of the non-relativistic reduction, evaluated with jets at `samples` points (Z, t).
/// `time_reversed` replaces psi~(Z, t) by conj(psi~(Z, -t)).  Requires m > 0.
NonrelLink nonrelativistic_link(const Eigen::VectorXd& K, const PhysicalConstants& pc, bool time_reversed = false,
                                int samples = 6, std::uint64_t seed = 17);

enum class OperatorKind {
    RelativisticWave,      // Delta_Z - c^{-2} d_tt - m^2 c^2 / hbar^2
    Neutrino,              // N = Delta_Z + (2mi/hbar) d_t - c^{-2} d_tt
    Schrodinger,           // S = Delta_X + cross + spin - (2mi/hbar) d_t
    TotalSchrodinger,      // S + Delta_Z
    FullStatic,            // Delta_Z - c^{-2} d_tt + Delta_X + cross + spin
    Meson,                 // e^{2qT} Delta_Z + d_T - d_TT
    ShrinkingNeutrino,     // e^{2qT} Delta_Z + (1 + (2mi/hbar) e^{qT}) d_T - d_TT
    ExpandingSchrodinger,  // e^{qT}(Delta_X + cross + spin - (2mi/hbar) d_T)
    Tractor,               // (q(k/2 + l) - 1) d_T
    FullSolvable,          // e^{2qT} Delta_Z - d_TT + e^{qT}(Delta_X + cross + spin) + q(k/2 + l) d_T
};
std::string to_string(OperatorKind kind);
bool is_solvable_kind(OperatorKind kind);

/// Coefficient sum_p c_p E^p with E = e^{qT} on the solvable model and E = 1 on the static one.
using ExpCoefficient = std::map<int, std::complex<double>>;

/// a Delta_Z + b (Delta_X + cross + spin) + c d_t + d d_tt + e, with cross = 1/4 sum <J_a X, J_b X> d_ab
/// and spin = sum d_a D_a.  On H-type algebras cross = 1/4 x^2 Delta_Z.
struct SpacetimeOperator {
    OperatorKind kind = OperatorKind::FullStatic;
    bool solvable = false;
    bool reversed = false;  // written in tau = -T
    double q = 1.0;
    ExpCoefficient delta_z;
    ExpCoefficient nil;
    ExpCoefficient dt;
    ExpCoefficient dtt;
    ExpCoefficient constant;
};

SpacetimeOperator static_operator(OperatorKind kind, const PhysicalConstants& pc, int k, int l);
SpacetimeOperator solvable_operator(OperatorKind kind, const PhysicalConstants& pc, int k, int l, double q = 1.0);

/// Coefficientwise sum; both operands must live on the same model.
SpacetimeOperator operator+(const SpacetimeOperator& a, const SpacetimeOperator& b);
/// Max coefficient difference (zero for an exact identity).
double coefficient_distance(const SpacetimeOperator& a, const SpacetimeOperator& b);

/// T = -tau: d_T -> -d_tau, e^{qT} -> e^{-q tau}.  Applying twice returns the input.
SpacetimeOperator time_reversed(const SpacetimeOperator& op);

/// Applies op to a jet in (X, Z, time) at spatial point X and time value `time` (t, T or tau).
std::complex<double> apply(const SpacetimeOperator& op, const Algebra& alg, const Jet& f, const Eigen::VectorXd& X,
                           double time);

std::complex<double> static_apply(const Algebra& alg, const PhysicalConstants& pc, OperatorKind kind,
                                  const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double t);
std::complex<double> solvable_apply(const SolvableExtension& ext, const PhysicalConstants& pc, OperatorKind kind,
                                    const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double T);

/// Laplace-Beltrami operator of the coordinate metric in (x, z, T), t = e^{qT}, by finite differences
/// of the metric (h = 1e-5).  With time_signature = -1 this is the FullSolvable operator.
std::complex<double> solvable_laplace_beltrami(const SolvableExtension& ext, const JetField& f,
                                               const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double T);

/// |FullStatic f - (N f + S f)| at a point.
double static_split_residual(const Algebra& alg, const PhysicalConstants& pc, const JetField& f,
                             const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double t);

enum class SchrodingerVariant { S, TotalS };

struct SchrodingerCheck {
    double mu = 0.0;
    double omega_tilde = 0.0;  // (hbar/2m)((4r + 4p + k) mu), plus 4 mu^2 for TotalS
    double residual = 0.0;     // max |op psi|
    double scale = 0.0;        // max |psi|
};

/// psi~anti = e^{i(<Z,K> + omega~ t)} f_mu(x^2) Pi_X(Theta_Q^p conj^q)(X, K_u) on the Z-crystal K = 2 pi Z_gamma,
/// with f_mu the Laguerre eigenfunction of index r.  Requires m > 0.
SchrodingerCheck zcrystal_schrodinger_check(const Algebra& alg, const PhysicalConstants& pc, SchrodingerVariant v,
                                            const Eigen::VectorXd& Zgamma, const Eigen::VectorXd& Q, int r, int p,
                                            int q, int samples = 4, std::uint64_t seed = 19);

/// Same over the sphere bundle |K| = R (mu = R/2), by quadrature.
SchrodingerCheck sphere_schrodinger_check(const Algebra& alg, const PhysicalConstants& pc, SchrodingerVariant v,
                                          double R, const Eigen::VectorXd& Q, int r, int p, int q, int samples = 3,
                                          std::uint64_t seed = 23);

/// Evaluation grid for packet residuals: fixed X, list of Z and T values.
struct PacketGrid {
    Eigen::VectorXd X;
    std::vector<Eigen::VectorXd> Z;
    std::vector<double> T;
    /// n^l Z-points on [-half, half]^l times nT values on [T0, T1].
    static PacketGrid box(const Eigen::VectorXd& X, int l, int n, double half, int nT, double T0, double T1);
};

struct PacketSample {
    Eigen::VectorXd Z;
    double T = 0.0;
    std::complex<double> value;
    std::complex<double> residual;
};

struct PacketResidual {
    OperatorKind kind = OperatorKind::Meson;
    double omega = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;  // max |op Psi| / max |Psi|
    std::vector<PacketSample> samples;
};

/// Psi(X, Z, T) = tf(X, Z) e^{-i omega e^T} with omega from the dispersion relation at |K| (sphere-bundle
/// radius or lattice |K|).  For ShrinkingNeutrino the hat function e^{i m c^2 e^T/hbar} Psi is used.
/// tf must be a LatticePoint or a SphereBundle with constant radius.
PacketResidual expanding_packet_residual(const SolvableExtension& ext, const PhysicalConstants& pc, OperatorKind kind,
                                         const TwistedFunction& tf, const PacketGrid& grid);

/// Meson operator on the single phase e^{i(<Z,K> - omega e^T)}, divided by the phase: omega^2 e^{2T} - k^2 e^{2qT}.
double meson_residual_closed(double k, double omega, double T, double q = 1.0);

}  // namespace htype
