#pragma once

#include "htype/clifford.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace htype {

/// Two-step nilpotent metric Lie algebra n = X (+) Z with
/// <[X,Y], Z> = <J_Z X, Y>.  The Z-basis stored here is orthonormal.
class Algebra {
public:
    Algebra() = default;

    /// J_alpha for an orthonormal Z-basis; each must be skew.
    explicit Algebra(std::vector<Eigen::MatrixXd> J);

    /// H^{(a,b)}_l built from Clifford blocks.
    static Algebra h_type(int l, int a, int b);
    static Algebra h_type(const EndomorphismSpace& space);

    int k() const { return k_; }
    int l() const { return static_cast<int>(J_.size()); }
    int dim() const { return k_ + l(); }

    const Eigen::MatrixXd& J(int alpha) const { return J_[alpha]; }
    const std::vector<Eigen::MatrixXd>& J_basis() const { return J_; }
    Eigen::MatrixXd J(const Eigen::VectorXd& Z) const;

    /// Block parameters when built by h_type().
    std::optional<EndomorphismSpace> space() const { return space_; }

    /// For algebras from from_representation(): column alpha holds the
    /// orthonormal basis vector f_alpha in the coordinates of the input generators.
    const Eigen::MatrixXd& z_frame() const { return z_frame_; }
    /// Gram matrix -Tr(J_a J_b) of the input generators.
    const Eigen::MatrixXd& z_gram() const { return z_gram_; }

    Eigen::VectorXd bracket(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const;

    /// Bracket on the full algebra; vectors are (X, Z) of length k + l.
    Eigen::VectorXd full_bracket(const Eigen::VectorXd& U, const Eigen::VectorXd& V) const;

    friend Algebra from_representation(const std::vector<Eigen::MatrixXd>& generators);

private:
    int k_ = 0;
    std::vector<Eigen::MatrixXd> J_;
    std::optional<EndomorphismSpace> space_;
    Eigen::MatrixXd z_frame_;
    Eigen::MatrixXd z_gram_;
};

/// Z-space = span of the generators with <Z,V> = -Tr(J_Z J_V); no normalization.
Algebra from_representation(const std::vector<Eigen::MatrixXd>& generators);

struct GroupElement {
    Eigen::VectorXd X;
    Eigen::VectorXd Z;
};

GroupElement group_multiply(const Algebra& alg, const GroupElement& p, const GroupElement& q);
GroupElement group_inverse(const GroupElement& p);
GroupElement group_identity(const Algebra& alg);

struct HTypeCheck {
    bool h_type = false;
    double max_residual = 0.0;
};

/// Checks J_Z^2 = -|Z|^2 I on the basis and on `samples` random unit-scale Z.
HTypeCheck is_h_type(const Algebra& alg, int samples, std::uint64_t seed = 1, double tol = 1e-12);

/// The eight i*lambda_a (Gell-Mann) realized as real skew 6x6 matrices.
std::vector<Eigen::MatrixXd> su3_generators();

/// Frame matrix of B_R = {B_1..B_{k/2}, J_{Z_u}B_1..} in the orthonormal basis Q (columns).
struct FrameMatrix {
    Eigen::MatrixXd A;
    double det = 0.0;
    bool singular = false;
};
inline constexpr double kSingularDetThreshold = 1e-10;

FrameMatrix frame_matrix(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                         const Eigen::VectorXd& Zu);

double charger(const Eigen::MatrixXd& A);
double volumer(const Eigen::MatrixXd& A);

/// Orthonormal completion of orthonormal B (columns) to a basis (B | C).  The
/// rotation `mix` (orthogonal, size k - cols(B)) is applied to the completion; the
/// orientation of the full basis is forced positive (or negative if `negative`).
Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& B, const Eigen::MatrixXd& mix, bool negative = false);

/// Verifies J'_{Bz(Z)} = A J_Z A^{-1} for all basis Z; returns the max-abs defect.
double isomorphism_defect(const Algebra& left, const Algebra& right, const Eigen::MatrixXd& A,
                          const Eigen::MatrixXd& Bz);

/// Canonical witness (block swap, -id) for H^{(a,b)}_l ~ H^{(b,a)}_l.
struct IsomorphismWitness {
    Eigen::MatrixXd A;
    Eigen::MatrixXd Bz;
};
IsomorphismWitness swap_witness(int l, int a, int b);

}  // namespace htype
