#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace htype {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Default upper bound on the irreducible block dimension.
inline constexpr int kDefaultSizeCap = 4096;

/// Dimension of an irreducible module of Cl_{0,l} (negative definite generators).
/// Returns 1 for l = 0.
long long irreducible_dimension(int l);

/// Generators j_1..j_l on R^{n_l}. Entries are in {-1, 0, 1}.
struct CliffordModule {
    int l = 0;
    int n = 1;
    std::vector<IntMatrix> generators;
};

/// Deterministic construction: quaternions for l <= 3, octonions for l <= 7,
/// a doubling step for l = 8 and mod-8 periodicity above.
CliffordModule build_generators(int l, int size_cap = kDefaultSizeCap);

/// Max-abs residual of j_a j_b + j_b j_a + 2 delta_ab I over all pairs, plus
/// skewness and orthogonality defects.  Exact integer arithmetic.
struct CliffordDefects {
    long long anticommutation = 0;
    long long skewness = 0;
    long long orthogonality = 0;
    bool ok() const { return anticommutation == 0 && skewness == 0 && orthogonality == 0; }
};
CliffordDefects check_clifford(const CliffordModule& module);

/// J^{(a,b)}_l: a copies of j_Z followed by b copies of -j_Z.
struct EndomorphismSpace {
    int l = 1;
    int a = 1;
    int b = 0;

    EndomorphismSpace() = default;
    EndomorphismSpace(int l_, int a_, int b_, int size_cap = kDefaultSizeCap);

    int block_dim() const { return module_.n; }
    int k() const { return (a + b) * module_.n; }
    const CliffordModule& module() const { return module_; }

    /// Block-diagonal integer matrix J_{e_alpha}, alpha in [0, l).
    IntMatrix basis_matrix(int alpha) const;
    /// J_Z for real Z of length l.
    Eigen::MatrixXd J(const Eigen::VectorXd& Z) const;
    std::vector<Eigen::MatrixXd> basis() const;

private:
    CliffordModule module_;
};

IntMatrix kron(const IntMatrix& A, const IntMatrix& B);

}  // namespace htype
