#pragma once

#include "htype/algebra.hpp"
#include "htype/glz.hpp"
#include "htype/twisted.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace htype {

/// Pole change Q -> Q~ (omega_{Q Q~}) or complex-structure change J -> J' at a fixed pole (Omega).
struct IntertwineSpec {
    enum class Kind { PoleChange, ComplexStructure };
    Kind kind = Kind::PoleChange;
    Eigen::VectorXd target_pole;  // PoleChange
    Algebra target_algebra;       // ComplexStructure; same k and l as the source
};

/// Same profile, domain and projections; the twist polynomial is rebuilt from the target pole or J'.
TwistedFunction intertwine(const IntertwineSpec& spec, const TwistedFunction& tf);
BoundaryFunction intertwine(const IntertwineSpec& spec, const BoundaryFunction& bf);

/// J' with the sign of every J_alpha flipped on Clifford block `block` (0-based) of an h_type() algebra.
Algebra flip_block(const Algebra& alg, int block);

struct PointTransformation {
    Eigen::MatrixXd O;          // orthogonal k x k, O Q~ = Q and O J_a Q~ = J_a Q
    double orthogonality = 0.0;  // ||O^T O - I||_max
    double span_defect = 0.0;    // max_a ||O J_a Q~ - J_a Q||
};

/// O maps span{Q~, J_a Q~} onto span{Q, J_a Q}; the complements are matched by Gram-Schmidt over the
/// standard basis.  Then F_{Q~}(X, Z) = F_Q(O X, Z) for one-pole transforms.
PointTransformation point_transformation(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& Qt);

struct SpectrumMismatch {
    int index = 0;
    double left = 0.0;
    double right = 0.0;
    int left_multiplicity = 0;
    int right_multiplicity = 0;
};

struct SpectraComparison {
    std::string left;
    std::string right;
    double tol = 0.0;
    int matched = 0;
    bool length_mismatch = false;
    std::vector<SpectrumMismatch> mismatches;
    bool isospectral() const { return mismatches.empty() && !length_mismatch; }
};

std::string record_label(const SpectrumRecord& rec);

/// Pairs entries in sorted order; a pair matches when |left - right| <= tol (1 + |left|) and multiplicities agree.
SpectraComparison spectra_compare(const SpectrumRecord& left, const SpectrumRecord& right, double tol);

/// Constants of the radial reduction for one pole and stratum, measured rather than assumed:
/// m from the D_K eigenvalue, n from the degree of Pi_X(Theta^p conj^q), mu = |K|/2.
struct ReducedParameters {
    int k = 0;
    int n = 0;
    int m = 0;
    double mu = 0.0;
    double dk_residual = 0.0;    // D_K eigen-residual at the pole
    double harmonic_defect = 0.0;  // |Delta_X Pi_X(...)| at samples
    bool operator==(const ReducedParameters& o) const { return k == o.k && n == o.n && m == o.m && mu == o.mu; }
};

ReducedParameters reduce_pole(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, double mu,
                              std::uint64_t seed = 29);

/// Reduced one-pole spectrum on the X-ball x^2 <= R^2: radial operator with (k, n = p + q, m = p - q, mu)
/// under `bc`; multiplicities are dim of the (p, q) harmonic stratum.
SpectrumRecord reduced_spectrum(const Algebra& alg, int p, int q, double mu, double R, const BoundaryCondition& bc,
                                int count, const CollocationOptions& options = {});

struct IsotropySweep {
    std::vector<ReducedParameters> parameters;  // per pole, per stratum (pole-major)
    std::vector<SpectrumRecord> spectra;
    std::vector<SpectraComparison> comparisons;  // pole i vs pole 0, per stratum
    bool consistent = false;
};

IsotropySweep isotropy_sweep(const Algebra& alg, const std::vector<Eigen::VectorXd>& poles,
                             const std::vector<std::pair<int, int>>& strata, double mu, double R,
                             const BoundaryCondition& bc, int count, double tol = 1e-6);

/// Delta(intertwined f)(X, Z) against (Delta f)(O X, Z) for a pole change, at random points.
struct IntertwineCheck {
    double residual = 0.0;
    double scale = 0.0;
};
IntertwineCheck intertwine_laplacian_check(const TwistedFunction& tf, const Eigen::VectorXd& Qt, int samples = 4,
                                           std::uint64_t seed = 31);

}  // namespace htype
