#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace htype {

using Rational = boost::multiprecision::cpp_rational;

/// Reduced radial operator
///   4t f'' + (2k+4n) f' - (2 m mu + 4 mu^2 (1 + t/4)) f
/// with mu constant or a callable mu(t).
struct RadialGLZOperator {
    int k = 2;
    int n = 0;
    int m = 0;
    double mu = 1.0;
    std::function<double(double)> mu_of_t;  // overrides mu when set

    RadialGLZOperator() = default;
    RadialGLZOperator(int k_, int n_, int m_, double mu_);

    double mu_at(double t) const { return mu_of_t ? mu_of_t(t) : mu; }
    double potential(double t) const;
    int p2() const { return m + n; }  // 2p
    void validate() const;
};

/// Value and first two derivatives of a radial profile.
struct RadialFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
};

double radial_apply(const RadialGLZOperator& op, const RadialFunction& f, double t);

/// nu = -((4r + 4p + k) mu + 4 mu^2).
double explicit_eigenvalue(double mu, int r, double p, int k);

/// Monic u of degree r with Lambda_alpha u = -r u, alpha = k/2 + n - 1,
/// Lambda_alpha = t d^2 + (alpha + 1 - t) d.  Coefficients a_0..a_r (a_r = 1).
std::vector<Rational> laguerre_eigenfunction(int r, int n, int k);

/// Exact Lambda_alpha u + r u; all zero for a correct eigenfunction.
std::vector<Rational> laguerre_residual(const std::vector<Rational>& u, const Rational& alpha, int r);

/// Sequence from a_i = -a_{i-1}(r-i)(r+n+k/2+1-i)/r, a_0 = 1.  Diagnostic only.
std::vector<Rational> laguerre_recursion_diagnostic(int r, int n, int k);

double evaluate_polynomial(const std::vector<Rational>& coeffs, double t);

/// f(t) = u(mu t) e^{-mu t/2} with analytic derivatives.
RadialFunction scaled_eigenfunction(double mu, int r, int n, int k);

enum class BoundaryKind { Dirichlet, Neumann, Robin };

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    // Robin: A f'(R^2) + B f(R^2) = 0, normalized to A^2 + B^2 = 1.
    double A = 0.0;
    double B = 1.0;

    static BoundaryCondition dirichlet() { return {BoundaryKind::Dirichlet, 0.0, 1.0}; }
    static BoundaryCondition neumann() { return {BoundaryKind::Neumann, 1.0, 0.0}; }
    static BoundaryCondition robin(double A, double B);
    std::string name() const;
};

struct EigenEntry {
    double value = 0.0;
    int multiplicity = 1;
    int r = 0;
    int n = 0;
    int m = 0;
    std::optional<int> s;
};

struct SpectrumRecord {
    struct Group {
        int l = 0;
        int a = 0;
        int b = 0;
    };
    std::optional<Group> group;
    int k = 0;
    int n = 0;
    int m = 0;
    double mu = 0.0;
    std::string bc;
    std::vector<EigenEntry> eigenvalues;
    std::string provenance;  // "explicit" or "discretized"
    std::map<std::string, double> tolerances;
};

struct CollocationOptions {
    int nodes = 400;
    double imag_tol = 1e-6;
};

/// Lowest `count` eigenvalues (closest to zero from below) of the operator on
/// [0, R^2], regular at t = 0, with `bc` at t = R^2.  Chebyshev collocation.
SpectrumRecord compact_spectrum(const RadialGLZOperator& op, double R, const BoundaryCondition& bc, int count,
                                const CollocationOptions& options = {});

/// Explicit eigenvalue table for r <= rmax, p <= pmax; multiplicities are the
/// dimensions of the (p, 0) harmonic strata.
SpectrumRecord explicit_spectrum(double mu, int k, int rmax, int pmax);

/// dim of X-harmonic polynomials of bidegree (p, q) on C^{k/2}.
long long harmonic_space_dimension(int k, int p, int q);

/// Z-ball eigenvalues lambda^{(s)}_i, i = 1..count, sorted increasing.
std::vector<double> zball_eigenvalues(int l, int s, double R, const BoundaryCondition& bc, int count);

/// Radial operator with mu = sqrt(lambda_i^{(s)}) / 2 (i is 1-based).
RadialGLZOperator exterior_operator(int l, int s, int i, double R, const BoundaryCondition& bc, int k, int n, int m);

}  // namespace htype
