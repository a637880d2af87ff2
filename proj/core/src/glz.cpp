#include "htype/glz.hpp"

#include "htype/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace htype {

RadialGLZOperator::RadialGLZOperator(int k_, int n_, int m_, double mu_) : k(k_), n(n_), m(m_), mu(mu_) {
    validate();
}

void RadialGLZOperator::validate() const {
    if (k < 2 || k % 2 != 0) throw InvalidArgument("RadialGLZOperator: k must be even and >= 2");
    if (n < 0) throw InvalidArgument("RadialGLZOperator: n must be >= 0");
    if (std::abs(m) > n || (n - m) % 2 != 0) throw InvalidArgument("RadialGLZOperator: need |m| <= n, m = n mod 2");
    if (!mu_of_t && !(mu >= 0.0)) throw InvalidArgument("RadialGLZOperator: mu must be >= 0");
}

double RadialGLZOperator::potential(double t) const {
    const double u = mu_at(t);
    return 2.0 * m * u + 4.0 * u * u * (1.0 + 0.25 * t);
}

double radial_apply(const RadialGLZOperator& op, const RadialFunction& f, double t) {
    return 4.0 * t * f.d2f(t) + (2.0 * op.k + 4.0 * op.n) * f.df(t) - op.potential(t) * f.f(t);
}

double explicit_eigenvalue(double mu, int r, double p, int k) {
    return -((4.0 * r + 4.0 * p + k) * mu + 4.0 * mu * mu);
}

std::vector<Rational> laguerre_eigenfunction(int r, int n, int k) {
    if (r < 0 || n < 0 || k < 2 || k % 2 != 0) throw InvalidArgument("laguerre_eigenfunction: bad indices");
    const Rational alpha = Rational(k, 2) + n - 1;
    // Coefficient of t^j in (Lambda_alpha + r) u: (r - j) a_j + (j+1)(j+1+alpha) a_{j+1} = 0.
    std::vector<Rational> a(r + 1);
    a[r] = 1;
    for (int j = r - 1; j >= 0; --j) a[j] = -a[j + 1] * (j + 1) * (alpha + j + 1) / Rational(r - j);
    return a;
}

std::vector<Rational> laguerre_residual(const std::vector<Rational>& u, const Rational& alpha, int r) {
    const int deg = static_cast<int>(u.size()) - 1;
    std::vector<Rational> out(u.size(), Rational(0));
    for (int j = 0; j <= deg; ++j) {
        // Lambda_alpha t^j = j(j + alpha) t^{j-1} - j t^j
        out[j] += (Rational(r) - j) * u[j];
        if (j > 0) out[j - 1] += u[j] * j * (alpha + j);
    }
    return out;
}

std::vector<Rational> laguerre_recursion_diagnostic(int r, int n, int k) {
    std::vector<Rational> a(r + 1);
    a[0] = 1;
    if (r == 0) return a;
    for (int i = 1; i <= r; ++i)
        a[i] = -a[i - 1] * Rational(r - i) * (Rational(r + n + 1 - i) + Rational(k, 2)) / Rational(r);
    return a;
}

double evaluate_polynomial(const std::vector<Rational>& coeffs, double t) {
    double s = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * t + static_cast<double>(*it);
    return s;
}

RadialFunction scaled_eigenfunction(double mu, int r, int n, int k) {
    if (!(mu > 0.0)) throw InvalidArgument("scaled_eigenfunction: mu must be positive");
    const std::vector<Rational> u = laguerre_eigenfunction(r, n, k);
    std::vector<double> c0(u.size()), c1, c2;
    for (std::size_t i = 0; i < u.size(); ++i) c0[i] = static_cast<double>(u[i]);
    for (std::size_t i = 1; i < c0.size(); ++i) c1.push_back(c0[i] * i);
    for (std::size_t i = 1; i < c1.size(); ++i) c2.push_back(c1[i] * i);
    auto horner = [](const std::vector<double>& c, double x) {
        double s = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
        return s;
    };
    RadialFunction f;
    f.f = [=](double t) { return horner(c0, mu * t) * std::exp(-mu * t / 2.0); };
    f.df = [=](double t) {
        return mu * (horner(c1, mu * t) - 0.5 * horner(c0, mu * t)) * std::exp(-mu * t / 2.0);
    };
    f.d2f = [=](double t) {
        const double x = mu * t;
        return mu * mu * (horner(c2, x) - horner(c1, x) + 0.25 * horner(c0, x)) * std::exp(-mu * t / 2.0);
    };
    return f;
}

BoundaryCondition BoundaryCondition::robin(double A, double B) {
    const double norm = std::hypot(A, B);
    if (!(norm > 0.0)) throw InvalidArgument("Robin condition needs (A, B) != 0");
    return {BoundaryKind::Robin, A / norm, B / norm};
}

std::string BoundaryCondition::name() const {
    switch (kind) {
        case BoundaryKind::Dirichlet: return "dirichlet";
        case BoundaryKind::Neumann: return "neumann";
        case BoundaryKind::Robin: return "robin";
    }
    return "unknown";
}

namespace {

// Chebyshev-Gauss-Lobatto points x_j = cos(pi j / N) and the differentiation matrix.
void chebyshev(int N, Eigen::VectorXd& x, Eigen::MatrixXd& D) {
    x.resize(N + 1);
    for (int j = 0; j <= N; ++j) x(j) = std::cos(std::numbers::pi * j / N);
    Eigen::VectorXd c = Eigen::VectorXd::Ones(N + 1);
    c(0) = c(N) = 2.0;
    for (int j = 0; j <= N; ++j)
        if (j % 2 == 1) c(j) = -c(j);
    D.resize(N + 1, N + 1);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            D(i, j) = i == j ? 0.0 : (c(i) / c(j)) / (x(i) - x(j));
    // Negative-sum trick for the diagonal.
    for (int i = 0; i <= N; ++i) D(i, i) = -D.row(i).sum();
}

}  // namespace

SpectrumRecord compact_spectrum(const RadialGLZOperator& op, double R, const BoundaryCondition& bc, int count,
                                const CollocationOptions& options) {
    op.validate();
    if (!(R > 0.0)) throw InvalidArgument("compact_spectrum: R must be positive");
    if (count < 1) throw InvalidArgument("compact_spectrum: count must be >= 1");
    const int N = options.nodes;
    if (N < 8) throw InvalidArgument("compact_spectrum: need at least 8 nodes");
    if (count > N / 2) throw InvalidArgument("compact_spectrum: count too large for the grid");

    const double L = R * R;
    Eigen::VectorXd x;
    Eigen::MatrixXd D;
    chebyshev(N, x, D);
    // t = L (x + 1) / 2; node 0 is t = L, node N is t = 0.
    const Eigen::VectorXd t = 0.5 * L * (x.array() + 1.0);
    const Eigen::MatrixXd Dt = (2.0 / L) * D;
    const Eigen::MatrixXd Dt2 = Dt * Dt;

    Eigen::MatrixXd A(N + 1, N + 1);
    const double c1 = 2.0 * op.k + 4.0 * op.n;
    for (int i = 0; i <= N; ++i) {
        A.row(i) = 4.0 * t(i) * Dt2.row(i) + c1 * Dt.row(i);
        A(i, i) -= op.potential(t(i));
    }

    // Eliminate the boundary node 0.
    Eigen::MatrixXd M;
    if (bc.kind == BoundaryKind::Dirichlet) {
        M = A.bottomRightCorner(N, N);
    } else {
        Eigen::RowVectorXd row = bc.A * Dt.row(0);
        row(0) += bc.B;
        if (std::abs(row(0)) < 1e-14) throw NumericalFailure("compact_spectrum: degenerate boundary row");
        // f_0 = -sum_{j>0} row_j f_j / row_0
        const Eigen::RowVectorXd elim = -row.tail(N) / row(0);
        M = A.bottomRightCorner(N, N) + A.col(0).tail(N) * elim;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    if (es.info() != Eigen::Success) throw NumericalFailure("compact_spectrum: eigen-solve failed");
    std::vector<double> values;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto z = es.eigenvalues()(i);
        if (std::abs(z.imag()) <= options.imag_tol * std::max(1.0, std::abs(z.real()))) values.push_back(z.real());
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    if (static_cast<int>(values.size()) < count) throw NumericalFailure("compact_spectrum: too few real eigenvalues");

    SpectrumRecord rec;
    rec.k = op.k;
    rec.n = op.n;
    rec.m = op.m;
    rec.mu = op.mu;
    rec.bc = bc.name();
    rec.provenance = "discretized";
    rec.tolerances["collocation_nodes"] = N;
    rec.tolerances["interval_end"] = L;
    for (int i = 0; i < count; ++i) {
        EigenEntry e;
        e.value = values[i];
        e.r = i;
        e.n = op.n;
        e.m = op.m;
        rec.eigenvalues.push_back(e);
    }
    return rec;
}

long long harmonic_space_dimension(int k, int p, int q) {
    if (k < 2 || k % 2 != 0 || p < 0 || q < 0) throw InvalidArgument("harmonic_space_dimension: bad indices");
    const int N = k / 2;
    auto binom = [](long long n, long long r) -> long long {
        if (r < 0 || n < r) return 0;
        long long v = 1;
        for (long long i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    const long long full = binom(p + N - 1, p) * binom(q + N - 1, q);
    const long long trace = (p > 0 && q > 0) ? binom(p + N - 2, p - 1) * binom(q + N - 2, q - 1) : 0;
    return full - trace;
}

SpectrumRecord explicit_spectrum(double mu, int k, int rmax, int pmax) {
    if (!(mu > 0.0)) throw InvalidArgument("explicit_spectrum: mu must be positive");
    SpectrumRecord rec;
    rec.k = k;
    rec.mu = mu;
    rec.bc = "none";
    rec.provenance = "explicit";
    for (int r = 0; r <= rmax; ++r)
        for (int p = 0; p <= pmax; ++p) {
            EigenEntry e;
            e.value = explicit_eigenvalue(mu, r, p, k);
            e.multiplicity = static_cast<int>(harmonic_space_dimension(k, p, 0));
            e.r = r;
            e.n = p;
            e.m = p;
            rec.eigenvalues.push_back(e);
        }
    return rec;
}

std::vector<double> zball_eigenvalues(int l, int s, double R, const BoundaryCondition& bc, int count) {
    if (l < 2 || s < 0 || !(R > 0.0) || count < 1) throw InvalidArgument("zball_eigenvalues: bad arguments");
    const double nu = s + l / 2.0 - 1.0;
    std::vector<double> out;
    if (bc.kind == BoundaryKind::Dirichlet) {
        for (int i = 1; i <= count; ++i) {
            const double j = boost::math::cyl_bessel_j_zero(nu, i);
            out.push_back((j / R) * (j / R));
        }
        return out;
    }
    if (bc.kind != BoundaryKind::Neumann) throw InvalidArgument("zball_eigenvalues: only Dirichlet and Neumann");

    // d/dx [x^{1-l/2} J_nu(x)] = x^{-l/2} (s J_nu(x) - x J_{nu+1}(x)).
    auto g = [=](double x) { return s * std::cyl_bessel_j(nu, x) - x * std::cyl_bessel_j(nu + 1.0, x); };
    if (s == 0) out.push_back(0.0);
    const double h = 0.05;
    double a = 1e-3;
    double ga = g(a);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        const double b = a + h;
        const double gb = g(b);
        if (ga == 0.0) {
            out.push_back((a / R) * (a / R));
        } else if ((ga < 0.0) != (gb < 0.0)) {
            boost::uintmax_t iters = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(52);
            const auto root = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
            const double x = 0.5 * (root.first + root.second);
            out.push_back((x / R) * (x / R));
        }
        a = b;
        ga = gb;
        if (++guard > 2000000) throw NumericalFailure("zball_eigenvalues: root scan did not converge");
    }
    return out;
}

RadialGLZOperator exterior_operator(int l, int s, int i, double R, const BoundaryCondition& bc, int k, int n, int m) {
    if (i < 1) throw InvalidArgument("exterior_operator: i is 1-based");
    const std::vector<double> lambda = zball_eigenvalues(l, s, R, bc, i);
    return RadialGLZOperator(k, n, m, std::sqrt(lambda[i - 1]) / 2.0);
}

}  // namespace htype
