#include "htype/quadrature.hpp"

#include "htype/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace htype {

namespace {

GaussRule golub_welsch(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double mu0) {
    const Eigen::Index n = a.size();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        T(i, i) = a(i);
        if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = b(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) throw NumericalFailure("golub_welsch: eigen-solve failed");
    GaussRule r;
    r.nodes = es.eigenvalues();
    r.weights = mu0 * es.eigenvectors().row(0).transpose().array().square();
    return r;
}

}  // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw InvalidArgument("gauss_jacobi: n must be >= 1");
    if (alpha <= -1.0 || beta <= -1.0) throw InvalidArgument("gauss_jacobi: alpha, beta must exceed -1");
    Eigen::VectorXd a(n), b(std::max(n - 1, 0));
    const double ab = alpha + beta;
    a(0) = (beta - alpha) / (ab + 2.0);
    for (int i = 1; i < n; ++i) {
        const double d = 2.0 * i + ab;
        a(i) = (beta * beta - alpha * alpha) / (d * (d + 2.0));
    }
    if (n > 1) b(0) = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int i = 2; i < n; ++i) {
        const double d = 2.0 * i + ab;
        const double num = 4.0 * i * (i + alpha) * (i + beta) * (i + ab);
        const double den = d * d * (d + 1.0) * (d - 1.0);
        b(i - 1) = std::sqrt(num / den);
    }
    const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                       std::tgamma(ab + 2.0);
    return golub_welsch(a, b, mu0);
}

GaussRule gauss_laguerre(int n, double alpha) {
    if (n < 1) throw InvalidArgument("gauss_laguerre: n must be >= 1");
    if (alpha <= -1.0) throw InvalidArgument("gauss_laguerre: alpha must exceed -1");
    Eigen::VectorXd a(n), b(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) a(i) = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n; ++i) b(i - 1) = std::sqrt(i * (i + alpha));
    return golub_welsch(a, b, std::tgamma(alpha + 1.0));
}

double sphere_volume(int n) {
    if (n < 0) throw InvalidArgument("sphere_volume: n must be >= 0");
    const double d = n + 1.0;
    return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

SphereRule sphere_rule(int d, int degree) {
    if (d < 1) throw InvalidArgument("sphere_rule: dimension must be >= 1");
    SphereRule rule;
    rule.dim = d;
    if (d == 1) {
        rule.points.resize(1, 2);
        rule.points << -1.0, 1.0;
        rule.weights = Eigen::VectorXd::Constant(2, 0.5);
        return rule;
    }
    if (d == 2) {
        const int m = degree + 1;
        rule.points.resize(2, m);
        rule.weights = Eigen::VectorXd::Constant(m, 1.0 / m);
        for (int j = 0; j < m; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / m;
            rule.points(0, j) = std::cos(phi);
            rule.points(1, j) = std::sin(phi);
        }
        return rule;
    }
    // x = (u, sqrt(1-u^2) y), y on S^{d-2}, measure (1-u^2)^{(d-3)/2} du dy.
    const SphereRule inner = sphere_rule(d - 1, degree);
    const double e = (d - 3) / 2.0;
    const GaussRule g = gauss_jacobi(degree / 2 + 1, e, e);
    const double wsum = g.weights.sum();
    const int n = static_cast<int>(g.nodes.size()) * inner.size();
    rule.points.resize(d, n);
    rule.weights.resize(n);
    int c = 0;
    for (Eigen::Index i = 0; i < g.nodes.size(); ++i) {
        const double u = g.nodes(i);
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int j = 0; j < inner.size(); ++j, ++c) {
            rule.points(0, c) = u;
            rule.points.block(1, c, d - 1, 1) = s * inner.points.col(j);
            rule.weights(c) = g.weights(i) / wsum * inner.weights(j);
        }
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, double* error,
                 unsigned max_depth) {
    double err = 0.0;
    double value = 0.0;
    if (std::isinf(b)) {
        value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, a, std::numeric_limits<double>::infinity(), max_depth, tol, &err);
    } else {
        value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &err);
    }
    if (error) *error = err;
    if (!std::isfinite(value)) throw NumericalFailure("integrate: non-finite result", err);
    return value;
}

}  // namespace htype
