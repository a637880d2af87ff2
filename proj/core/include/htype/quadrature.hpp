#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace htype {

struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Jacobi rule on [-1,1] for weight (1-x)^alpha (1+x)^beta (Golub-Welsch).
GaussRule gauss_jacobi(int n, double alpha, double beta);
inline GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }
/// Gauss-Laguerre rule on [0,inf) for weight t^alpha e^{-t}.
GaussRule gauss_laguerre(int n, double alpha);

/// Points on S^{d-1} subset R^d with weights summing to one (normalized measure).
struct SphereRule {
    int dim = 0;
    Eigen::MatrixXd points;  // d x N
    Eigen::VectorXd weights;
    int size() const { return static_cast<int>(weights.size()); }
};

/// Product rule exact for polynomials of degree <= `degree` on S^{d-1}; d >= 1.
/// d = 1 is the two-point sphere {-1, +1}.
SphereRule sphere_rule(int d, int degree);

/// Volume of the unit sphere S^{n} subset R^{n+1}; S^0 has measure 2.
double sphere_volume(int n);

/// Adaptive Gauss-Kronrod on [a,b] (b may be +infinity).
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                 double* error = nullptr, unsigned max_depth = 15);

}  // namespace htype
