#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace htype {

struct HankelSpec {
    int l = 2;
    int nu = 0;
    std::function<double(double)> profile;
    double cutoff = 0.0;  // radial integration limit; 0 selects one from the profile decay
    double tol = 1e-10;
};

/// phi_nu(rho) = C^{(l/2-1)}_nu(cos rho) / C^{(l/2-1)}_nu(1); cos(nu rho) for l = 2.
double zonal_profile(int l, int nu, double rho);

/// Radial factor of the l-dimensional Fourier transform of f(|K|) F^(nu)(theta_K):
/// (2 pi)^{l/2} i^nu r^{1-l/2} int f(k) J_{nu+l/2-1}(k r) k^{l/2} dk.
std::complex<double> hankel_transform(const HankelSpec& spec, double r);

/// Same quantity by slicing R^l along the Z-line and integrating over the
/// spherical distance rho: |K| = |t|/|cos rho|, rho in [0, pi/2) for t > 0.
std::complex<double> hankel_transform_slicing(const HankelSpec& spec, double r);

/// Slicing formula with radial argument |t tan rho| and rho over [0, pi] for
/// every t.  Diagnostic only; it does not reproduce the transform.
std::complex<double> hankel_transform_slicing_literal(const HankelSpec& spec, double r);

/// Normalized mean of F over the geodesic sphere of radius rho around theta on S^{l-1}.
double spherical_mean(const std::function<double(const Eigen::VectorXd&)>& F, const Eigen::VectorXd& theta,
                      double rho, double tol = 1e-12, int* order_used = nullptr);

}  // namespace htype
