#include "htype/hankel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace {

// Fourier transform of e^{-w |K|^2} on R^l, evaluated at |Z| = r.
double gaussian_fourier(int l, double w, double r) {
    return std::pow(std::numbers::pi / w, l / 2.0) * std::exp(-r * r / (4 * w));
}

}  // namespace

TEST_CASE("radial Gaussians transform to Gaussians") {
    for (int l : {2, 3, 4})
        for (double w : {0.5, 1.0})
            for (double r : {0.3, 1.1, 2.4}) {
                htype::HankelSpec spec;
                spec.l = l;
                spec.nu = 0;
                spec.profile = [w](double k) { return std::exp(-w * k * k); };
                const auto F = htype::hankel_transform(spec, r);
                CHECK(F.real() == doctest::Approx(gaussian_fourier(l, w, r)).epsilon(1e-8));
                CHECK(std::abs(F.imag()) < 1e-10);
            }
}

TEST_CASE("l = 2, nu = 1: first moment") {
    // Fourier transform of e^{-|K|^2/2} (K_1/|K|) |K|, i.e. of K_1 e^{-|K|^2/2}:
    // i Z_1 e^{-|Z|^2/2} 2 pi.  The radial factor divides out cos(theta) = Z_1/|Z|.
    htype::HankelSpec spec;
    spec.l = 2;
    spec.nu = 1;
    spec.profile = [](double k) { return k * std::exp(-k * k / 2); };
    for (double r : {0.5, 1.5}) {
        const auto F = htype::hankel_transform(spec, r);
        CHECK(F.imag() == doctest::Approx(2 * std::numbers::pi * r * std::exp(-r * r / 2)).epsilon(1e-8));
        CHECK(std::abs(F.real()) < 1e-10);
    }
}

TEST_CASE("slicing path agrees with the Bessel path") {
    for (int l : {2, 3})
        for (int nu : {0, 1, 2}) {
            htype::HankelSpec spec;
            spec.l = l;
            spec.nu = nu;
            spec.profile = [](double k) { return std::exp(-k * k); };
            for (double r : {0.5, 1.3}) {
                const auto a = htype::hankel_transform(spec, r);
                const auto b = htype::hankel_transform_slicing(spec, r);
                CHECK(std::abs(a - b) < 1e-3 * std::max(1.0, std::abs(a)));
            }
        }
}

TEST_CASE("zonal profiles") {
    CHECK(htype::zonal_profile(2, 3, 0.4) == doctest::Approx(std::cos(1.2)));
    // l = 3: Legendre polynomials.
    const double c = std::cos(0.7);
    CHECK(htype::zonal_profile(3, 2, 0.7) == doctest::Approx((3 * c * c - 1) / 2));
    CHECK(htype::zonal_profile(4, 5, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("spherical mean of a linear function") {
    // Mean of <theta', v> over the geodesic sphere of radius rho around theta is cos(rho) <theta, v>.
    for (int l : {2, 3, 4}) {
        Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(l, 0.5, 1.5);
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(l);
        theta(0) = 0.6;
        theta(l - 1) = 0.8;
        const auto F = [v](const Eigen::VectorXd& x) { return x.dot(v); };
        for (double rho : {0.2, 1.0, 2.5})
            CHECK(htype::spherical_mean(F, theta, rho) == doctest::Approx(std::cos(rho) * theta.dot(v)).epsilon(1e-10));
    }
}
