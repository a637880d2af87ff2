#include "htype/hankel.hpp"

#include "htype/errors.hpp"
#include "htype/quadrature.hpp"

#include <boost/math/special_functions/gegenbauer.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace htype {

namespace {

void validate(const HankelSpec& spec) {
    if (spec.l < 2) throw InvalidArgument("HankelSpec: l must be >= 2");
    if (spec.nu < 0) throw InvalidArgument("HankelSpec: nu must be >= 0");
    if (!spec.profile) throw InvalidArgument("HankelSpec: missing radial profile");
}

double radial_cutoff(const HankelSpec& spec) {
    if (spec.cutoff > 0.0) return spec.cutoff;
    double scale = 0.0;
    for (double k : {0.0, 0.25, 0.5, 1.0, 2.0}) scale = std::max(scale, std::abs(spec.profile(k)));
    if (scale == 0.0) return 1.0;
    double k = 1.0;
    while (k < 1e4) {
        const double tail = std::abs(spec.profile(k)) * std::pow(std::max(1.0, k), spec.l);
        if (tail < 1e-18 * scale) break;
        k *= 1.25;
    }
    return k;
}

std::complex<double> i_pow(int nu) {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[nu % 4];
}

}  // namespace

double zonal_profile(int l, int nu, double rho) {
    if (l < 2 || nu < 0) throw InvalidArgument("zonal_profile: bad indices");
    if (l == 2) return std::cos(nu * rho);
    const double lambda = l / 2.0 - 1.0;
    return boost::math::gegenbauer(static_cast<unsigned>(nu), lambda, std::cos(rho)) /
           boost::math::gegenbauer(static_cast<unsigned>(nu), lambda, 1.0);
}

std::complex<double> hankel_transform(const HankelSpec& spec, double r) {
    validate(spec);
    if (r < 0.0) throw InvalidArgument("hankel_transform: r must be >= 0");
    const double half = spec.l / 2.0;
    const double pref = std::pow(2.0 * std::numbers::pi, half);
    const double kmax = radial_cutoff(spec);
    double err = 0.0;
    double value = 0.0;
    if (r == 0.0) {
        if (spec.nu != 0) return 0.0;
        // r^{1-l/2} J_{l/2-1}(k r) -> (k/2)^{l/2-1} / Gamma(l/2)
        value = integrate([&](double k) { return spec.profile(k) * std::pow(k, spec.l - 1); }, 0.0, kmax, spec.tol,
                          &err) /
                (std::pow(2.0, half - 1.0) * std::tgamma(half));
    } else {
        const double order = spec.nu + half - 1.0;
        value = integrate(
                    [&](double k) {
                        return k == 0.0 ? 0.0 : spec.profile(k) * std::cyl_bessel_j(order, k * r) * std::pow(k, half);
                    },
                    0.0, kmax, spec.tol, &err) *
                std::pow(r, 1.0 - half);
    }
    return pref * i_pow(spec.nu) * value;
}

std::complex<double> hankel_transform_slicing(const HankelSpec& spec, double r) {
    validate(spec);
    const int l = spec.l;
    const double kmax = radial_cutoff(spec);
    const double omega = sphere_volume(l - 2);
    // t^{l-1} G(t), G(t) = int_0^{pi/2} f(t / cos rho) phi(rho) sin^{l-2} rho / cos^l rho d rho
    auto slice = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double rho_max = std::acos(std::min(1.0, t / kmax));
        auto inner = [&](double rho) {
            const double c = std::cos(rho);
            return spec.profile(t / c) * zonal_profile(l, spec.nu, rho) * std::pow(std::sin(rho), l - 2) /
                   std::pow(c, l);
        };
        return std::pow(t, l - 1) * integrate(inner, 0.0, rho_max, spec.tol);
    };
    // t < 0 half mirrors rho -> pi - rho, where phi picks up (-1)^nu.
    const bool even = spec.nu % 2 == 0;
    const double part = integrate(
        [&](double t) { return slice(t) * (even ? 2.0 * std::cos(r * t) : 2.0 * std::sin(r * t)); }, 0.0, kmax,
        spec.tol);
    return even ? std::complex<double>(omega * part, 0.0) : std::complex<double>(0.0, omega * part);
}

std::complex<double> hankel_transform_slicing_literal(const HankelSpec& spec, double r) {
    validate(spec);
    const int l = spec.l;
    const double kmax = radial_cutoff(spec);
    const double omega = sphere_volume(l - 2);
    auto inner_for = [&](double t) {
        auto inner = [&](double rho) {
            const double c = std::cos(rho);
            if (std::abs(c) < 1e-300) return 0.0;
            return spec.profile(std::abs(t * std::tan(rho))) * zonal_profile(l, spec.nu, rho) *
                   std::pow(std::sin(rho), l - 2) / std::pow(std::abs(c), l);
        };
        const double half = std::numbers::pi / 2.0;
        return std::pow(std::abs(t), l - 1) *
               (integrate(inner, 0.0, half, 1e-8, nullptr, 8) + integrate(inner, half, std::numbers::pi, 1e-8, nullptr, 8));
    };
    const double re =
        integrate([&](double t) { return 2.0 * std::cos(r * t) * inner_for(t); }, 0.0, kmax, 1e-8, nullptr, 8);
    return {omega * re, 0.0};
}

double spherical_mean(const std::function<double(const Eigen::VectorXd&)>& F, const Eigen::VectorXd& theta,
                      double rho, double tol, int* order_used) {
    const int l = static_cast<int>(theta.size());
    if (l < 2) throw InvalidArgument("spherical_mean: need l >= 2");
    if (rho < 0.0 || rho > std::numbers::pi) throw InvalidArgument("spherical_mean: rho must lie in [0, pi]");
    const Eigen::VectorXd th = theta.normalized();
    // Orthonormal basis of theta^perp from the Householder QR of theta.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(th);
    const Eigen::MatrixXd Qfull = qr.householderQ() * Eigen::MatrixXd::Identity(l, l);
    const Eigen::MatrixXd perp = Qfull.rightCols(l - 1);

    auto mean_at = [&](int degree) {
        const SphereRule rule = sphere_rule(l - 1, degree);
        double s = 0.0;
        for (int j = 0; j < rule.size(); ++j) {
            const Eigen::VectorXd p = std::cos(rho) * th + std::sin(rho) * (perp * rule.points.col(j));
            s += rule.weights(j) * F(p);
        }
        return s;
    };
    int degree = 4;
    double prev = mean_at(degree);
    while (degree < 256) {
        degree *= 2;
        const double cur = mean_at(degree);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
            if (order_used) *order_used = degree;
            return cur;
        }
        prev = cur;
    }
    throw NumericalFailure("spherical_mean: no convergence", std::abs(prev));
}

}  // namespace htype
