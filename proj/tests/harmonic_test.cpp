#include "htype/harmonic.hpp"
#include "htype/quadrature.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using htype::RealPolynomial;

TEST_CASE("projection is harmonic and fixes harmonic input") {
    std::mt19937_64 rng(11);
    for (int d = 2; d <= 5; ++d)
        for (int n = 0; n <= 6; ++n) {
            const auto P = RealPolynomial::random_homogeneous(d, n, rng);
            const auto H = htype::harmonic_projection(P);
            CHECK(H.laplacian().max_abs_coeff() < 1e-10 * std::max(1.0, P.max_abs_coeff()));
            CHECK((htype::harmonic_projection(H) - H).max_abs_coeff() < 1e-10 * std::max(1.0, H.max_abs_coeff()));
        }
}

TEST_CASE("decomposition round trip") {
    std::mt19937_64 rng(12);
    for (int d = 2; d <= 5; ++d)
        for (int n = 1; n <= 6; ++n) {
            const auto P = RealPolynomial::random_homogeneous(d, n, rng);
            const auto parts = htype::harmonic_decomposition(P);
            CHECK(static_cast<int>(parts.size()) == n / 2 + 1);
            for (const auto& [i, hp] : parts) CHECK(hp.laplacian().max_abs_coeff() < 1e-10);
            CHECK((htype::harmonic_reconstruct(parts, d) - P).max_abs_coeff() < 1e-12 * std::max(1.0, P.max_abs_coeff()));
        }
}

TEST_CASE("projection kills |x|^2 multiples") {
    const auto r2 = RealPolynomial::norm2(3);
    const auto P = r2 * RealPolynomial::variable(3, 0);
    CHECK(htype::harmonic_projection(P).max_abs_coeff() < 1e-14);
}

TEST_CASE("coefficients satisfy the harmonicity system") {
    for (int d = 2; d <= 6; ++d)
        for (int n = 0; n <= 8; ++n) {
            const auto c = htype::projection_coefficients(d, n);
            CHECK(c[0] == 1.0);
            for (std::size_t s = 0; s + 1 < c.size(); ++s) {
                const double si = static_cast<double>(s);
                CHECK(c[s] + 2 * (si + 1) * (d + 2 * n - 2 * si - 4) * c[s + 1] == doctest::Approx(0.0));
            }
        }
}

TEST_CASE("dimension of degree-n harmonics via the projection") {
    // dim H_n(R^d) = C(n+d-1, d-1) - C(n+d-3, d-1), counted as rank of Pi on monomials.
    for (int d = 2; d <= 4; ++d)
        for (int n = 0; n <= 4; ++n) {
            std::vector<RealPolynomial> images;
            RealPolynomial::for_each_monomial(d, n, [&](const htype::Exponent& e) {
                RealPolynomial m(d);
                m.add_term(e, 1.0);
                images.push_back(htype::harmonic_projection(m));
            });
            std::map<htype::Exponent, int> index;
            for (const auto& im : images)
                for (const auto& [e, c] : im.terms()) index.emplace(e, 0);
            int col = 0;
            for (auto& [e, i] : index) i = col++;
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(std::max(col, 1), static_cast<int>(images.size()));
            for (std::size_t j = 0; j < images.size(); ++j)
                for (const auto& [e, c] : images[j].terms()) M(index[e], static_cast<int>(j)) = c;
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            lu.setThreshold(1e-10);
            const double expected = boost::math::binomial_coefficient<double>(n + d - 1, d - 1) -
                                    (n >= 2 ? boost::math::binomial_coefficient<double>(n + d - 3, d - 1) : 0.0);
            CHECK(lu.rank() == static_cast<int>(expected));
        }
}

TEST_CASE("quadrature rules") {
    const auto gl = htype::gauss_legendre(10);
    double acc = 0;
    for (int i = 0; i < 10; ++i) acc += gl.weights(i) * std::pow(gl.nodes(i), 18);
    CHECK(acc == doctest::Approx(2.0 / 19.0).epsilon(1e-13));

    // int t^alpha e^{-t} t^3 = Gamma(alpha + 4)
    const auto lag = htype::gauss_laguerre(12, 1.5);
    acc = 0;
    for (int i = 0; i < 12; ++i) acc += lag.weights(i) * std::pow(lag.nodes(i), 3);
    CHECK(acc == doctest::Approx(std::tgamma(5.5)).epsilon(1e-12));

    // <x_0^2> over S^2 is 1/3.
    const auto sr = htype::sphere_rule(3, 6);
    acc = 0;
    for (int i = 0; i < sr.size(); ++i) acc += sr.weights(i) * sr.points(0, i) * sr.points(0, i);
    CHECK(acc == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(htype::sphere_volume(2) == doctest::Approx(4 * std::numbers::pi));

    CHECK(htype::integrate([](double x) { return std::exp(-x * x); }, 0.0, INFINITY) ==
          doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-11));
}
