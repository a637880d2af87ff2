#include "htype/twisted.hpp"

#include "htype/errors.hpp"
#include "htype/geometry.hpp"
#include "htype/harmonic.hpp"
#include "htype/quadrature.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace htype {

namespace {

using cd = std::complex<double>;
constexpr cd I1{0.0, 1.0};

Eigen::VectorXd join(const Eigen::VectorXd& X, const Eigen::VectorXd& Z) {
    Eigen::VectorXd out(X.size() + Z.size());
    out << X, Z;
    return out;
}

Jet norm2_jet(const std::vector<Jet>& vars, int k) {
    Jet s(vars.front().dim());
    for (int i = 0; i < k; ++i) s += vars[i] * vars[i];
    return s;
}

void require_unit(const Eigen::VectorXd& u, const char* who) {
    if (std::abs(u.norm() - 1.0) > 1e-12) throw InvalidArgument(std::string(who) + ": K_u must be a unit vector");
}

template <class T>
Jet eval_poly_jet(const Polynomial<T>& P, const std::vector<Jet>& x, int offset) {
    Jet sum(x.front().dim());
    for (const auto& [e, c] : P.terms()) {
        Jet m(x.front().dim(), cd(c));
        for (int i = 0; i < P.dim(); ++i)
            if (e[i] > 0) m *= pow(x[offset + i], e[i]);
        sum += m;
    }
    return sum;
}

double binom(int n, int r) {
    if (r < 0 || n < r || n < 0) return 0.0;
    return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(r));
}

/// Variable m -> sum_j M(m, j) y_j.
ComplexPolynomial substitute_linear(const ComplexPolynomial& P, const Eigen::MatrixXcd& M) {
    const int out_dim = static_cast<int>(M.cols());
    if (M.rows() != P.dim()) throw DimensionMismatch("substitute_linear: size mismatch");
    std::vector<ComplexPolynomial> forms;
    for (int m = 0; m < P.dim(); ++m) {
        std::vector<cd> w(out_dim);
        for (int j = 0; j < out_dim; ++j) w[j] = M(m, j);
        forms.push_back(ComplexPolynomial::linear(w));
    }
    std::map<std::pair<int, int>, ComplexPolynomial> powers;
    auto power = [&](int m, int e) -> const ComplexPolynomial& {
        auto it = powers.find({m, e});
        if (it == powers.end()) it = powers.emplace(std::make_pair(m, e), forms[m].pow(e)).first;
        return it->second;
    };
    ComplexPolynomial out(out_dim);
    for (const auto& [e, c] : P.terms()) {
        ComplexPolynomial term = ComplexPolynomial::constant(out_dim, c);
        for (int m = 0; m < P.dim(); ++m)
            if (e[m] > 0) term = term * power(m, e[m]);
        out += term;
    }
    return out.pruned(0.0);
}

double coefficient_norm2(const ComplexPolynomial& P) {
    double s = 0.0;
    for (const auto& [e, c] : P.terms()) s += std::norm(c);
    return s;
}

std::vector<Eigen::VectorXd> random_points(int n, int dim, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> N01;
    std::vector<Eigen::VectorXd> out;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd v(dim);
        for (int j = 0; j < dim; ++j) v(j) = scale * N01(rng);
        out.push_back(v);
    }
    return out;
}

Eigen::VectorXd random_unit(int dim, std::mt19937_64& rng) {
    Eigen::VectorXd v = random_points(1, dim, rng).front();
    return v / v.norm();
}

int auto_degree(int base, double oscillation) {
    return std::max(8, base + 2 * static_cast<int>(std::ceil(oscillation)) + 20);
}

}  // namespace

std::complex<double> theta_eval(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& X,
                                const Eigen::VectorXd& Ku) {
    if (Q.size() != alg.k() || X.size() != alg.k() || Ku.size() != alg.l())
        throw DimensionMismatch("theta_eval: size mismatch");
    require_unit(Ku, "theta_eval");
    return cd(Q.dot(X), (alg.J(Ku) * Q).dot(X));
}

Jet theta_jet(const Algebra& alg, const Eigen::VectorXd& Q, const std::vector<Jet>& vars, const Eigen::VectorXd& Ku) {
    const Eigen::VectorXd JQ = alg.J(Ku) * Q;
    Jet s(vars.front().dim());
    for (int i = 0; i < alg.k(); ++i) s += vars[i] * cd(Q(i), JQ(i));
    return s;
}

DkCheck dk_eigencheck(const Algebra& alg, const Eigen::VectorXd& Q, const Eigen::VectorXd& K, int p, int q,
                      int samples, std::uint64_t seed) {
    if (p < 0 || q < 0) throw InvalidArgument("dk_eigencheck: exponents must be >= 0");
    const double kn = K.norm();
    if (kn == 0.0) throw InvalidArgument("dk_eigencheck: K must be nonzero");
    const Eigen::VectorXd Ku = K / kn;
    const Eigen::MatrixXd JK = alg.J(K);
    auto f = [&](const std::vector<Jet>& v) {
        const Jet t = theta_jet(alg, Q, v, Ku);
        return pow(t, p) * pow(conj(t), q);
    };
    DkCheck out;
    out.expected = double(kSigma) * double(p - q) * I1 * kn;
    std::mt19937_64 rng(seed);
    double fmax = 0.0, err = 0.0, fd = 0.0;
    for (const Eigen::VectorXd& X : random_points(samples, alg.k(), rng)) {
        const Jet J = f(Jet::variables(X));
        const Eigen::VectorXd field = JK * X;
        cd D = 0.0;
        for (int i = 0; i < alg.k(); ++i) D += field(i) * J.d(i);
        const double h = 1e-5;
        const cd Dfd = (f(Jet::variables(X + h * field)).value() - f(Jet::variables(X - h * field)).value()) / (2 * h);
        if (out.eigenvalue == cd(0.0) && std::abs(J.value()) > 1e-8) out.eigenvalue = D / J.value();
        fmax = std::max(fmax, std::abs(J.value()));
        err = std::max(err, std::abs(D - out.expected * J.value()));
        fd = std::max(fd, std::abs(Dfd - out.expected * J.value()));
    }
    out.residual = fmax > 0 ? err / fmax : err;
    out.fd_residual = fmax > 0 ? fd / fmax : fd;
    return out;
}

std::string to_string(KDomain d) {
    switch (d) {
        case KDomain::FullSpace: return "full_space";
        case KDomain::SphereBundle: return "sphere_bundle";
        case KDomain::LatticePoint: return "lattice_point";
    }
    return "unknown";
}

TwistedFunction TwistedFunction::one_pole(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q) {
    TwistedFunction tf;
    tf.alg = alg;
    tf.poles = Q;
    tf.exponents = {{p, q}};
    if (Q.size() != alg.k()) throw DimensionMismatch("TwistedFunction: pole has wrong size");
    if (p < 0 || q < 0) throw InvalidArgument("TwistedFunction: exponents must be >= 0");
    return tf;
}

TwistedFunction TwistedFunction::multi_pole(const Algebra& alg, const Eigen::MatrixXd& B,
                                            std::vector<std::pair<int, int>> exponents) {
    TwistedFunction tf;
    tf.alg = alg;
    tf.poles = B;
    tf.exponents = std::move(exponents);
    if (B.rows() != alg.k() || static_cast<int>(tf.exponents.size()) != B.cols())
        throw DimensionMismatch("TwistedFunction: one exponent pair per pole column");
    return tf;
}

int TwistedFunction::p() const {
    int s = 0;
    for (const auto& e : exponents) s += e.first;
    return s;
}
int TwistedFunction::q() const {
    int s = 0;
    for (const auto& e : exponents) s += e.second;
    return s;
}
int TwistedFunction::twist_degree() const { return p() + q(); }
int TwistedFunction::angular_degree() const { return angular ? std::max(angular->degree(), 0) : 0; }

void TwistedFunction::validate() const {
    if (poles.rows() != alg.k()) throw DimensionMismatch("TwistedFunction: poles must have k rows");
    if (static_cast<int>(exponents.size()) != poles.cols())
        throw DimensionMismatch("TwistedFunction: one exponent pair per pole");
    for (const auto& [p, q] : exponents)
        if (p < 0 || q < 0) throw InvalidArgument("TwistedFunction: exponents must be >= 0");
    if (project_x && poles.cols() != 1) throw InvalidArgument("TwistedFunction: Pi_X is implemented for one pole");
    if (angular && angular->dim() != alg.l()) throw DimensionMismatch("TwistedFunction: angular factor lives on R^l");
    if (domain == KDomain::SphereBundle && !radius) throw InvalidArgument("TwistedFunction: sphere bundle needs R(x)");
    if (domain == KDomain::LatticePoint) {
        if (lattice_point.size() != alg.l()) throw DimensionMismatch("TwistedFunction: lattice point has wrong size");
        if (project_k) throw InvalidArgument("TwistedFunction: Pi_K is undefined on a lattice point");
    }
    if (project_k && *project_k < 0) throw InvalidArgument("TwistedFunction: s must be >= 0");
    if (domain == KDomain::FullSpace && (radial_nodes < 1 || !(radial_cutoff > 0)))
        throw InvalidArgument("TwistedFunction: bad radial quadrature");
}

Jet project_x_theta(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, const std::vector<Jet>& vars,
                    const Eigen::VectorXd& Ku) {
    const Jet t = theta_jet(alg, Q, vars, Ku);
    const Jet tb = conj(t);
    const Jet x2 = norm2_jet(vars, alg.k());
    const std::vector<double> c = projection_coefficients(alg.k(), p + q);
    const double q4 = 4.0 * Q.squaredNorm();
    Jet out(vars.front().dim());
    for (int s = 0; s <= std::min(p, q); ++s) {
        const double falling = boost::math::factorial<double>(p) * boost::math::factorial<double>(q) /
                               (boost::math::factorial<double>(p - s) * boost::math::factorial<double>(q - s));
        out += (c[s] * std::pow(q4, s) * falling) * (pow(x2, s) * pow(t, p - s) * pow(tb, q - s));
    }
    return out;
}

ComplexPolynomial theta_polynomial(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q,
                                   const Eigen::VectorXd& Ku) {
    require_unit(Ku, "theta_polynomial");
    const Eigen::VectorXd JQ = alg.J(Ku) * Q;
    std::vector<cd> w(alg.k()), wb(alg.k());
    for (int i = 0; i < alg.k(); ++i) {
        w[i] = cd(Q(i), JQ(i));
        wb[i] = std::conj(w[i]);
    }
    return ComplexPolynomial::linear(w).pow(p) * ComplexPolynomial::linear(wb).pow(q);
}

Jet twist_factor(const TwistedFunction& tf, const std::vector<Jet>& vars, const Eigen::VectorXd& u) {
    Jet F(vars.front().dim(), 1.0);
    if (tf.project_x) {
        F = project_x_theta(tf.alg, tf.poles.col(0), tf.exponents[0].first, tf.exponents[0].second, vars, u);
    } else {
        for (int j = 0; j < tf.poles.cols(); ++j) {
            const auto [p, q] = tf.exponents[j];
            if (p == 0 && q == 0) continue;
            const Jet t = theta_jet(tf.alg, tf.poles.col(j), vars, u);
            F *= pow(t, p) * pow(conj(t), q);
        }
    }
    if (tf.angular) F *= tf.angular->evaluate(u);
    return F;
}

long long spherical_harmonic_dimension(int l, int s) {
    if (l < 1 || s < 0) throw InvalidArgument("spherical_harmonic_dimension: bad arguments");
    if (l == 1) return s <= 1 ? 1 : 0;
    return static_cast<long long>(std::llround(binom(s + l - 1, l - 1) - binom(s + l - 3, l - 1)));
}

double zonal_kernel(int l, int s, double t) {
    if (l < 1 || s < 0) throw InvalidArgument("zonal_kernel: bad arguments");
    t = std::clamp(t, -1.0, 1.0);
    if (l == 1) return s == 0 ? 1.0 : (s == 1 ? t : 0.0);
    if (s == 0) return 1.0;
    if (l == 2) return 2.0 * std::cos(s * std::acos(t));
    const double lambda = l / 2.0 - 1.0;
    return static_cast<double>(spherical_harmonic_dimension(l, s)) *
           boost::math::gegenbauer(static_cast<unsigned>(s), lambda, t) /
           boost::math::gegenbauer(static_cast<unsigned>(s), lambda, 1.0);
}

Jet project_k(const TwistedFunction& tf, const std::vector<Jet>& vars, const Eigen::VectorXd& u, int s) {
    const int l = tf.alg.l();
    const SphereRule rule = sphere_rule(l, tf.twist_degree() + tf.angular_degree() + s);
    Jet out(vars.front().dim());
    for (int j = 0; j < rule.size(); ++j) {
        const Eigen::VectorXd v = rule.points.col(j);
        const double w = rule.weights(j) * zonal_kernel(l, s, u.dot(v));
        if (w == 0.0) continue;
        out += twist_factor(tf, vars, v) * w;
    }
    return out;
}

Jet twisted_transform_jet(const TwistedFunction& tf, const Eigen::VectorXd& X, const Eigen::VectorXd& Z) {
    tf.validate();
    const int k = tf.alg.k();
    const int l = tf.alg.l();
    if (X.size() != k || Z.size() != l) throw DimensionMismatch("twisted_transform: point has wrong size");
    const std::vector<Jet> vars = Jet::variables(join(X, Z));
    const int n = k + l;
    const Jet x2 = norm2_jet(vars, k);
    auto profile = [&](const Jet& kk) { return tf.profile ? tf.profile(x2, kk) : Jet(n, 1.0); };
    auto angular_part = [&](const Eigen::VectorXd& u) {
        return tf.project_k ? project_k(tf, vars, u, *tf.project_k) : twist_factor(tf, vars, u);
    };
    auto zdot = [&](const Eigen::VectorXd& u) {
        Jet s(n);
        for (int a = 0; a < l; ++a) s += vars[k + a] * u(a);
        return s;
    };
    const int base = tf.twist_degree() + tf.angular_degree() + (tf.project_k ? *tf.project_k : 0);

    switch (tf.domain) {
        case KDomain::LatticePoint: {
            const Eigen::VectorXd K = 2.0 * std::numbers::pi * tf.lattice_point;
            const double kn = K.norm();
            Jet F(n, 1.0);
            if (kn > 0.0) F = twist_factor(tf, vars, K / kn);
            else if (tf.twist_degree() > 0 || tf.angular) throw InvalidArgument("twisted_transform: K_u undefined at 0");
            return profile(Jet(n, kn)) * F * exp(zdot(K) * I1);
        }
        case KDomain::SphereBundle: {
            const Jet R = tf.radius(x2);
            const int deg = tf.sphere_degree > 0 ? tf.sphere_degree : auto_degree(base, std::abs(R.value()) * Z.norm());
            const SphereRule rule = sphere_rule(l, deg);
            Jet out(n);
            for (int j = 0; j < rule.size(); ++j) {
                const Eigen::VectorXd u = rule.points.col(j);
                out += (exp(R * zdot(u) * I1) * angular_part(u)) * rule.weights(j);
            }
            return out * profile(R);
        }
        case KDomain::FullSpace: {
            const GaussRule g = gauss_legendre(tf.radial_nodes);
            const double kc = tf.radial_cutoff;
            const int deg = tf.sphere_degree > 0 ? tf.sphere_degree : auto_degree(base, kc * Z.norm());
            const SphereRule rule = sphere_rule(l, deg);
            const double area = sphere_volume(l - 1);
            std::vector<double> kk(g.nodes.size()), wk(g.nodes.size());
            std::vector<Jet> prof;
            for (int r = 0; r < g.nodes.size(); ++r) {
                kk[r] = 0.5 * kc * (g.nodes(r) + 1.0);
                wk[r] = 0.5 * kc * g.weights(r) * std::pow(kk[r], l - 1) * area;
                prof.push_back(profile(Jet(n, kk[r])) * wk[r]);
            }
            Jet out(n);
            for (int j = 0; j < rule.size(); ++j) {
                const Eigen::VectorXd u = rule.points.col(j);
                const Jet zu = zdot(u);
                Jet radial(n);
                for (std::size_t r = 0; r < kk.size(); ++r) radial += prof[r] * exp(zu * (I1 * kk[r]));
                out += (radial * angular_part(u)) * rule.weights(j);
            }
            return out;
        }
    }
    throw InvalidArgument("twisted_transform: unknown domain");
}

std::complex<double> twisted_transform(const TwistedFunction& tf, const Eigen::VectorXd& X, const Eigen::VectorXd& Z) {
    return twisted_transform_jet(tf, X, Z).value();
}

ZCrystalReduction zcrystal_reduce(const Algebra& alg, const Eigen::VectorXd& Zgamma) {
    if (Zgamma.size() != alg.l()) throw DimensionMismatch("zcrystal_reduce: Z_gamma has wrong size");
    ZCrystalReduction r;
    r.mu = std::numbers::pi * Zgamma.norm();
    r.K = 2.0 * std::numbers::pi * Zgamma;
    if (r.K.norm() > 0.0) r.Ku = r.K / r.K.norm();
    return r;
}

ZCrystalCheck zcrystal_apply(const Algebra& alg, const Eigen::VectorXd& Zgamma, const JetField& psi,
                             const Eigen::VectorXd& X) {
    const ZCrystalReduction red = zcrystal_reduce(alg, Zgamma);
    const int k = alg.k();
    const int l = alg.l();
    JetField f = [&](const std::vector<Jet>& v) {
        std::vector<Jet> xs(v.begin(), v.begin() + k);
        Jet ph(v.front().dim());
        for (int a = 0; a < l; ++a) ph += v[k + a] * red.K(a);
        return psi(xs) * exp(ph * I1);
    };
    ZCrystalCheck out;
    out.direct = laplacian(alg, f, X, Eigen::VectorXd::Zero(l));
    const Jet P = evaluate_jet(psi, X);
    const Eigen::VectorXd JKX = alg.J(red.K) * X;
    cd dx = 0.0, D = 0.0;
    for (int i = 0; i < k; ++i) {
        dx += P.d2(i, i);
        D += JKX(i) * P.d(i);
    }
    out.reduced = dx + I1 * D - 0.25 * JKX.squaredNorm() * P.value() - red.K.squaredNorm() * P.value();
    return out;
}

std::vector<int> projth_window(int v, int a) {
    if (v < 0 || a < 0) throw InvalidArgument("projth_window: orders must be >= 0");
    std::vector<int> out;
    for (int s = std::abs(v - a); s <= v + a; s += 2) out.push_back(s);
    return out;
}

bool projth_admissible(int v, int a, int s) {
    const auto w = projth_window(v, a);
    return std::find(w.begin(), w.end(), s) != w.end();
}

BoundaryFunction boundary_function(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, int s, int i,
                                   const BoundaryCondition& bc, RadiusJet ball_radius,
                                   std::optional<RealPolynomial> angular) {
    if (!ball_radius) throw InvalidArgument("boundary_function: missing ball radius");
    if (i < 1) throw InvalidArgument("boundary_function: i is 1-based");
    BoundaryFunction bf;
    const std::vector<double> lam = zball_eigenvalues(alg.l(), s, 1.0, bc, i);
    bf.root = std::sqrt(std::max(0.0, lam.at(i - 1)));
    bf.tf = TwistedFunction::one_pole(alg, Q, p, q);
    bf.tf.domain = KDomain::SphereBundle;
    const double root = bf.root;
    bf.tf.radius = [root, ball_radius](const Jet& x2) { return Jet(x2.dim(), root) / ball_radius(x2); };
    bf.tf.project_k = s;
    bf.tf.project_x = true;
    bf.tf.angular = std::move(angular);
    bf.outside_window = !projth_admissible(bf.tf.angular_degree(), p + q, s);
    bf.ball_radius = std::move(ball_radius);
    return bf;
}

BoundaryResidual boundary_residual(const BoundaryFunction& bf, const BoundaryCondition& bc, int samples,
                                   std::uint64_t seed) {
    const Algebra& alg = bf.tf.alg;
    std::mt19937_64 rng(seed);
    BoundaryResidual out;
    for (const Eigen::VectorXd& X : random_points(samples, alg.k(), rng, 0.7)) {
        const Jet x2(1, X.squaredNorm());
        const double Rb = bf.ball_radius(x2).value().real();
        const Eigen::VectorXd dir = random_unit(alg.l(), rng);
        for (double frac : {0.0, 0.3, 0.6})
            out.scale = std::max(out.scale, std::abs(twisted_transform(bf.tf, X, frac * Rb * dir)));
        const Jet f = twisted_transform_jet(bf.tf, X, Rb * dir);
        double r = 0.0;
        if (bc.kind == BoundaryKind::Dirichlet) {
            r = std::abs(f.value());
        } else {
            cd dr = 0.0;
            for (int a = 0; a < alg.l(); ++a) dr += dir(a) * f.d(alg.k() + a);
            r = std::abs(dr);
            if (bc.kind == BoundaryKind::Robin) r = std::abs(bc.A * dr + bc.B * f.value());
        }
        out.residual = std::max(out.residual, r);
    }
    return out;
}

MCheck m_operator_eigencheck(const TwistedFunction& tf, int samples, std::uint64_t seed) {
    if (tf.domain != KDomain::SphereBundle) throw InvalidArgument("m_operator_eigencheck: needs a sphere bundle");
    if (tf.project_k) throw InvalidArgument("m_operator_eigencheck: Pi_K does not commute with D_K");
    const Algebra& alg = tf.alg;
    std::mt19937_64 rng(seed);
    MCheck out;
    double fmax = 0.0, em = 0.0, ez = 0.0;
    bool first = true;
    for (int t = 0; t < samples; ++t) {
        const Eigen::VectorXd X = random_points(1, alg.k(), rng, 0.8).front();
        const Eigen::VectorXd Z = random_points(1, alg.l(), rng, 0.5).front();
        const double R = tf.radius(Jet(1, X.squaredNorm())).value().real();
        const cd expected = double(kSigma) * double(tf.q() - tf.p()) * R;
        const Jet f = twisted_transform_jet(tf, X, Z);
        const LaplacianParts parts = laplacian_parts(alg, f, X);
        if (first && std::abs(f.value()) > 1e-8) {
            out.eigenvalue = parts.spin / f.value();
            out.delta_z = parts.delta_z / f.value();
            out.expected = expected;
            first = false;
        }
        fmax = std::max(fmax, std::abs(f.value()));
        em = std::max(em, std::abs(parts.spin - expected * f.value()));
        ez = std::max(ez, std::abs(parts.delta_z + R * R * f.value()));
    }
    out.residual = fmax > 0 ? em / fmax : em;
    out.delta_z_residual = fmax > 0 ? ez / fmax : ez;
    return out;
}

FrameConversion frame_conversion(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                 const Eigen::VectorXd& Ku) {
    FrameConversion c;
    c.frame = frame_matrix(alg, B, Q, Ku);
    const int k = alg.k();
    const int h = k / 2;
    const Eigen::MatrixXd top = c.frame.A.topRows(h);
    const Eigen::MatrixXd bot = c.frame.A.bottomRows(h);
    c.to_twisted.resize(k, k);
    c.to_twisted.topRows(h) = top.cast<cd>() + I1 * bot.cast<cd>();
    c.to_twisted.bottomRows(h) = top.cast<cd>() - I1 * bot.cast<cd>();
    if (!c.frame.singular) c.to_straight = c.to_twisted.inverse();
    return c;
}

ComplexPolynomial twisted_to_straight(const ComplexPolynomial& P, const FrameConversion& conv) {
    return substitute_linear(P, conv.to_twisted);
}

ComplexPolynomial straight_to_twisted(const ComplexPolynomial& S, const FrameConversion& conv) {
    if (conv.frame.singular || conv.to_straight.size() == 0)
        throw NumericalFailure("straight_to_twisted: K_u lies on the singular set", std::abs(conv.frame.det));
    return substitute_linear(S, conv.to_straight);
}

double singular_cutoff(double abs_det, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("singular_cutoff: eps must be positive");
    const double x = std::clamp((abs_det - eps / 2.0) / (eps / 2.0), 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

RoundTrip round_trip(const Algebra& alg, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                     const ComplexPolynomial& S, double eps, int sphere_degree) {
    const SphereRule rule = sphere_rule(alg.l(), sphere_degree);
    const double norm2 = coefficient_norm2(S);
    RoundTrip out;
    double err = 0.0;
    for (int j = 0; j < rule.size(); ++j) {
        const FrameConversion conv = frame_conversion(alg, B, Q, rule.points.col(j));
        const double psi = singular_cutoff(std::abs(conv.frame.det), eps);
        if (psi < 1.0) out.cutoff_mass += rule.weights(j);
        if (psi == 0.0) {
            err += rule.weights(j) * norm2;
            continue;
        }
        const ComplexPolynomial T = straight_to_twisted(S, conv) * cd(psi);
        err += rule.weights(j) * coefficient_norm2(twisted_to_straight(T, conv) - S);
    }
    out.l2_error = std::sqrt(err);
    return out;
}

RouletteState roulette_one_turn(const RouletteState& state, const Eigen::MatrixXcd& S, int p, int q) {
    const int d = static_cast<int>(state.f.size());
    if (static_cast<int>(state.index.size()) != d) throw DimensionMismatch("roulette_one_turn: index/function count");
    if (S.rows() != d || S.cols() != d) throw InvalidArgument("roulette_one_turn: S must be d x d");
    int len = 1;
    for (const auto& f : state.f) len = std::max<int>(len, static_cast<int>(f.size()));
    auto padded = [&](const Eigen::VectorXcd& f) {
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(len + 1);
        g.head(f.size()) = f;
        return g;
    };
    RouletteState out;
    out.index = state.index;
    out.depth = state.depth + 1;
    const cd pref = -double(p - q) * I1;
    for (int a = 0; a < d; ++a) {
        Eigen::VectorXcd mix = Eigen::VectorXcd::Zero(len + 1);
        for (int b = 0; b < d; ++b) mix += S(a, b) * padded(state.f[b]);
        Eigen::VectorXcd res = Eigen::VectorXcd::Zero(len + 1);
        const Eigen::VectorXcd fa = padded(state.f[a]);
        for (int j = 0; j < len; ++j) res(j + 1) += fa(j);         // k f_alpha
        for (int j = 1; j <= len; ++j) res(j - 1) += double(j) * mix(j);  // d/dk
        out.f.push_back(pref * res);
    }
    return out;
}

std::vector<RealPolynomial> harmonic_basis(int l, int v) {
    std::vector<RealPolynomial> out;
    if (v < 0) return out;
    std::vector<RealPolynomial> cand;
    RealPolynomial::for_each_monomial(l, v, [&](const Exponent& e) {
        RealPolynomial m(l);
        m.add_term(e, 1.0);
        cand.push_back(l >= 2 ? harmonic_projection(m) : m);
    });
    std::map<Exponent, int> key;
    RealPolynomial::for_each_monomial(l, v, [&](const Exponent& e) { key.emplace(e, static_cast<int>(key.size())); });
    Eigen::MatrixXd M(static_cast<int>(key.size()), 0);
    int rank = 0;
    for (const RealPolynomial& c : cand) {
        if (c.is_zero()) continue;
        Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<int>(key.size()));
        for (const auto& [e, coef] : c.terms()) col(key.at(e)) = coef;
        Eigen::MatrixXd trial(M.rows(), M.cols() + 1);
        trial << M, col;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
        lu.setThreshold(1e-10);
        if (lu.rank() > rank) {
            M = trial;
            rank = static_cast<int>(lu.rank());
            out.push_back(c);
        }
    }
    if (l == 1) {
        out.clear();
        if (v <= 1) {
            RealPolynomial m(1);
            m.add_term(Exponent{v}, 1.0);
            out.push_back(m);
        }
    }
    return out;
}

SpinMatrix spin_matrix(const Algebra& alg, const Eigen::VectorXd& Q, int p, int q, int v, int samples,
                       std::uint64_t seed) {
    const int k = alg.k();
    const int l = alg.l();
    if (v + p + q > 4) throw ResourceError("spin_matrix: index set limited to v + a <= 4");
    SpinMatrix out;
    for (int s = 0; s <= v + p + q; ++s)
        if (spherical_harmonic_dimension(l, s) > 0) out.strata.push_back(s);
    const int ns = static_cast<int>(out.strata.size());
    const std::vector<RealPolynomial> family = harmonic_basis(l, v);
    const int deg = v + p + q;

    // F(X, K) = h(K/|K|) Theta^p conj^q, as a jet in (X, K).
    auto F_jet = [&](const RealPolynomial& h, const Eigen::VectorXd& X, const Eigen::VectorXd& K) {
        const std::vector<Jet> vars = Jet::variables(join(X, K));
        const int n = k + l;
        Jet kn2(n);
        for (int a = 0; a < l; ++a) kn2 += vars[k + a] * vars[k + a];
        const Jet inv = Jet(n, 1.0) / sqrt(kn2);
        std::vector<Jet> u;
        for (int a = 0; a < l; ++a) u.push_back(vars[k + a] * inv);
        Jet w_re(n), w_im(n);
        for (int i = 0; i < k; ++i) w_re += vars[i] * Q(i);
        for (int a = 0; a < l; ++a) {
            const Eigen::VectorXd JQ = alg.J(a) * Q;
            Jet s(n);
            for (int i = 0; i < k; ++i) s += vars[i] * JQ(i);
            w_im += u[a] * s;
        }
        const Jet t = w_re + w_im * I1;
        return eval_poly_jet(h, u, 0) * pow(t, p) * pow(conj(t), q);
    };
    // M_perp F at |K| = 1 and D-commutator integrand.
    auto M_perp = [&](const RealPolynomial& h, const Eigen::VectorXd& X, const Eigen::VectorXd& w) {
        const Jet J = F_jet(h, X, w);
        cd s = 0.0;
        for (int a = 0; a < l; ++a) {
            const Eigen::VectorXd JX = alg.J(a) * X;
            for (int i = 0; i < k; ++i) s += JX(i) * J.d2(k + a, i);
        }
        return s;
    };
    auto D_at = [&](const RealPolynomial& h, const Eigen::VectorXd& X, const Eigen::VectorXd& w,
                    const Eigen::VectorXd& dir) {
        const Jet J = F_jet(h, X, w);
        const Eigen::VectorXd field = alg.J(dir) * X;
        cd s = 0.0;
        for (int i = 0; i < k; ++i) s += field(i) * J.d(i);
        return s;
    };

    std::mt19937_64 rng(seed);
    const SphereRule rule = sphere_rule(l, 2 * deg + 2 * ns + 4);
    const int rows = samples * static_cast<int>(family.size());
    std::vector<Eigen::MatrixXcd> A(ns, Eigen::MatrixXcd(rows, ns));
    Eigen::MatrixXcd basis(rows, ns);
    Eigen::MatrixXcd lhs(rows, ns);
    int row = 0;
    for (int t = 0; t < samples; ++t) {
        const Eigen::VectorXd X = random_points(1, k, rng).front();
        const Eigen::VectorXd u = random_unit(l, rng);
        for (const RealPolynomial& h : family) {
            std::vector<cd> Mv(rule.size()), Du(rule.size()), Dw(rule.size());
            for (int j = 0; j < rule.size(); ++j) {
                const Eigen::VectorXd w = rule.points.col(j);
                Mv[j] = M_perp(h, X, w);
                Du[j] = D_at(h, X, w, u);
                Dw[j] = D_at(h, X, w, w);
            }
            for (int c = 0; c < ns; ++c) {
                cd b = 0.0, L = 0.0;
                for (int j = 0; j < rule.size(); ++j) {
                    const double z = rule.weights(j) * zonal_kernel(l, out.strata[c], u.dot(rule.points.col(j)));
                    b += z * Mv[j];
                    L += z * (Du[j] - Dw[j]);
                }
                basis(row, c) = b;
                lhs(row, c) = L;
            }
            ++row;
        }
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(basis);
    cod.setThreshold(1e-10);
    out.rank = static_cast<int>(cod.rank());
    out.S = cod.solve(lhs).transpose();
    const Eigen::MatrixXcd fit = basis * out.S.transpose();
    const double scale = std::max(lhs.norm(), 1e-300);
    out.residual = (fit - lhs).norm() / scale;
    return out;
}

GramRank twist_gram_rank(const Algebra& alg, const Eigen::MatrixXd& B,
                         const std::vector<std::vector<std::pair<int, int>>>& exponent_sets,
                         const Eigen::VectorXd& Ku, int samples, std::uint64_t seed) {
    require_unit(Ku, "twist_gram_rank");
    std::mt19937_64 rng(seed);
    const int m = static_cast<int>(exponent_sets.size());
    Eigen::MatrixXcd V(samples, m);
    const auto pts = random_points(samples, alg.k(), rng);
    for (int r = 0; r < samples; ++r)
        for (int c = 0; c < m; ++c) {
            if (static_cast<int>(exponent_sets[c].size()) != B.cols())
                throw DimensionMismatch("twist_gram_rank: one exponent pair per pole");
            cd val = 1.0;
            for (int j = 0; j < B.cols(); ++j) {
                const cd z = theta_eval(alg, B.col(j), pts[r], Ku);
                val *= std::pow(z, exponent_sets[c][j].first) * std::pow(std::conj(z), exponent_sets[c][j].second);
            }
            V(r, c) = val;
        }
    const Eigen::MatrixXcd G = V.adjoint() * V;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    GramRank out;
    out.singular_values = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, out.singular_values.size() ? out.singular_values(0) : 0.0);
    for (int i = 0; i < out.singular_values.size(); ++i)
        if (out.singular_values(i) > tol) ++out.rank;
    return out;
}

long long harmonic_dimension_bruteforce(int k, int p, int q) {
    if (k < 2 || k % 2 != 0 || p < 0 || q < 0) throw InvalidArgument("harmonic_dimension_bruteforce: bad arguments");
    const int N = k / 2;
    std::vector<ComplexPolynomial> z, zb;
    for (int j = 0; j < N; ++j) {
        std::vector<cd> w(k, 0.0);
        w[j] = 1.0;
        w[j + N] = I1;
        z.push_back(ComplexPolynomial::linear(w));
        w[j + N] = -I1;
        zb.push_back(ComplexPolynomial::linear(w));
    }
    std::vector<ComplexPolynomial> images;
    long long count = 0;
    ComplexPolynomial::for_each_monomial(N, p, [&](const Exponent& a) {
        ComplexPolynomial::for_each_monomial(N, q, [&](const Exponent& b) {
            ComplexPolynomial m = ComplexPolynomial::constant(k, 1.0);
            for (int j = 0; j < N; ++j) m = m * z[j].pow(a[j]) * zb[j].pow(b[j]);
            images.push_back(m.laplacian());
            ++count;
        });
    });
    std::map<Exponent, int> key;
    for (const auto& im : images)
        for (const auto& [e, c] : im.terms()) key.emplace(e, 0);
    int idx = 0;
    for (auto& [e, i] : key) i = idx++;
    if (key.empty()) return count;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<int>(key.size()), static_cast<int>(images.size()));
    for (int c = 0; c < static_cast<int>(images.size()); ++c)
        for (const auto& [e, v] : images[c].terms()) M(key.at(e), c) = v;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    lu.setThreshold(1e-10);
    return count - lu.rank();
}

}  // namespace htype
