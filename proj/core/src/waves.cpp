#include "htype/waves.hpp"

#include "htype/errors.hpp"
#include "htype/glz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace htype {

namespace {

using cd = std::complex<double>;
constexpr cd I1{0.0, 1.0};

void add(ExpCoefficient& c, int power, cd v) {
    if (v == cd(0.0)) return;
    c[power] += v;
    if (c[power] == cd(0.0)) c.erase(power);
}

cd evaluate(const ExpCoefficient& c, double E) {
    cd s = 0.0;
    for (const auto& [p, v] : c) s += v * std::pow(E, p);
    return s;
}

ExpCoefficient sum(const ExpCoefficient& a, const ExpCoefficient& b) {
    ExpCoefficient out = a;
    for (const auto& [p, v] : b) add(out, p, v);
    return out;
}

double distance(const ExpCoefficient& a, const ExpCoefficient& b) {
    double d = 0.0;
    for (const auto& [p, v] : a) {
        const auto it = b.find(p);
        d = std::max(d, std::abs(v - (it == b.end() ? cd(0.0) : it->second)));
    }
    for (const auto& [p, v] : b)
        if (!a.count(p)) d = std::max(d, std::abs(v));
    return d;
}

ExpCoefficient negate_powers(const ExpCoefficient& c, double sign) {
    ExpCoefficient out;
    for (const auto& [p, v] : c) add(out, -p, sign * v);
    return out;
}

Eigen::VectorXd join3(const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double t) {
    Eigen::VectorXd out(X.size() + Z.size() + 1);
    out << X, Z, t;
    return out;
}

Jet radial_jet(const RadialFunction& rf, const Jet& x2) {
    const double t = x2.value().real();
    return x2.chain(rf.f(t), rf.df(t), rf.d2f(t));
}

}  // namespace

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0) || !(c > 0.0)) throw InvalidArgument("PhysicalConstants: hbar and c must be positive");
    if (!(m >= 0.0)) throw InvalidArgument("PhysicalConstants: m must be >= 0");
}

double dispersion_omega(double k, const PhysicalConstants& pc) {
    pc.validate();
    const double mc = pc.m * pc.c / pc.hbar;
    return pc.c * std::sqrt(k * k + mc * mc);
}

double relativistic_residual(const Eigen::VectorXd& K, const PhysicalConstants& pc) {
    const double k2 = K.squaredNorm();
    const double w = dispersion_omega(std::sqrt(k2), pc);
    const double mc = pc.m * pc.c / pc.hbar;
    return std::abs(-k2 + w * w / (pc.c * pc.c) - mc * mc);
}

NonrelLink nonrelativistic_link(const Eigen::VectorXd& K, const PhysicalConstants& pc, bool time_reversed, int samples,
                                std::uint64_t seed) {
    pc.validate();
    if (!(pc.m > 0.0)) throw InvalidArgument("nonrelativistic_link: needs m > 0");
    const int l = static_cast<int>(K.size());
    NonrelLink out;
    const double k = K.norm();
    out.omega = dispersion_omega(k, pc);
    out.omega_tilde = out.omega - pc.m * pc.c * pc.c / pc.hbar;
    out.omega_taylor = pc.hbar * k * k / (2.0 * pc.m);
    const double c2 = pc.c * pc.c;
    const double mc = pc.m * pc.c / pc.hbar;

    auto wave = [&](double w) {
        return JetField([&, w](const std::vector<Jet>& v) {
            const double sgn = time_reversed ? -1.0 : 1.0;
            Jet ph(l + 1);
            for (int a = 0; a < l; ++a) ph += v[a] * K(a);
            ph = ph - v[l] * (w * sgn);
            const Jet e = exp(ph * I1);
            return time_reversed ? conj(e) : e;
        });
    };
    // nabla^2 f - c^{-2} f_tt - m^2c^2/hbar^2 f and nabla^2 f + 2im/hbar f_t - c^{-2} f_tt.
    auto relativistic = [&](const Jet& f) {
        cd s = -mc * mc * f.value() - f.d2(l, l) / c2;
        for (int a = 0; a < l; ++a) s += f.d2(a, a);
        return s;
    };
    auto nonrel = [&](const Jet& f) {
        cd s = 2.0 * I1 * pc.m / pc.hbar * f.d(l) - f.d2(l, l) / c2;
        for (int a = 0; a < l; ++a) s += f.d2(a, a);
        return s;
    };
    const double shift = pc.m * c2 / pc.hbar;
    JetField relativistic_wave = [&](const std::vector<Jet>& v) {
        // e^{-i m c^2 t / hbar} psi~; under time reversal the prefactor reverses with psi~.
        const double sgn = time_reversed ? -1.0 : 1.0;
        Jet pre = exp(v[l] * (-I1 * shift * sgn));
        if (time_reversed) pre = conj(pre);
        return pre * wave(out.omega_tilde)(v);
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(l + 1);
        for (int i = 0; i <= l; ++i) x(i) = N01(rng);
        const Jet a = evaluate_jet(relativistic_wave, x);
        const Jet b = evaluate_jet(wave(out.omega_tilde), x);
        const Jet c = evaluate_jet(wave(out.omega_taylor), x);
        out.link_residual = std::max(out.link_residual, std::abs(relativistic(a)) / std::abs(a.value()));
        out.nonrel_residual = std::max(out.nonrel_residual, std::abs(nonrel(b)) / std::abs(b.value()));
        out.taylor_residual = std::max(out.taylor_residual, std::abs(nonrel(c)) / std::abs(c.value()));
    }
    return out;
}

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::RelativisticWave: return "relativistic_wave";
        case OperatorKind::Neutrino: return "neutrino";
        case OperatorKind::Schrodinger: return "schrodinger";
        case OperatorKind::TotalSchrodinger: return "total_schrodinger";
        case OperatorKind::FullStatic: return "full_static";
        case OperatorKind::Meson: return "meson";
        case OperatorKind::ShrinkingNeutrino: return "shrinking_neutrino";
        case OperatorKind::ExpandingSchrodinger: return "expanding_schrodinger";
        case OperatorKind::Tractor: return "tractor";
        case OperatorKind::FullSolvable: return "full_solvable";
    }
    return "unknown";
}

bool is_solvable_kind(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Meson:
        case OperatorKind::ShrinkingNeutrino:
        case OperatorKind::ExpandingSchrodinger:
        case OperatorKind::Tractor:
        case OperatorKind::FullSolvable: return true;
        default: return false;
    }
}

SpacetimeOperator static_operator(OperatorKind kind, const PhysicalConstants& pc, int k, int l) {
    pc.validate();
    if (is_solvable_kind(kind)) throw InvalidArgument("static_operator: " + to_string(kind) + " lives on the solvable model");
    if (k < 1 || l < 1) throw InvalidArgument("static_operator: bad dimensions");
    SpacetimeOperator op;
    op.kind = kind;
    op.q = 1.0 / pc.c;
    const double c2 = pc.c * pc.c;
    const cd im = 2.0 * I1 * pc.m / pc.hbar;
    const double mc = pc.m * pc.c / pc.hbar;
    switch (kind) {
        case OperatorKind::RelativisticWave:
            add(op.delta_z, 0, 1.0);
            add(op.dtt, 0, -1.0 / c2);
            add(op.constant, 0, -mc * mc);
            break;
        case OperatorKind::Neutrino:
            add(op.delta_z, 0, 1.0);
            add(op.dt, 0, im);
            add(op.dtt, 0, -1.0 / c2);
            break;
        case OperatorKind::Schrodinger:
            add(op.nil, 0, 1.0);
            add(op.dt, 0, -im);
            break;
        case OperatorKind::TotalSchrodinger:
            add(op.nil, 0, 1.0);
            add(op.delta_z, 0, 1.0);
            add(op.dt, 0, -im);
            break;
        case OperatorKind::FullStatic:
            add(op.delta_z, 0, 1.0);
            add(op.dtt, 0, -1.0 / c2);
            add(op.nil, 0, 1.0);
            break;
        default: break;
    }
    return op;
}

SpacetimeOperator solvable_operator(OperatorKind kind, const PhysicalConstants& pc, int k, int l, double q) {
    pc.validate();
    if (!is_solvable_kind(kind)) throw InvalidArgument("solvable_operator: " + to_string(kind) + " lives on the static model");
    if (k < 1 || l < 1 || !(q > 0.0)) throw InvalidArgument("solvable_operator: bad parameters");
    SpacetimeOperator op;
    op.kind = kind;
    op.solvable = true;
    op.q = q;
    const cd im = 2.0 * I1 * pc.m / pc.hbar;
    const double trace = q * (k / 2.0 + l);
    switch (kind) {
        case OperatorKind::Meson:
            add(op.delta_z, 2, 1.0);
            add(op.dt, 0, 1.0);
            add(op.dtt, 0, -1.0);
            break;
        case OperatorKind::ShrinkingNeutrino:
            add(op.delta_z, 2, 1.0);
            add(op.dt, 0, 1.0);
            add(op.dt, 1, im);
            add(op.dtt, 0, -1.0);
            break;
        case OperatorKind::ExpandingSchrodinger:
            add(op.nil, 1, 1.0);
            add(op.dt, 1, -im);
            break;
        case OperatorKind::Tractor: add(op.dt, 0, trace - 1.0); break;
        case OperatorKind::FullSolvable:
            add(op.delta_z, 2, 1.0);
            add(op.dtt, 0, -1.0);
            add(op.nil, 1, 1.0);
            add(op.dt, 0, trace);
            break;
        default: break;
    }
    return op;
}

SpacetimeOperator operator+(const SpacetimeOperator& a, const SpacetimeOperator& b) {
    if (a.solvable != b.solvable || a.reversed != b.reversed || a.q != b.q)
        throw InvalidArgument("SpacetimeOperator: operands live on different models");
    SpacetimeOperator out = a;
    out.delta_z = sum(a.delta_z, b.delta_z);
    out.nil = sum(a.nil, b.nil);
    out.dt = sum(a.dt, b.dt);
    out.dtt = sum(a.dtt, b.dtt);
    out.constant = sum(a.constant, b.constant);
    return out;
}

double coefficient_distance(const SpacetimeOperator& a, const SpacetimeOperator& b) {
    return std::max({distance(a.delta_z, b.delta_z), distance(a.nil, b.nil), distance(a.dt, b.dt),
                     distance(a.dtt, b.dtt), distance(a.constant, b.constant)});
}

SpacetimeOperator time_reversed(const SpacetimeOperator& op) {
    if (!op.solvable) throw InvalidArgument("time_reversed: only solvable operators carry T");
    SpacetimeOperator out = op;
    out.reversed = !op.reversed;
    out.delta_z = negate_powers(op.delta_z, 1.0);
    out.nil = negate_powers(op.nil, 1.0);
    out.dt = negate_powers(op.dt, -1.0);
    out.dtt = negate_powers(op.dtt, 1.0);
    out.constant = negate_powers(op.constant, 1.0);
    return out;
}

std::complex<double> apply(const SpacetimeOperator& op, const Algebra& alg, const Jet& f, const Eigen::VectorXd& X,
                           double time) {
    const int n = alg.k() + alg.l();
    if (f.dim() != n + 1) throw DimensionMismatch("apply: jet must have k + l + 1 variables");
    const double E = op.solvable ? std::exp(op.q * time) : 1.0;
    const LaplacianParts p = laplacian_parts(alg, f, X);
    return evaluate(op.delta_z, E) * p.delta_z + evaluate(op.nil, E) * (p.delta_x + p.cross + p.spin) +
           evaluate(op.dt, E) * f.d(n) + evaluate(op.dtt, E) * f.d2(n, n) + evaluate(op.constant, E) * f.value();
}

std::complex<double> static_apply(const Algebra& alg, const PhysicalConstants& pc, OperatorKind kind,
                                  const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double t) {
    return apply(static_operator(kind, pc, alg.k(), alg.l()), alg, evaluate_jet(f, join3(X, Z, t)), X, t);
}

std::complex<double> solvable_apply(const SolvableExtension& ext, const PhysicalConstants& pc, OperatorKind kind,
                                    const JetField& f, const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double T) {
    ext.validate();
    return apply(solvable_operator(kind, pc, ext.k(), ext.l(), ext.q), ext.base, evaluate_jet(f, join3(X, Z, T)), X,
                 T);
}

std::complex<double> solvable_laplace_beltrami(const SolvableExtension& ext, const JetField& f,
                                               const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double T) {
    ext.validate();
    const int k = ext.k();
    const int n = ext.dim();
    auto metric = [&](const Eigen::VectorXd& x, double TT) {
        const double t = std::exp(ext.q * TT);
        Eigen::MatrixXd g = solvable_metric(ext, x, t);
        // dt = q t dT
        g.row(n - 1) *= ext.q * t;
        g.col(n - 1) *= ext.q * t;
        return g;
    };
    const Jet J = evaluate_jet(f, join3(X, Z, T));
    const Eigen::MatrixXd g = metric(X, T);
    const Eigen::MatrixXd ginv = g.inverse();
    const double h = 1e-5;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    auto accumulate = [&](int i, const Eigen::MatrixXd& gp, const Eigen::MatrixXd& gm) {
        const Eigen::MatrixXd ip = gp.inverse();
        const Eigen::MatrixXd imn = gm.inverse();
        const Eigen::VectorXd drow = (ip.row(i) - imn.row(i)).transpose() / (2 * h);
        const double dlog = 0.25 * (std::log(std::abs(gp.determinant())) - std::log(std::abs(gm.determinant()))) / h;
        b += drow + ginv.col(i) * dlog;
    };
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd xp = X, xm = X;
        xp(i) += h;
        xm(i) -= h;
        accumulate(i, metric(xp, T), metric(xm, T));
    }
    accumulate(n - 1, metric(X, T + h), metric(X, T - h));
    return second_order_apply(J, ginv, b);
}

double static_split_residual(const Algebra& alg, const PhysicalConstants& pc, const JetField& f,
                             const Eigen::VectorXd& X, const Eigen::VectorXd& Z, double t) {
    const cd full = static_apply(alg, pc, OperatorKind::FullStatic, f, X, Z, t);
    const cd N = static_apply(alg, pc, OperatorKind::Neutrino, f, X, Z, t);
    const cd S = static_apply(alg, pc, OperatorKind::Schrodinger, f, X, Z, t);
    return std::abs(full - (N + S));
}

namespace {

double schrodinger_frequency(const Algebra& alg, const PhysicalConstants& pc, SchrodingerVariant v, double mu, int r,
                             int p) {
    double w = (4.0 * r + 4.0 * p + alg.k()) * mu;
    if (v == SchrodingerVariant::TotalS) w += 4.0 * mu * mu;
    return pc.hbar / (2.0 * pc.m) * w;
}

OperatorKind schrodinger_kind(SchrodingerVariant v) {
    return v == SchrodingerVariant::S ? OperatorKind::Schrodinger : OperatorKind::TotalSchrodinger;
}

void check_schrodinger_args(const Algebra& alg, const PhysicalConstants& pc, const Eigen::VectorXd& Q, int r, int p,
                            int q) {
    pc.validate();
    if (!(pc.m > 0.0)) throw InvalidArgument("schrodinger check: needs m > 0");
    if (Q.size() != alg.k()) throw DimensionMismatch("schrodinger check: pole has wrong size");
    if (r < 0 || p < 0 || q < 0) throw InvalidArgument("schrodinger check: indices must be >= 0");
}

}  // namespace

SchrodingerCheck zcrystal_schrodinger_check(const Algebra& alg, const PhysicalConstants& pc, SchrodingerVariant v,
                                            const Eigen::VectorXd& Zgamma, const Eigen::VectorXd& Q, int r, int p,
                                            int q, int samples, std::uint64_t seed) {
    check_schrodinger_args(alg, pc, Q, r, p, q);
    const ZCrystalReduction red = zcrystal_reduce(alg, Zgamma);
    if (red.mu == 0.0) throw InvalidArgument("zcrystal_schrodinger_check: Z_gamma must be nonzero");
    SchrodingerCheck out;
    out.mu = red.mu;
    out.omega_tilde = schrodinger_frequency(alg, pc, v, red.mu, r, p);
    const RadialFunction rf = scaled_eigenfunction(red.mu, r, p + q, alg.k());
    const int k = alg.k();
    const int l = alg.l();
    JetField psi = [&](const std::vector<Jet>& vars) {
        Jet x2(k + l + 1);
        for (int i = 0; i < k; ++i) x2 += vars[i] * vars[i];
        Jet phase = vars[k + l] * out.omega_tilde;
        for (int a = 0; a < l; ++a) phase += vars[k + a] * red.K(a);
        return exp(phase * I1) * radial_jet(rf, x2) * project_x_theta(alg, Q, p, q, vars, red.Ku);
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(k + l + 1);
        for (int i = 0; i < x.size(); ++i) x(i) = 0.6 * N01(rng);
        const Jet J = evaluate_jet(psi, x);
        const SpacetimeOperator op = static_operator(schrodinger_kind(v), pc, k, l);
        out.residual = std::max(out.residual, std::abs(apply(op, alg, J, x.head(k), x(k + l))));
        out.scale = std::max(out.scale, std::abs(J.value()));
    }
    return out;
}

SchrodingerCheck sphere_schrodinger_check(const Algebra& alg, const PhysicalConstants& pc, SchrodingerVariant v,
                                          double R, const Eigen::VectorXd& Q, int r, int p, int q, int samples,
                                          std::uint64_t seed) {
    check_schrodinger_args(alg, pc, Q, r, p, q);
    if (!(R > 0.0)) throw InvalidArgument("sphere_schrodinger_check: R must be positive");
    SchrodingerCheck out;
    out.mu = R / 2.0;
    out.omega_tilde = schrodinger_frequency(alg, pc, v, out.mu, r, p);
    const RadialFunction rf = scaled_eigenfunction(out.mu, r, p + q, alg.k());
    TwistedFunction tf = TwistedFunction::one_pole(alg, Q, p, q);
    tf.domain = KDomain::SphereBundle;
    tf.radius = [R](const Jet& x2) { return Jet(x2.dim(), R); };
    tf.profile = [rf](const Jet& x2, const Jet&) { return radial_jet(rf, x2); };
    tf.project_x = true;
    const int k = alg.k();
    const int l = alg.l();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    const SpacetimeOperator op = static_operator(schrodinger_kind(v), pc, k, l);
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd X(k), Z(l);
        for (int i = 0; i < k; ++i) X(i) = 0.6 * N01(rng);
        for (int a = 0; a < l; ++a) Z(a) = 0.6 * N01(rng);
        const double t = N01(rng);
        const Jet space = twisted_transform_jet(tf, X, Z).embedded(k + l + 1);
        const Jet time = exp(Jet::variable(k + l + 1, k + l, t) * (I1 * out.omega_tilde));
        const Jet J = space * time;
        out.residual = std::max(out.residual, std::abs(apply(op, alg, J, X, t)));
        out.scale = std::max(out.scale, std::abs(J.value()));
    }
    return out;
}

PacketGrid PacketGrid::box(const Eigen::VectorXd& X, int l, int n, double half, int nT, double T0, double T1) {
    if (l < 1 || n < 1 || nT < 1) throw InvalidArgument("PacketGrid::box: bad sizes");
    PacketGrid g;
    g.X = X;
    auto node = [&](int i, int count, double a, double b) { return count == 1 ? a : a + (b - a) * i / (count - 1); };
    long long total = 1;
    for (int a = 0; a < l; ++a) total *= n;
    if (total > 1'000'000) throw ResourceError("PacketGrid::box: too many points");
    for (long long idx = 0; idx < total; ++idx) {
        Eigen::VectorXd Z(l);
        long long rem = idx;
        for (int a = 0; a < l; ++a) {
            Z(a) = node(static_cast<int>(rem % n), n, -half, half);
            rem /= n;
        }
        g.Z.push_back(Z);
    }
    for (int i = 0; i < nT; ++i) g.T.push_back(node(i, nT, T0, T1));
    return g;
}

PacketResidual expanding_packet_residual(const SolvableExtension& ext, const PhysicalConstants& pc, OperatorKind kind,
                                         const TwistedFunction& tf, const PacketGrid& grid) {
    ext.validate();
    tf.validate();
    const int k = ext.k();
    const int l = ext.l();
    double kn = 0.0;
    if (tf.domain == KDomain::LatticePoint) {
        kn = 2.0 * std::numbers::pi * tf.lattice_point.norm();
    } else if (tf.domain == KDomain::SphereBundle) {
        const double r1 = tf.radius(Jet(1, 0.0)).value().real();
        const double r2 = tf.radius(Jet(1, 1.0)).value().real();
        if (r1 != r2) throw InvalidArgument("expanding_packet_residual: sphere radius must be constant");
        kn = r1;
    } else {
        throw InvalidArgument("expanding_packet_residual: needs a lattice point or sphere bundle");
    }
    PacketResidual out;
    out.kind = kind;
    out.omega = dispersion_omega(kn, pc);
    double w = out.omega;
    if (kind == OperatorKind::ShrinkingNeutrino) w -= pc.m * pc.c * pc.c / pc.hbar;
    const SpacetimeOperator op = solvable_operator(kind, pc, k, l, ext.q);
    double vmax = 0.0;
    for (const Eigen::VectorXd& Z : grid.Z) {
        const Jet space = twisted_transform_jet(tf, grid.X, Z).embedded(k + l + 1);
        for (double T : grid.T) {
            const Jet Tj = Jet::variable(k + l + 1, k + l, T);
            const Jet J = space * exp(exp(Tj) * (-I1 * w));
            PacketSample s;
            s.Z = Z;
            s.T = T;
            s.value = J.value();
            s.residual = apply(op, ext.base, J, grid.X, T);
            out.max_abs = std::max(out.max_abs, std::abs(s.residual));
            vmax = std::max(vmax, std::abs(s.value));
            out.samples.push_back(std::move(s));
        }
    }
    out.max_rel = vmax > 0 ? out.max_abs / vmax : out.max_abs;
    return out;
}

double meson_residual_closed(double k, double omega, double T, double q) {
    return omega * omega * std::exp(2.0 * T) - k * k * std::exp(2.0 * q * T);
}

}  // namespace htype
