#include "htype/suites.hpp"

#include "htype/algebra.hpp"
#include "htype/errors.hpp"
#include "htype/geometry.hpp"
#include "htype/glz.hpp"
#include "htype/hankel.hpp"
#include "htype/harmonic.hpp"
#include "htype/isospectral.hpp"
#include "htype/polynomial.hpp"
#include "htype/quadrature.hpp"
#include "htype/twisted.hpp"
#include "htype/waves.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

namespace htype::suites {

namespace {

using Clock = std::chrono::steady_clock;
using cd = std::complex<double>;

std::string group_name(const EndomorphismSpace& g) {
    std::ostringstream os;
    os << "H^(" << g.a << "," << g.b << ")_" << g.l;
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// H-type group of the context, with J_1 bent by the requested perturbation.
Algebra make_group(const Context& ctx) {
    Algebra alg = Algebra::h_type(ctx.group);
    if (ctx.perturbation <= 0.0) return alg;
    std::vector<Eigen::MatrixXd> J = alg.J_basis();
    J[0](0, 1) += ctx.perturbation;
    J[0](1, 0) -= ctx.perturbation;
    return Algebra(J);
}

Eigen::VectorXd unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N01;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = N01(rng);
    return v.normalized();
}

SuiteResult done(SuiteResult r, Clock::time_point t0) {
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

/// Keeps the largest value seen under one check name.
void track(SuiteResult& r, const std::string& name, double value, double bound) {
    for (auto& c : r.checks)
        if (c.name == name) {
            if (!(value <= c.value)) c.value = value;
            return;
        }
    r.checks.push_back({name, value, bound});
}

/// First positive zeros of J_nu by sign scan plus bisection.
std::vector<double> bessel_zeros_bisection(double nu, int count) {
    std::vector<double> out;
    const double h = 0.01;
    double a = 1e-6;
    double fa = std::cyl_bessel_j(nu, a);
    while (static_cast<int>(out.size()) < count) {
        const double b = a + h;
        const double fb = std::cyl_bessel_j(nu, b);
        if ((fa < 0.0) != (fb < 0.0)) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = std::cyl_bessel_j(nu, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return out;
}

/// int_{R^l} e^{i<K, r e_1>} f(|K|) Y(K_u) dK with Y zonal around e_1 (Y(e_1) = 1), by a product rule in
/// (|K|, angle to e_1).  Independent of any Bessel function.
cd direct_fourier(int l, int nu, const std::function<double(double)>& f, double kmax, double r) {
    const GaussRule radial = gauss_legendre(160);
    cd total = 0.0;
    if (l == 2) {
        const int M = 128;
        for (int i = 0; i < radial.nodes.size(); ++i) {
            const double k = 0.5 * kmax * (radial.nodes(i) + 1.0);
            const double wk = 0.5 * kmax * radial.weights(i);
            cd inner = 0.0;
            for (int j = 0; j < M; ++j) {
                const double th = 2.0 * std::numbers::pi * j / M;
                inner += std::cos(nu * th) * std::exp(cd(0.0, k * r * std::cos(th)));
            }
            total += wk * k * f(k) * inner * (2.0 * std::numbers::pi / M);
        }
        return total;
    }
    if (l == 3) {
        const GaussRule polar = gauss_legendre(96);
        for (int i = 0; i < radial.nodes.size(); ++i) {
            const double k = 0.5 * kmax * (radial.nodes(i) + 1.0);
            const double wk = 0.5 * kmax * radial.weights(i);
            cd inner = 0.0;
            for (int j = 0; j < polar.nodes.size(); ++j) {
                const double x = polar.nodes(j);
                inner += polar.weights(j) * std::legendre(nu, x) * std::exp(cd(0.0, k * r * x));
            }
            total += wk * k * k * f(k) * inner * (2.0 * std::numbers::pi);
        }
        return total;
    }
    throw InvalidArgument("direct_fourier: l must be 2 or 3");
}

}  // namespace

bool SuiteResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const Check* SuiteResult::worst() const {
    const Check* w = nullptr;
    double best = -1.0;
    for (const auto& c : checks) {
        const double ratio = c.bound > 0.0 ? c.value / c.bound : (c.value > 0.0 ? INFINITY : 0.0);
        if (!(ratio <= best)) {
            best = ratio;
            w = &c;
        }
    }
    return w;
}

SuiteResult clifford(const Context&, const CliffordParams& p) {
    SuiteResult r;
    r.suite = "clifford";
    const auto t0 = Clock::now();
    static constexpr int offset[8] = {0, 1, 2, 2, 3, 3, 3, 3};
    int table_mismatch = 0;
    for (int l = 1; l <= p.table_max; ++l) {
        const long long expected = 1LL << (4 * (l / 8) + offset[l % 8]);
        if (irreducible_dimension(l) != expected) {
            ++table_mismatch;
            r.notes.push_back("n_" + std::to_string(l) + " = " + std::to_string(irreducible_dimension(l)) +
                              ", expected " + std::to_string(expected));
        }
    }
    r.checks.push_back({"dimension table mismatches l=1.." + std::to_string(p.table_max),
                        static_cast<double>(table_mismatch), 0.0});
    long long defects = 0;
    int size_mismatch = 0;
    for (int l = 1; l <= p.generator_max; ++l) {
        const CliffordModule m = build_generators(l);
        const CliffordDefects d = check_clifford(m);
        defects += d.anticommutation + d.skewness + d.orthogonality;
        if (m.n != irreducible_dimension(l) || static_cast<int>(m.generators.size()) != l) ++size_mismatch;
    }
    r.checks.push_back({"integer anticommutation/skew/orthogonality defect l<=" + std::to_string(p.generator_max),
                        static_cast<double>(defects), 0.0});
    r.checks.push_back({"generator size mismatches", static_cast<double>(size_mismatch), 0.0});
    return done(std::move(r), t0);
}

SuiteResult htype(const Context& ctx, const HTypeParams& p) {
    SuiteResult r;
    r.suite = "htype";
    const auto t0 = Clock::now();
    int groups = 0;
    double worst = 0.0;
    std::string worst_name;
    for (int l = 1; l <= 9; ++l) {
        const long long n = irreducible_dimension(l);
        for (long long total = 1; total * n <= p.max_k; ++total)
            for (long long a = 0; a <= total; ++a) {
                const EndomorphismSpace g(l, static_cast<int>(a), static_cast<int>(total - a));
                const HTypeCheck c = is_h_type(Algebra::h_type(g), p.samples, ctx.seed + groups, p.tol);
                ++groups;
                if (c.max_residual >= worst) {
                    worst = c.max_residual;
                    worst_name = group_name(g);
                }
            }
    }
    r.checks.push_back({"max ||J_Z^2 + |Z|^2 I|| over groups with k<=" + std::to_string(p.max_k), worst, p.tol});
    r.notes.push_back(std::to_string(groups) + " groups; worst " + worst_name);
    const HTypeCheck own = is_h_type(make_group(ctx), p.samples, ctx.seed, p.tol);
    r.checks.push_back({"context group " + group_name(ctx.group), own.max_residual, p.tol});
    return done(std::move(r), t0);
}

SuiteResult glz(const Context&, const GlzParams& p) {
    SuiteResult r;
    r.suite = "glz";
    const auto t0 = Clock::now();
    CollocationOptions opt;
    opt.nodes = p.nodes;
    const double R = std::sqrt(p.t_max);
    for (double mu : p.mus)
        for (int k : p.ks) {
            double worst = 0.0;
            for (int pp = 0; pp <= p.pmax; ++pp) {
                const RadialGLZOperator op(k, pp, pp, mu);
                const SpectrumRecord rec = compact_spectrum(op, R, BoundaryCondition::dirichlet(), p.rmax + 1, opt);
                for (int rr = 0; rr <= p.rmax; ++rr) {
                    const double exact = explicit_eigenvalue(mu, rr, pp, k);
                    const double rel = std::abs(rec.eigenvalues.at(rr).value - exact) / std::abs(exact);
                    if (rel > p.rel_tol)
                        r.notes.push_back("mu=" + fmt(mu) + " k=" + std::to_string(k) + " p=" + std::to_string(pp) +
                                          " r=" + std::to_string(rr) + ": rel err " + fmt(rel));
                    worst = std::max(worst, rel);
                }
            }
            r.checks.push_back({"mu=" + fmt(mu) + " k=" + std::to_string(k) + " max rel err", worst, p.rel_tol});
        }
    return done(std::move(r), t0);
}

SuiteResult laguerre(const Context&, const LaguerreParams& p) {
    SuiteResult r;
    r.suite = "laguerre";
    const auto t0 = Clock::now();
    int nonzero = 0;
    double oracle = 0.0;
    double orth = 0.0;
    for (int k : p.ks)
        for (int n = 0; n <= p.nmax; ++n) {
            const Rational alpha = Rational(k, 2) + n - 1;
            const int ialpha = k / 2 + n - 1;
            const GaussRule rule = gauss_laguerre(2 * p.rmax + 4, static_cast<double>(alpha));
            std::vector<std::vector<Rational>> us;
            for (int rr = 0; rr <= p.rmax; ++rr) {
                us.push_back(laguerre_eigenfunction(rr, n, k));
                for (const Rational& c : laguerre_residual(us.back(), alpha, rr))
                    if (c != 0) ++nonzero;
                // Monic u_r = (-1)^r r! L_r^alpha for integer alpha.
                const double norm = (rr % 2 ? -1.0 : 1.0) * boost::math::factorial<double>(rr);
                for (double t : {0.3, 1.7, 4.2, 9.5}) {
                    const double ref = norm * boost::math::laguerre(rr, ialpha, t);
                    const double got = evaluate_polynomial(us.back(), t);
                    oracle = std::max(oracle, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
                }
            }
            auto inner = [&](int a, int b) {
                double s = 0.0;
                for (int i = 0; i < rule.nodes.size(); ++i)
                    s += rule.weights(i) * evaluate_polynomial(us[a], rule.nodes(i)) *
                         evaluate_polynomial(us[b], rule.nodes(i));
                return s;
            };
            for (int a = 0; a <= p.rmax; ++a)
                for (int b = 0; b < a; ++b)
                    orth = std::max(orth, std::abs(inner(a, b)) / std::sqrt(inner(a, a) * inner(b, b)));
        }
    r.checks.push_back({"nonzero exact residual coefficients", static_cast<double>(nonzero), 0.0});
    r.checks.push_back({"normalized orthogonality defect", orth, p.orth_tol});
    r.checks.push_back({"deviation from associated Laguerre", oracle, 1e-10});
    return done(std::move(r), t0);
}

SuiteResult harmonic(const Context& ctx, const HarmonicParams& p) {
    SuiteResult r;
    r.suite = "harmonic";
    const auto t0 = Clock::now();
    std::mt19937_64 rng(ctx.seed);
    double lap = 0.0;
    double round = 0.0;
    double part_lap = 0.0;
    for (int d = p.min_dim; d <= p.max_dim; ++d)
        for (int deg = 0; deg <= p.max_degree; ++deg)
            for (int i = 0; i < p.per_case; ++i) {
                const RealPolynomial P = RealPolynomial::random_homogeneous(d, deg, rng);
                const RealPolynomial H = harmonic_projection(P);
                lap = std::max(lap, H.laplacian().max_abs_coeff());
                const auto parts = harmonic_decomposition(P);
                for (const auto& [j, hp] : parts) part_lap = std::max(part_lap, hp.laplacian().max_abs_coeff());
                round = std::max(round, (harmonic_reconstruct(parts, d) - P).max_abs_coeff());
            }
    r.checks.push_back({"max |Delta Pi(P)| coefficient", lap, p.harmonic_tol});
    r.checks.push_back({"max |Delta HP_j| coefficient", part_lap, p.harmonic_tol});
    r.checks.push_back({"decomposition round trip", round, p.roundtrip_tol});
    return done(std::move(r), t0);
}

SuiteResult hankel(const Context&, const HankelParams& p) {
    SuiteResult r;
    r.suite = "hankel";
    const auto t0 = Clock::now();
    double fourier = 0.0;
    double slicing = 0.0;
    for (int l : p.ls)
        for (int nu : p.nus)
            for (double w : p.widths) {
                HankelSpec spec;
                spec.l = l;
                spec.nu = nu;
                spec.profile = [w](double k) { return std::exp(-w * k * k); };
                const double kmax = std::sqrt(40.0 / w);
                std::vector<cd> direct, bessel, slice;
                double peak = 0.0;
                for (double rad : p.radii) {
                    direct.push_back(direct_fourier(l, nu, spec.profile, kmax, rad));
                    bessel.push_back(hankel_transform(spec, rad));
                    slice.push_back(hankel_transform_slicing(spec, rad));
                    peak = std::max(peak, std::abs(direct.back()));
                }
                for (std::size_t i = 0; i < direct.size(); ++i) {
                    fourier = std::max(fourier, std::abs(bessel[i] - direct[i]) / peak);
                    slicing = std::max(slicing, std::abs(slice[i] - bessel[i]) / peak);
                }
            }
    r.checks.push_back({"Bessel path vs direct Fourier quadrature (relative to case peak)", fourier, p.fourier_tol});
    r.checks.push_back({"slicing path vs Bessel path (relative to case peak)", slicing, p.slicing_tol});
    return done(std::move(r), t0);
}

SuiteResult curvature(const Context& ctx, const CurvatureParams& p) {
    SuiteResult r;
    r.suite = "curvature";
    const auto t0 = Clock::now();
    std::vector<std::pair<std::string, Algebra>> algs;
    for (const auto& g : p.groups) algs.emplace_back(group_name(g), Algebra::h_type(g));
    algs.emplace_back(group_name(ctx.group) + (ctx.perturbation > 0 ? " (perturbed)" : ""), make_group(ctx));
    for (const auto& [name, alg] : algs) {
        const CurvatureReport rep = curvature_report(alg, 20, ctx.seed);
        const int k = alg.k(), l = alg.l();
        Eigen::VectorXd expected(k + l);
        expected.head(k).setConstant(-l / 2.0);
        expected.tail(l).setConstant(k / 4.0);
        const double ricci =
            (rep.ricci_trace - Eigen::MatrixXd(expected.asDiagonal())).cwiseAbs().maxCoeff();
        track(r, "frame-trace Ricci vs -(l/2) I_X + (k/4) I_Z", ricci, p.tol);
        track(r, "closed Ricci vs frame trace", rep.ricci_defect, p.tol);
        track(r, "closed Riemann vs Koszul engine", rep.riemann_defect, p.tol);
        track(r, "Bianchi", rep.bianchi, p.tol);
        track(r, "pair symmetry", rep.pair_symmetry, p.tol);
        track(r, "pair antisymmetry", rep.pair_antisymmetry, p.tol);
        const SolvableExtension ext{alg, 1.0, 1, 1};
        const double closed = -(k / 4.0 + l) * (k + l + 1);
        const double engine = solvable_structure(ext).scalar();
        track(r, "solvable scalar (Koszul engine) vs -(k/4+l)(k+l+1)", std::abs(engine - closed), p.tol);
        track(r, "solvable scalar (closed trace) vs -(k/4+l)(k+l+1)", std::abs(solvable_scalar(ext) - closed), p.tol);
        r.notes.push_back(name + ": solvable scalar " + fmt(engine));
    }
    return done(std::move(r), t0);
}

SuiteResult zball(const Context&, const ZBallParams& p) {
    SuiteResult r;
    r.suite = "zball";
    const auto t0 = Clock::now();
    const std::vector<double> l3 = zball_eigenvalues(3, 0, 1.0, BoundaryCondition::dirichlet(), p.count);
    double e3 = 0.0;
    for (int i = 0; i < p.count; ++i) {
        const double exact = std::pow((i + 1) * std::numbers::pi, 2);
        e3 = std::max(e3, std::abs(l3[i] - exact) / exact);
    }
    r.checks.push_back({"l=3 s=0 R=1 Dirichlet vs (i pi)^2", e3, p.tol});
    double e2 = 0.0;
    for (int s = 0; s <= 3; ++s)
        for (double R : {1.0, 2.5}) {
            const std::vector<double> got = zball_eigenvalues(2, s, R, BoundaryCondition::dirichlet(), p.count);
            const std::vector<double> zeros = bessel_zeros_bisection(s, p.count);
            for (int i = 0; i < p.count; ++i) {
                const double exact = (zeros[i] / R) * (zeros[i] / R);
                e2 = std::max(e2, std::abs(got[i] - exact) / exact);
            }
        }
    r.checks.push_back({"l=2 Dirichlet vs bisection Bessel zeros", e2, p.tol});
    return done(std::move(r), t0);
}

SuiteResult isospectral(const Context& ctx, const IsospectralParams& p) {
    SuiteResult r;
    r.suite = "isospectral";
    const auto t0 = Clock::now();
    const Algebra L = Algebra::h_type(p.left);
    const Algebra Rt = Algebra::h_type(p.right);
    if (L.k() != Rt.k() || L.l() != Rt.l()) throw InvalidArgument("isospectral suite: groups differ in (k, l)");
    std::mt19937_64 rng(ctx.seed);
    const Eigen::VectorXd Q0 = Eigen::VectorXd::Unit(L.k(), 0);
    const Eigen::VectorXd Q1 = unit_vector(L.k(), rng);
    CollocationOptions opt;
    opt.nodes = p.nodes;
    int cases = 0;
    int failed = 0;
    double worst_gap = 0.0;
    double param_mismatch = 0.0;
    for (int n = 0; n <= p.nmax; ++n)
        for (int pp = 0; pp <= n; ++pp) {
            const int qq = n - pp;
            for (const auto& bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann()}) {
                std::vector<SpectrumRecord> recs;
                std::vector<ReducedParameters> params;
                for (const Algebra* alg : {&L, &Rt})
                    for (const Eigen::VectorXd* Q : {&Q0, &Q1}) {
                        const ReducedParameters rp = reduce_pole(*alg, *Q, pp, qq, p.mu, ctx.seed);
                        params.push_back(rp);
                        SpectrumRecord rec =
                            compact_spectrum(RadialGLZOperator(rp.k, rp.n, rp.m, rp.mu), p.R, bc, p.count, opt);
                        const int mult = static_cast<int>(harmonic_space_dimension(rp.k, pp, qq));
                        for (auto& e : rec.eigenvalues) e.multiplicity = mult;
                        recs.push_back(std::move(rec));
                    }
                for (std::size_t i = 1; i < recs.size(); ++i) {
                    if (!(params[i] == params[0])) param_mismatch += 1.0;
                    const SpectraComparison c = spectra_compare(recs[0], recs[i], p.spectrum_tol);
                    ++cases;
                    if (!c.isospectral()) {
                        ++failed;
                        r.notes.push_back("n=" + std::to_string(n) + " p=" + std::to_string(pp) + " " + bc.name() +
                                          ": " + std::to_string(c.mismatches.size()) + " mismatches");
                    }
                    for (std::size_t e = 0; e < std::min(recs[0].eigenvalues.size(), recs[i].eigenvalues.size()); ++e)
                        worst_gap = std::max(worst_gap, std::abs(recs[0].eigenvalues[e].value -
                                                                 recs[i].eigenvalues[e].value) /
                                                            (1.0 + std::abs(recs[0].eigenvalues[e].value)));
                }
            }
        }
    r.checks.push_back({"non-isospectral comparisons", static_cast<double>(failed), 0.0});
    r.checks.push_back({"reduced-parameter mismatches", param_mismatch, 0.0});
    r.checks.push_back({"max relative eigenvalue gap", worst_gap, p.spectrum_tol});
    r.notes.push_back(std::to_string(cases) + " comparisons across poles and groups");

    // Boundary residuals before and after intertwining.
    const Algebra flipped = flip_block(Rt, 1);
    double flip_defect = 0.0;
    for (int a = 0; a < L.l(); ++a) flip_defect = std::max(flip_defect, (flipped.J(a) - L.J(a)).cwiseAbs().maxCoeff());
    r.checks.push_back({"flip_block(right, 1) vs left generators", flip_defect, 0.0});
    double boundary = 0.0;
    double preserved = 0.0;
    const RadiusJet ball = [](const Jet& x2) { return 1.0 + x2 * 0.1; };
    const std::vector<std::tuple<int, int, int, BoundaryCondition>> boundary_cases = {
        {1, 0, 1, BoundaryCondition::dirichlet()},
        {1, 0, 1, BoundaryCondition::neumann()},
        {1, 1, 2, BoundaryCondition::dirichlet()},
    };
    for (const auto& [pp, qq, s, bc] : boundary_cases) {
        const BoundaryFunction bf = boundary_function(Rt, Q0, pp, qq, s, 1, bc, ball);
        IntertwineSpec pole;
        pole.target_pole = Q1;
        IntertwineSpec js;
        js.kind = IntertwineSpec::Kind::ComplexStructure;
        js.target_algebra = L;
        const BoundaryResidual b0 = boundary_residual(bf, bc, p.boundary_samples, ctx.seed);
        const BoundaryResidual b1 = boundary_residual(intertwine(pole, bf), bc, p.boundary_samples, ctx.seed);
        const BoundaryResidual b2 = boundary_residual(intertwine(js, bf), bc, p.boundary_samples, ctx.seed);
        for (const auto* b : {&b0, &b1, &b2}) boundary = std::max(boundary, b->residual / b->scale);
        preserved = std::max({preserved, std::abs(b1.residual / b1.scale - b0.residual / b0.scale),
                              std::abs(b2.residual / b2.scale - b0.residual / b0.scale)});
    }
    r.checks.push_back({"boundary residual (relative) incl. intertwined", boundary, p.boundary_tol});
    r.checks.push_back({"boundary residual change under intertwining", preserved, p.boundary_tol});
    return done(std::move(r), t0);
}

SuiteResult waves(const Context& ctx, const WavesParams& p) {
    SuiteResult r;
    r.suite = "waves";
    const auto t0 = Clock::now();
    const Algebra alg = make_group(ctx);
    const int k = alg.k(), l = alg.l();
    std::mt19937_64 rng(ctx.seed);

    for (double m : {0.0, 1.0})
        for (double c : {1.0, 2.0}) {
            PhysicalConstants pc;
            pc.m = m;
            pc.c = c;
            for (int i = 0; i < 3; ++i) {
                const Eigen::VectorXd K = unit_vector(l, rng) * (0.5 + i);
                track(r, "relativistic plane-wave residual", std::abs(relativistic_residual(K, pc)), p.plane_tol);
            }
        }

    PhysicalConstants pc;
    pc.m = 1.0;
    const double split =
        coefficient_distance(static_operator(OperatorKind::Neutrino, pc, k, l) +
                                 static_operator(OperatorKind::Schrodinger, pc, k, l),
                             static_operator(OperatorKind::FullStatic, pc, k, l));
    r.checks.push_back({"static split N + S - full (coefficients)", split, p.split_tol});
    const double solvable_split =
        coefficient_distance(solvable_operator(OperatorKind::ShrinkingNeutrino, pc, k, l) +
                                 solvable_operator(OperatorKind::ExpandingSchrodinger, pc, k, l) +
                                 solvable_operator(OperatorKind::Tractor, pc, k, l),
                             solvable_operator(OperatorKind::FullSolvable, pc, k, l));
    r.checks.push_back({"solvable split N + S + tractor - full (coefficients)", solvable_split, p.split_tol});

    const Eigen::VectorXd Q = unit_vector(k, rng);
    Eigen::VectorXd Zg = unit_vector(l, rng) * 0.23;
    for (auto v : {SchrodingerVariant::S, SchrodingerVariant::TotalS}) {
        const std::string tag = v == SchrodingerVariant::S ? "S" : "total S";
        for (auto [rr, pp, qq] : std::vector<std::tuple<int, int, int>>{{0, 1, 0}, {1, 1, 0}, {1, 1, 1}, {2, 2, 1}}) {
            const SchrodingerCheck z = zcrystal_schrodinger_check(alg, pc, v, Zg, Q, rr, pp, qq, 4, ctx.seed);
            track(r, "Z-crystal psi~anti under " + tag, z.residual / z.scale, p.schrodinger_tol);
        }
        for (auto [rr, pp, qq] : std::vector<std::tuple<int, int, int>>{{0, 1, 0}, {1, 1, 1}}) {
            const SchrodingerCheck s = sphere_schrodinger_check(alg, pc, v, 1.3, Q, rr, pp, qq, 3, ctx.seed);
            track(r, "sphere-bundle psi~anti under " + tag + " (quadrature)", s.residual / s.scale,
                  p.schrodinger_tol);
        }
    }

    const NonrelLink link = nonrelativistic_link(unit_vector(l, rng), pc, false, 6, ctx.seed);
    r.checks.push_back({"non-relativistic link with omega~ = omega - mc^2/hbar", link.link_residual, p.plane_tol});
    r.notes.push_back("Taylor omega~ = hbar k^2/2m leaves residual " + fmt(link.taylor_residual));

    const SolvableExtension ext{alg, 1.0, -1, 1};
    TwistedFunction tf = TwistedFunction::one_pole(alg, Q, 1, 0);
    tf.radius = [](const Jet& x2) { return Jet(x2.dim(), 1.5); };
    Eigen::VectorXd X = unit_vector(k, rng) * 0.4;
    const PacketGrid grid = PacketGrid::box(X, l, 2, 1.0, 3, -0.5, 0.5);
    const PacketResidual meson = expanding_packet_residual(ext, PhysicalConstants{}, OperatorKind::Meson, tf, grid);
    r.checks.push_back({"massless meson packet residual (relative)", meson.max_rel, p.meson_tol});

    double hubble = 0.0;
    for (double q : {0.5, 1.0, 2.0})
        for (double tau : {-0.7, 0.3, 1.1}) {
            const SolvableExtension e{alg, q, 1, 1};
            const double t = std::exp(-q * tau);
            const Eigen::MatrixXd g = solvable_metric(e, Eigen::VectorXd::Zero(k), t);
            const double L0 = 1.7;
            const double lx = L0 * std::sqrt(g(0, 0));
            const double lz = L0 * std::sqrt(g(k, k));
            hubble = std::max({hubble, std::abs(hubble_scaling(CurveType::X, L0, tau, q) - lx) / lx,
                               std::abs(hubble_scaling(CurveType::Z, L0, tau, q) - lz) / lz});
        }
    r.checks.push_back({"Hubble scaling e^{q tau/2}, e^{q tau} vs metric lengths", hubble, p.hubble_tol});
    return done(std::move(r), t0);
}

SuiteResult angular(const Context& ctx, const AngularParams& p) {
    SuiteResult r;
    r.suite = "angular";
    const auto t0 = Clock::now();
    const Algebra alg = make_group(ctx);
    std::mt19937_64 rng(ctx.seed);
    const Eigen::VectorXd Q = unit_vector(alg.k(), rng);
    int sign_flips = 0;
    for (auto [pp, qq] : p.strata) {
        const Eigen::VectorXd K = unit_vector(alg.l(), rng) * 1.3;
        const DkCheck dk = dk_eigencheck(alg, Q, K, pp, qq, 6, ctx.seed);
        track(r, "D_K eigen-residual", dk.residual, p.tol);
        track(r, "| |D_K eigenvalue| - |p-q||K| |", std::abs(std::abs(dk.eigenvalue) - std::abs(pp - qq) * K.norm()),
              p.tol);
        if (pp != qq && std::abs(dk.eigenvalue.imag() - kSigma * (pp - qq) * K.norm()) > p.tol * K.norm())
            ++sign_flips;
        for (double R : p.radii) {
            TwistedFunction tf = TwistedFunction::one_pole(alg, Q, pp, qq);
            tf.radius = [R](const Jet& x2) { return Jet(x2.dim(), R); };
            const MCheck m = m_operator_eigencheck(tf, 4, ctx.seed);
            track(r, "M eigen-residual on sphere bundle", m.residual, p.tol);
            track(r, "| |M eigenvalue| - |p-q| R |", std::abs(std::abs(m.eigenvalue) - std::abs(pp - qq) * R), p.tol);
            track(r, "Delta_Z vs -R^2", m.delta_z_residual, p.tol);
            if (pp != qq && std::abs(m.eigenvalue - cd(kSigma * (qq - pp) * R, 0.0)) > p.tol * R) ++sign_flips;
        }
    }
    r.checks.push_back({"eigenvalues off the sigma = " + std::to_string(kSigma) + " convention",
                        static_cast<double>(sign_flips), 0.0});
    r.notes.push_back("sigma = " + std::to_string(kSigma) + ": D_K Theta = sigma i|K| Theta, M = sigma (q - p) R");
    return done(std::move(r), t0);
}

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> entries = {
        {"clifford", [](const Context& c) { return clifford(c); }},
        {"htype", [](const Context& c) { return htype(c); }},
        {"glz",
         [](const Context& c) {
             GlzParams p;
             p.mus = {1.0, 2.0};
             return glz(c, p);
         }},
        {"laguerre", [](const Context& c) { return laguerre(c); }},
        {"harmonic", [](const Context& c) { return harmonic(c); }},
        {"hankel", [](const Context& c) { return hankel(c); }},
        {"curvature", [](const Context& c) { return curvature(c); }},
        {"zball", [](const Context& c) { return zball(c); }},
        {"isospectral", [](const Context& c) { return isospectral(c); }},
        {"waves", [](const Context& c) { return waves(c); }},
        {"angular", [](const Context& c) { return angular(c); }},
    };
    return entries;
}

}  // namespace htype::suites
