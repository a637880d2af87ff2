// Acceptance run: one PASS/FAIL line per criterion.  Bounds live in the suite parameters below and
// runtime limits in the table; nothing is read from the environment.

#include "htype/suites.hpp"

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

namespace {

namespace suites = htype::suites;
using suites::Check;
using suites::SuiteResult;

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds; 0 means no limit
    std::function<SuiteResult()> run;
};

}  // namespace

int main() {
    const suites::Context ctx;  // H^(1,0)_3, seed 1, no perturbation

    suites::CliffordParams clifford_p;
    clifford_p.table_max = 16;
    clifford_p.generator_max = 9;

    suites::HTypeParams htype_p;
    htype_p.max_k = 64;
    htype_p.samples = 100;
    htype_p.tol = 1e-12;

    suites::GlzParams glz_p;
    glz_p.mus = {0.5, 1.0, 2.0};
    glz_p.ks = {2, 4};
    glz_p.rmax = 4;
    glz_p.pmax = 2;
    glz_p.t_max = 60.0;
    glz_p.nodes = 400;
    glz_p.rel_tol = 1e-6;

    suites::LaguerreParams laguerre_p;
    laguerre_p.rmax = 6;
    laguerre_p.orth_tol = 1e-10;

    suites::HarmonicParams harmonic_p;
    harmonic_p.per_case = 50;
    harmonic_p.max_degree = 6;
    harmonic_p.min_dim = 2;
    harmonic_p.max_dim = 5;
    harmonic_p.harmonic_tol = 1e-10;
    harmonic_p.roundtrip_tol = 1e-12;

    suites::HankelParams hankel_p;
    hankel_p.ls = {2, 3};
    hankel_p.nus = {0, 1, 2};
    hankel_p.fourier_tol = 1e-4;
    hankel_p.slicing_tol = 1e-3;

    suites::CurvatureParams curvature_p;
    curvature_p.groups = {{3, 1, 0}, {3, 1, 1}};
    curvature_p.tol = 1e-12;

    suites::ZBallParams zball_p;
    zball_p.tol = 1e-10;

    suites::IsospectralParams iso_p;
    iso_p.left = {3, 2, 0};
    iso_p.right = {3, 1, 1};
    iso_p.nmax = 2;
    iso_p.spectrum_tol = 1e-6;
    iso_p.boundary_tol = 1e-8;

    suites::WavesParams waves_p;
    waves_p.plane_tol = 1e-12;
    waves_p.split_tol = 0.0;
    waves_p.schrodinger_tol = 1e-6;
    waves_p.meson_tol = 1e-10;
    waves_p.hubble_tol = 1e-12;

    suites::AngularParams angular_p;
    angular_p.tol = 1e-6;

    const std::vector<Criterion> criteria{
        {1, "Clifford table l=1..16, integer anticommutation l<=9", 1.0, [&] { return suites::clifford(ctx, clifford_p); }},
        {2, "H-type condition, (a+b) n_l <= 64, 100 samples", 5.0, [&] { return suites::htype(ctx, htype_p); }},
        {3, "Explicit GLZ spectrum on [0,60], N=400, mu in {0.5,1,2}", 30.0, [&] { return suites::glz(ctx, glz_p); }},
        {4, "Laguerre identity r<=6 and orthogonality", 0.0, [&] { return suites::laguerre(ctx, laguerre_p); }},
        {5, "Harmonic projection and round trip", 0.0, [&] { return suites::harmonic(ctx, harmonic_p); }},
        {6, "Hankel transform vs Fourier quadrature and slicing", 60.0, [&] { return suites::hankel(ctx, hankel_p); }},
        {7, "Curvature: Ricci structure, scalar, Bianchi", 0.0, [&] { return suites::curvature(ctx, curvature_p); }},
        {8, "Z-ball spectra l=3 and l=2", 0.0, [&] { return suites::zball(ctx, zball_p); }},
        {9, "Isospectrality H^(2,0)_3 vs H^(1,1)_3", 60.0, [&] { return suites::isospectral(ctx, iso_p); }},
        {10, "Wave operator checks", 0.0, [&] { return suites::waves(ctx, waves_p); }},
        {11, "Angular momentum on sphere-bundle transforms", 0.0, [&] { return suites::angular(ctx, angular_p); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        SuiteResult r;
        std::string error;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const bool in_time = c.time_limit <= 0.0 || r.seconds < c.time_limit;
        const bool ok = error.empty() && r.passed() && in_time;
        failures += ok ? 0 : 1;
        std::printf("%s  %2d  %-58s", ok ? "PASS" : "FAIL", c.id, c.title.c_str());
        if (!error.empty()) {
            std::printf("  error: %s\n", error.c_str());
            continue;
        }
        if (const Check* w = r.worst()) std::printf("  worst %.3g (bound %.3g)", w->value, w->bound);
        std::printf("  %.2f s", r.seconds);
        if (c.time_limit > 0.0) std::printf(" (limit %.0f s)", c.time_limit);
        std::printf("\n");
        for (const auto& chk : r.checks)
            if (!chk.passed()) std::printf("        %s = %.6g > %.3g\n", chk.name.c_str(), chk.value, chk.bound);
        if (!in_time) std::printf("        runtime over limit\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
