#pragma once

#include "htype/clifford.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace htype::suites {

/// One measured quantity against its bound: passes when value <= bound.
struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool passed() const { return value <= bound; }
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    double seconds = 0.0;
    bool passed() const;
    /// Largest value / bound ratio; used for one-line summaries.
    const Check* worst() const;
};

/// Shared knobs.  `perturbation` > 0 adds a skew defect of that size to J_1 of the group, which
/// breaks the H-type identities on purpose (CI self-test).
struct Context {
    EndomorphismSpace group{3, 1, 0};
    std::uint64_t seed = 1;
    double perturbation = 0.0;
};

struct CliffordParams {
    int table_max = 16;
    int generator_max = 9;
};
SuiteResult clifford(const Context& ctx, const CliffordParams& p = {});

struct HTypeParams {
    int max_k = 64;
    int samples = 100;
    double tol = 1e-12;
};
/// Every H^(a,b)_l with (a+b) n_l <= max_k, l = 1..9, plus the context group.
SuiteResult htype(const Context& ctx, const HTypeParams& p = {});

struct GlzParams {
    std::vector<double> mus{0.5, 1.0, 2.0};
    std::vector<int> ks{2, 4};
    int rmax = 4;
    int pmax = 2;
    double t_max = 60.0;
    int nodes = 400;
    double rel_tol = 1e-6;
};
/// Dirichlet collocation on [0, t_max] against -((4r + 4p + k) mu + 4 mu^2).
SuiteResult glz(const Context& ctx, const GlzParams& p = {});

struct LaguerreParams {
    int rmax = 6;
    int nmax = 3;
    std::vector<int> ks{2, 4, 8};
    double orth_tol = 1e-10;
};
SuiteResult laguerre(const Context& ctx, const LaguerreParams& p = {});

struct HarmonicParams {
    int per_case = 50;
    int max_degree = 6;
    int min_dim = 2;
    int max_dim = 5;
    double harmonic_tol = 1e-10;
    double roundtrip_tol = 1e-12;
};
SuiteResult harmonic(const Context& ctx, const HarmonicParams& p = {});

struct HankelParams {
    std::vector<int> ls{2, 3};
    std::vector<int> nus{0, 1, 2};
    std::vector<double> widths{0.5, 1.0};  // profile e^{-w k^2}
    std::vector<double> radii{0.5, 1.3, 2.7};
    double fourier_tol = 1e-4;
    double slicing_tol = 1e-3;
};
SuiteResult hankel(const Context& ctx, const HankelParams& p = {});

struct CurvatureParams {
    std::vector<EndomorphismSpace> groups{{3, 1, 0}, {3, 1, 1}};
    double tol = 1e-12;
};
/// Uses ctx.group in addition to the listed groups (perturbed if requested).
SuiteResult curvature(const Context& ctx, const CurvatureParams& p = {});

struct ZBallParams {
    int count = 6;
    double tol = 1e-10;
};
SuiteResult zball(const Context& ctx, const ZBallParams& p = {});

struct IsospectralParams {
    EndomorphismSpace left{3, 2, 0};
    EndomorphismSpace right{3, 1, 1};
    int nmax = 2;
    double mu = 1.0;
    double R = 3.0;
    int count = 6;
    int nodes = 200;
    double spectrum_tol = 1e-6;
    double boundary_tol = 1e-8;
    int boundary_samples = 3;
};
SuiteResult isospectral(const Context& ctx, const IsospectralParams& p = {});

struct WavesParams {
    double plane_tol = 1e-12;
    double split_tol = 0.0;
    double schrodinger_tol = 1e-6;
    double meson_tol = 1e-10;
    double hubble_tol = 1e-12;
};
SuiteResult waves(const Context& ctx, const WavesParams& p = {});

struct AngularParams {
    std::vector<std::pair<int, int>> strata{{1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 0}};
    std::vector<double> radii{0.7, 1.5};
    double tol = 1e-6;
};
SuiteResult angular(const Context& ctx, const AngularParams& p = {});

/// Registry used by `htype verify`: name -> default-parameter runner.
struct SuiteEntry {
    std::string name;
    std::function<SuiteResult(const Context&)> run;
};
const std::vector<SuiteEntry>& registry();

}  // namespace htype::suites
