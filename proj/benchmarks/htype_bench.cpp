#include "htype/algebra.hpp"
#include "htype/clifford.hpp"
#include "htype/geometry.hpp"
#include "htype/glz.hpp"
#include "htype/hankel.hpp"
#include "htype/harmonic.hpp"
#include "htype/twisted.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

static void BM_BuildGenerators(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(htype::build_generators(l));
}
BENCHMARK(BM_BuildGenerators)->DenseRange(1, 9);

static void BM_HTypeCheck(benchmark::State& state) {
    const auto alg = htype::Algebra::h_type(3, static_cast<int>(state.range(0)), 0);
    for (auto _ : state) benchmark::DoNotOptimize(htype::is_h_type(alg, 100));
}
BENCHMARK(BM_HTypeCheck)->Arg(1)->Arg(4)->Arg(16);

static void BM_CompactSpectrum(benchmark::State& state) {
    const htype::RadialGLZOperator op(4, 1, 1, 1.0);
    htype::CollocationOptions opt;
    opt.nodes = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(htype::compact_spectrum(op, std::sqrt(60.0), htype::BoundaryCondition::dirichlet(), 8, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompactSpectrum)->RangeMultiplier(2)->Range(50, 400)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_HarmonicProjection(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto P = htype::RealPolynomial::random_homogeneous(4, static_cast<int>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(htype::harmonic_projection(P));
}
BENCHMARK(BM_HarmonicProjection)->DenseRange(2, 6, 2);

static void BM_HankelTransform(benchmark::State& state) {
    htype::HankelSpec spec;
    spec.l = 3;
    spec.nu = static_cast<int>(state.range(0));
    spec.profile = [](double k) { return std::exp(-k * k); };
    for (auto _ : state) benchmark::DoNotOptimize(htype::hankel_transform(spec, 1.3));
}
BENCHMARK(BM_HankelTransform)->DenseRange(0, 2);

static void BM_CurvatureReport(benchmark::State& state) {
    const auto alg = htype::Algebra::h_type(3, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(htype::curvature_report(alg, 10));
}
BENCHMARK(BM_CurvatureReport)->Unit(benchmark::kMillisecond);

static void BM_TwistedTransform(benchmark::State& state) {
    const auto alg = htype::Algebra::h_type(3, 1, 0);
    auto tf = htype::TwistedFunction::one_pole(alg, Eigen::VectorXd::Unit(4, 0), static_cast<int>(state.range(0)), 0);
    tf.radius = [](const htype::Jet& x2) { return htype::Jet(x2.dim(), 1.5); };
    Eigen::VectorXd X(4), Z(3);
    X << 0.2, -0.1, 0.3, 0.4;
    Z << 0.5, 0.1, -0.2;
    for (auto _ : state) benchmark::DoNotOptimize(htype::twisted_transform(tf, X, Z));
}
BENCHMARK(BM_TwistedTransform)->DenseRange(0, 2);

BENCHMARK_MAIN();
