#include <benchmark/benchmark.h>

#include "spectra/jacobi.hpp"
#include "spectra/manifolds.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/polynomial.hpp"
#include "spectra/rng.hpp"
#include "spectra/spectral.hpp"
#include "spectra/spectral_fn.hpp"
#include "spectra/strata.hpp"
#include "spectra/verify.hpp"

namespace {

Eigen::MatrixXd random_symmetric(int n, spectra::Rng& rng) {
    const Eigen::MatrixXd A = rng.gaussian_matrix(n, n);
    return 0.5 * (A + A.transpose());
}

void BM_jacobi_eigen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    spectra::Rng rng(1);
    const Eigen::MatrixXd X = random_symmetric(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(spectra::jacobi_eigen(X));
}
BENCHMARK(BM_jacobi_eigen)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_enumerate_block_group(benchmark::State& state) {
    const int block = static_cast<int>(state.range(0));
    std::vector<int> members(block);
    for (int i = 0; i < block; ++i) members[i] = i + 1;
    const spectra::Partition P(block, {members});
    for (auto _ : state) benchmark::DoNotOptimize(spectra::enumerate_block_group(P));
}
BENCHMARK(BM_enumerate_block_group)->Arg(5)->Arg(7)->Arg(9);

void BM_project_by_group(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<int> members(n);
    for (int i = 0; i < n; ++i) members[i] = i + 1;
    const spectra::Stratum S(spectra::Partition(n, {members}));
    spectra::Rng rng(2);
    const Eigen::VectorXd x = rng.gaussian_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(S.project_perpperp_by_group(x));
}
BENCHMARK(BM_project_by_group)->Arg(5)->Arg(7);

void BM_gradient_check(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    spectra::Rng rng(3);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = static_cast<double>(n - i);
    const Eigen::MatrixXd X = spectra::lift_point(x, spectra::random_orthogonal(n, rng));
    const auto f = spectra::builtin_function("sumexp", n);
    for (auto _ : state) benchmark::DoNotOptimize(spectra::gradient_check_error(f, X));
}
BENCHMARK(BM_gradient_check)->Arg(3)->Arg(6);

void BM_estimate_spectral_dimension(benchmark::State& state) {
    const auto manifolds = spectra::builtin_test_manifolds();
    const auto& M = manifolds[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(spectra::estimate_spectral_dimension(M, M.base_point));
}
BENCHMARK(BM_estimate_spectral_dimension)->Arg(1)->Arg(6)->Arg(7);

void BM_symmetrize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    spectra::Polynomial p(n);
    std::vector<int> exps(n, 0);
    exps[0] = 2;
    p.add_term(exps, spectra::Rational(1));
    exps[0] = 0;
    if (n > 1) exps[1] = 1;
    p.add_term(exps, spectra::Rational(-1));
    for (auto _ : state) benchmark::DoNotOptimize(spectra::symmetrize(p));
}
BENCHMARK(BM_symmetrize)->Arg(4)->Arg(6);

void BM_run_suite(benchmark::State& state) {
    spectra::SuiteConfig config;
    config.max_n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectra::run_suite(config));
}
BENCHMARK(BM_run_suite)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
