// Serial vs OpenMP-parallel kernel comparison, plus the end-to-end cost of
// one ANOVA table at growing layout sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "linmod/anova.hpp"
#include "linmod/kernels.hpp"
#include "linmod/matrix.hpp"

using linmod::Matrix;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(rng);
    return m;
}

void bm_matmul_serial(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(rng, n, n);
    const Matrix b = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(linmod::matmul_serial(a, b));
}

void bm_matmul_parallel(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(rng, n, n);
    const Matrix b = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(linmod::matmul(a, b));
}

void bm_anova_table(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto a = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<std::size_t>> n(a, std::vector<std::size_t>(a));
    std::size_t total = 0;
    for (auto& row : n)
        for (auto& cell : row) total += (cell = 1 + rng() % 3);
    std::normal_distribution<double> normal;
    std::vector<double> y(total);
    for (double& v : y) v = normal(rng);
    const auto layout = linmod::build_layout_indexed(a, a, n, y);
    for (auto _ : state) benchmark::DoNotOptimize(linmod::anova_table(layout));
}

}  // namespace

BENCHMARK(bm_matmul_serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_matmul_parallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_anova_table)->Arg(3)->Arg(5)->Arg(8);

BENCHMARK_MAIN();
