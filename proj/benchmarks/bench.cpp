/*
 * Copyright 2026 The bgbs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <bgbs/kernels.hpp>
#include <bgbs/program.hpp>
#include <bgbs/rng.hpp>
#include <bgbs/sampling.hpp>
#include <bgbs/svd.hpp>
#include <bgbs/wishart.hpp>

namespace {

bgbs::ComplexMatrix random_matrix(std::size_t n) {
    bgbs::RngStream rng(42, n);
    return bgbs::sample_gaussian_matrix(n, n, 0.0, 1.0, rng);
}

void BM_Permanent(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const bgbs::ComplexMatrix a = random_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(bgbs::permanent(a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Permanent)->DenseRange(8, 22, 2)->Unit(benchmark::kMicrosecond);

void BM_HafnianNaive(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    bgbs::ComplexMatrix sym(2 * n, 2 * n);
    const bgbs::ComplexMatrix c = random_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            sym(i, n + j) = c(i, j);
            sym(n + j, i) = c(i, j);
        }
    for (auto _ : state) benchmark::DoNotOptimize(bgbs::hafnian_naive(sym));
}
BENCHMARK(BM_HafnianNaive)->DenseRange(2, 6, 1)->Unit(benchmark::kMicrosecond);

void BM_Svd(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const bgbs::ComplexMatrix a = random_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(bgbs::svd(a));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

void BM_WishartSample(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    bgbs::RngStream rng(7, 0);
    for (auto _ : state) benchmark::DoNotOptimize(bgbs::sample_wishart(m, 6.0, rng));
}
BENCHMARK(BM_WishartSample)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_ZInverseFormula(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bgbs::z_inverse_expectation_log(m, 3.0));
}
BENCHMARK(BM_ZInverseFormula)->RangeMultiplier(10)->Range(100, 100000);

}  // namespace

BENCHMARK_MAIN();
