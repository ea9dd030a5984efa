// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against their OpenMP versions.
// Arg: side length n of the random bipartite graph G(n, n, 1/2).

#include "rainbow/generators.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace rainbow;
namespace k = rainbow::kernels;

namespace {

k::BitRows rows_for(std::size_t n)
{
    auto g = gen::random_bipartite(n, n, 0.5, 1);
    VertexSet A(n), B(n);
    std::iota(A.begin(), A.end(), 0u);
    std::iota(B.begin(), B.end(), Vertex(n));
    return k::neighbour_rows(g, A, B);
}

std::vector<k::SetPair> samples_for(std::size_t n, std::size_t count)
{
    Rng rng(2);
    std::vector<k::SetPair> out(count);
    for (auto &s : out)
        for (std::uint32_t i = 0; i < n; ++i) {
            if (rng.bernoulli(0.3))
                s.S.push_back(i);
            if (rng.bernoulli(0.3))
                s.T.push_back(i);
        }
    return out;
}

// n copies of a 2n-edge random family over n^2 keys, like a packing check
std::vector<std::vector<std::uint64_t>> copies_for(std::size_t n)
{
    Rng rng(3);
    std::vector<std::vector<std::uint64_t>> out(n);
    for (auto &c : out) {
        for (std::size_t e = 0; e < 2 * n; ++e)
            c.push_back(rng.below(n * n));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    return out;
}

template <auto F>
void pair_degree(benchmark::State &state)
{
    auto n = std::size_t(state.range(0));
    auto rows = rows_for(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(rows, n / 2 - n / 10, n / 4 + n / 20));
}

template <auto F>
void sampled_counts(benchmark::State &state)
{
    auto n = std::size_t(state.range(0));
    auto rows = rows_for(n);
    auto samples = samples_for(n, 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(rows, samples));
}

template <auto F>
void slicing(benchmark::State &state)
{
    auto n = std::size_t(state.range(0));
    auto rows = rows_for(n);
    std::vector<std::uint32_t> Y(n / 2);
    std::iota(Y.begin(), Y.end(), 0u);
    for (auto _ : state)
        benchmark::DoNotOptimize(F(rows, Y, 0.4 * double(Y.size()), 0.6 * double(Y.size())));
}

template <auto F>
void overlaps(benchmark::State &state)
{
    auto copies = copies_for(std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(F(copies, 0));
}

} // namespace

BENCHMARK(pair_degree<k::serial::pair_degree_count>)->Name("pair_degree/serial")->Arg(300)->Arg(1000);
BENCHMARK(pair_degree<k::parallel::pair_degree_count>)->Name("pair_degree/omp")->Arg(300)->Arg(1000)->UseRealTime();
BENCHMARK(sampled_counts<k::serial::sampled_edge_counts>)->Name("sampled_counts/serial")->Arg(300)->Arg(1000);
BENCHMARK(sampled_counts<k::parallel::sampled_edge_counts>)
    ->Name("sampled_counts/omp")
    ->Arg(300)
    ->Arg(1000)
    ->UseRealTime();
BENCHMARK(slicing<k::serial::slicing_exceptions>)->Name("slicing/serial")->Arg(1000)->Arg(4000);
BENCHMARK(slicing<k::parallel::slicing_exceptions>)->Name("slicing/omp")->Arg(1000)->Arg(4000)->UseRealTime();
BENCHMARK(overlaps<k::serial::copy_overlaps>)->Name("copy_overlaps/serial")->Arg(101)->Arg(401);
BENCHMARK(overlaps<k::parallel::copy_overlaps>)->Name("copy_overlaps/omp")->Arg(101)->Arg(401)->UseRealTime();

BENCHMARK_MAIN();
