// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rainbow::kernels {

namespace detail {
std::size_t common(const BitRows &rows, std::size_t a, std::size_t b);
std::uint64_t sample_count(const BitRows &rows, const SetPair &p);
std::vector<std::uint64_t> mask_of(const BitRows &rows, const std::vector<std::uint32_t> &Y);
bool outside(const BitRows &rows, std::size_t i, const std::vector<std::uint64_t> &mask, double lo, double hi);
void overlaps_of(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t i, std::uint32_t allowed,
                 std::vector<Overlap> &out);
} // namespace detail

namespace {
int budget = 0;
}

int thread_budget()
{
    if (budget > 0)
        return budget;
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char *env = std::getenv("RAINBOW_EMBED_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0)
            n = std::min(n, cap);
    }
    return std::max(n, 1);
}

void set_thread_budget(int threads) { budget = threads; }

namespace parallel {

std::uint64_t pair_degree_count(const BitRows &rows, std::size_t min_degree, std::size_t max_common)
{
    const long n = long(rows.rows);
    std::vector<std::size_t> deg(rows.rows);
#pragma omp parallel for num_threads(thread_budget())
    for (long i = 0; i < n; ++i)
        deg[i] = rows.row_count(std::size_t(i));

    std::uint64_t good = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : good) num_threads(thread_budget())
    for (long u = 0; u < n; ++u) {
        if (deg[u] < min_degree)
            continue;
        for (long v = u + 1; v < n; ++v)
            if (deg[v] >= min_degree && detail::common(rows, std::size_t(u), std::size_t(v)) <= max_common)
                ++good;
    }
    return good;
}

std::vector<std::uint64_t> sampled_edge_counts(const BitRows &rows, const std::vector<SetPair> &samples)
{
    std::vector<std::uint64_t> out(samples.size());
    const long n = long(samples.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_budget())
    for (long s = 0; s < n; ++s)
        out[s] = detail::sample_count(rows, samples[s]);
    return out;
}

std::uint64_t slicing_exceptions(const BitRows &rows, const std::vector<std::uint32_t> &Y, double lo, double hi)
{
    auto mask = detail::mask_of(rows, Y);
    std::uint64_t bad = 0;
    const long n = long(rows.rows);
#pragma omp parallel for reduction(+ : bad) num_threads(thread_budget())
    for (long i = 0; i < n; ++i)
        bad += detail::outside(rows, std::size_t(i), mask, lo, hi);
    return bad;
}

std::vector<Overlap> copy_overlaps(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t allowed)
{
    // per row buffers, concatenated in row order: same output as the serial loop
    std::vector<std::vector<Overlap>> rows(copies.size());
    const long n = long(copies.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_budget())
    for (long i = 0; i < n; ++i)
        detail::overlaps_of(copies, std::uint32_t(i), allowed, rows[i]);
    std::vector<Overlap> out;
    for (auto &r : rows)
        out.insert(out.end(), r.begin(), r.end());
    return out;
}

} // namespace parallel
} // namespace rainbow::kernels
