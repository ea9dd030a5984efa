// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Counting loops shared by the regularity estimators and the packing
// verifiers. Each kernel exists twice: a plain serial reference and an
// OpenMP version. Both must return identical results for any thread count.

#pragma once

#include "rainbow/graph.hpp"

#include <cstdint>
#include <vector>

namespace rainbow::kernels {

// Row i is the neighbourhood of A[i] inside B as a bitset over B's positions.
struct BitRows {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;

    const std::uint64_t *row(std::size_t i) const { return bits.data() + i * words; }
    std::uint64_t *row(std::size_t i) { return bits.data() + i * words; }
    bool test(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    std::size_t row_count(std::size_t i) const;
};

BitRows neighbour_rows(const ColouredGraph &g, const VertexSet &A, const VertexSet &B);

// positions into A and B
struct SetPair {
    std::vector<std::uint32_t> S;
    std::vector<std::uint32_t> T;
};

// one intersecting copy pair (i < j) with the number of shared edges and the
// smallest shared edge key
struct Overlap {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t shared = 0;
    std::uint64_t first_edge = 0;

    friend bool operator==(const Overlap &, const Overlap &) = default;
};

namespace serial {

// unordered pairs u < v of rows with both degrees >= min_degree and
// |N(u) & N(v)| <= max_common
std::uint64_t pair_degree_count(const BitRows &rows, std::size_t min_degree, std::size_t max_common);
// e(S, T) for every sample
std::vector<std::uint64_t> sampled_edge_counts(const BitRows &rows, const std::vector<SetPair> &samples);
// rows whose count inside Y falls outside [lo, hi]
std::uint64_t slicing_exceptions(const BitRows &rows, const std::vector<std::uint32_t> &Y, double lo, double hi);
// copies are sorted edge-key lists; pairs sharing more than `allowed` edges
std::vector<Overlap> copy_overlaps(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t allowed);

} // namespace serial

namespace parallel {

std::uint64_t pair_degree_count(const BitRows &rows, std::size_t min_degree, std::size_t max_common);
std::vector<std::uint64_t> sampled_edge_counts(const BitRows &rows, const std::vector<SetPair> &samples);
std::uint64_t slicing_exceptions(const BitRows &rows, const std::vector<std::uint32_t> &Y, double lo, double hi);
std::vector<Overlap> copy_overlaps(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t allowed);

} // namespace parallel

// threads the OpenMP kernels may use (RAINBOW_EMBED_THREADS caps it)
int thread_budget();
void set_thread_budget(int threads);

} // namespace rainbow::kernels
