// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/kernels.hpp"

#include <algorithm>
#include <bit>

namespace rainbow::kernels {

std::size_t BitRows::row_count(std::size_t i) const
{
    std::size_t k = 0;
    auto *r = row(i);
    for (std::size_t w = 0; w < words; ++w)
        k += std::size_t(std::popcount(r[w]));
    return k;
}

BitRows neighbour_rows(const ColouredGraph &g, const VertexSet &A, const VertexSet &B)
{
    BitRows br;
    br.rows = A.size();
    br.cols = B.size();
    br.words = (B.size() + 63) / 64;
    br.bits.assign(br.rows * br.words, 0);
    std::vector<std::int64_t> pos(g.vertex_count(), -1);
    for (std::size_t j = 0; j < B.size(); ++j)
        pos[B[j]] = std::int64_t(j);
    for (std::size_t i = 0; i < A.size(); ++i) {
        auto *r = br.row(i);
        for (auto w : g.neighbours(A[i])) {
            auto j = pos[w];
            if (j >= 0)
                r[j >> 6] |= std::uint64_t(1) << (j & 63);
        }
    }
    return br;
}

namespace detail {

std::size_t common(const BitRows &rows, std::size_t a, std::size_t b)
{
    std::size_t k = 0;
    auto *x = rows.row(a);
    auto *y = rows.row(b);
    for (std::size_t w = 0; w < rows.words; ++w)
        k += std::size_t(std::popcount(x[w] & y[w]));
    return k;
}

std::uint64_t sample_count(const BitRows &rows, const SetPair &p)
{
    // T as a mask so each row costs words, not |T|
    std::vector<std::uint64_t> mask(rows.words, 0);
    for (auto t : p.T)
        mask[t >> 6] |= std::uint64_t(1) << (t & 63);
    std::uint64_t k = 0;
    for (auto s : p.S) {
        auto *r = rows.row(s);
        for (std::size_t w = 0; w < rows.words; ++w)
            k += std::uint64_t(std::popcount(r[w] & mask[w]));
    }
    return k;
}

std::vector<std::uint64_t> mask_of(const BitRows &rows, const std::vector<std::uint32_t> &Y)
{
    std::vector<std::uint64_t> mask(rows.words, 0);
    for (auto y : Y)
        mask[y >> 6] |= std::uint64_t(1) << (y & 63);
    return mask;
}

bool outside(const BitRows &rows, std::size_t i, const std::vector<std::uint64_t> &mask, double lo, double hi)
{
    std::size_t k = 0;
    auto *r = rows.row(i);
    for (std::size_t w = 0; w < rows.words; ++w)
        k += std::size_t(std::popcount(r[w] & mask[w]));
    return double(k) < lo - 1e-9 || double(k) > hi + 1e-9;
}

void overlaps_of(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t i, std::uint32_t allowed,
                 std::vector<Overlap> &out)
{
    auto &a = copies[i];
    for (std::uint32_t j = i + 1; j < copies.size(); ++j) {
        auto &b = copies[j];
        std::uint32_t shared = 0;
        std::uint64_t first = 0;
        auto x = a.begin();
        auto y = b.begin();
        while (x != a.end() && y != b.end()) {
            if (*x < *y)
                ++x;
            else if (*y < *x)
                ++y;
            else {
                if (shared == 0)
                    first = *x;
                ++shared;
                ++x;
                ++y;
            }
        }
        if (shared > allowed)
            out.push_back({i, j, shared, first});
    }
}

} // namespace detail

namespace serial {

std::uint64_t pair_degree_count(const BitRows &rows, std::size_t min_degree, std::size_t max_common)
{
    std::vector<std::size_t> deg(rows.rows);
    for (std::size_t i = 0; i < rows.rows; ++i)
        deg[i] = rows.row_count(i);
    std::uint64_t good = 0;
    for (std::size_t u = 0; u < rows.rows; ++u) {
        if (deg[u] < min_degree)
            continue;
        for (std::size_t v = u + 1; v < rows.rows; ++v)
            if (deg[v] >= min_degree && detail::common(rows, u, v) <= max_common)
                ++good;
    }
    return good;
}

std::vector<std::uint64_t> sampled_edge_counts(const BitRows &rows, const std::vector<SetPair> &samples)
{
    std::vector<std::uint64_t> out(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s)
        out[s] = detail::sample_count(rows, samples[s]);
    return out;
}

std::uint64_t slicing_exceptions(const BitRows &rows, const std::vector<std::uint32_t> &Y, double lo, double hi)
{
    auto mask = detail::mask_of(rows, Y);
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < rows.rows; ++i)
        bad += detail::outside(rows, i, mask, lo, hi);
    return bad;
}

std::vector<Overlap> copy_overlaps(const std::vector<std::vector<std::uint64_t>> &copies, std::uint32_t allowed)
{
    std::vector<Overlap> out;
    for (std::uint32_t i = 0; i < copies.size(); ++i)
        detail::overlaps_of(copies, i, allowed, out);
    return out;
}

} // namespace serial
} // namespace rainbow::kernels
