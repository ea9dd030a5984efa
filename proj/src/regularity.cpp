// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/regularity.hpp"

#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <numeric>

namespace rainbow {

namespace {

constexpr double kTol = 1e-12;
constexpr std::size_t kMaxWitnesses = 100;
constexpr std::uint64_t kSampleStream = 0x5e9;

bool within(double x, double d, double eps) { return x >= d - eps - kTol && x <= d + eps + kTol; }

void check_disjoint(std::size_t n, const VertexSet &A, const VertexSet &B)
{
    if (A.empty() || B.empty())
        fail(ErrorKind::Precondition, "regularity check needs non-empty sides");
    part_index(n, {A, B});
}

void add_witness(RegularityVerdict &v, SetWitness w)
{
    v.passed = false;
    if (v.witnesses.size() < kMaxWitnesses)
        v.witnesses.push_back(std::move(w));
}

void note_density(RegularityVerdict &v, double dens, double d, bool &first)
{
    if (first || std::abs(dens - d) > std::abs(v.worst_pair_density - d))
        v.worst_pair_density = dens;
    first = false;
}

// degree clause on both sides, into the opposite side
void degree_clause(const ColouredGraph &g, const VertexSet &A, const VertexSet &B, const RegularityParams &p,
                   RegularityVerdict &v)
{
    std::vector<char> inA(g.vertex_count(), 0), inB(g.vertex_count(), 0);
    for (auto a : A)
        inA[a] = 1;
    for (auto b : B)
        inB[b] = 1;
    double lo = 2, hi = -1;
    auto side = [&](const VertexSet &X, const std::vector<char> &other, std::size_t other_size) {
        for (auto x : X) {
            std::size_t k = 0;
            for (auto w : g.neighbours(x))
                k += other[w];
            double f = double(k) / double(other_size);
            lo = std::min(lo, f);
            hi = std::max(hi, f);
            if (!within(f, p.d, p.eps))
                add_witness(v, {"degree", {x}, {}, f});
        }
    };
    side(A, inB, B.size());
    side(B, inA, A.size());
    v.degree_range = {lo, hi};
}

std::vector<std::uint32_t> take(Rng &rng, const std::vector<std::uint32_t> &pool, std::size_t k)
{
    auto idx = sample_indices(rng, std::uint32_t(pool.size()), std::uint32_t(k));
    std::vector<std::uint32_t> out(k);
    for (std::size_t i = 0; i < k; ++i)
        out[i] = pool[idx[i]];
    std::sort(out.begin(), out.end());
    return out;
}

// positions in [0, m) that are (or are not) set in the given row
std::vector<std::uint32_t> row_pool(const kernels::BitRows &rows, std::size_t r, bool in)
{
    std::vector<std::uint32_t> out;
    for (std::size_t j = 0; j < rows.cols; ++j)
        if (rows.test(r, j) == in)
            out.push_back(std::uint32_t(j));
    return out;
}

std::vector<std::uint32_t> iota_pool(std::size_t m)
{
    std::vector<std::uint32_t> out(m);
    std::iota(out.begin(), out.end(), 0u);
    return out;
}

VertexSet to_vertices(const VertexSet &base, const std::vector<std::uint32_t> &pos)
{
    VertexSet out;
    out.reserve(pos.size());
    for (auto i : pos)
        out.push_back(base[i]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::size_t threshold_size(double eps, std::size_t m)
{
    auto k = std::size_t(std::ceil(eps * double(m) - 1e-9));
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(m, 1));
}

double density(const ColouredGraph &g, const VertexSet &S, const VertexSet &T)
{
    if (S.empty() || T.empty())
        fail(ErrorKind::Precondition, "density of an empty set");
    return double(edges_between(g, S, T)) / (double(S.size()) * double(T.size()));
}

bool check_pair_degree_regularity(const ColouredGraph &g, const VertexSet &A, const VertexSet &B, double eps,
                                  double d)
{
    if (A.size() < 2)
        fail(ErrorKind::Precondition, "pair degree criterion needs |A| >= 2");
    auto rows = kernels::neighbour_rows(g, A, B);
    double lo = (d - eps) * double(B.size());
    auto min_degree = lo <= 0 ? std::size_t(0) : std::size_t(std::ceil(lo - 1e-9));
    auto max_common = std::size_t(std::floor((d + eps) * (d + eps) * double(B.size()) + 1e-9));
    auto good = kernels::parallel::pair_degree_count(rows, min_degree, max_common);
    // unordered pairs: (1 - 5 eps) of all C(|A|, 2)
    double pairs = double(A.size()) * double(A.size() - 1) / 2.0;
    return double(good) >= (1.0 - 5.0 * eps) * pairs - 1e-9;
}

RegularityVerdict check_super_regular_sampled(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                              const RegularityParams &p)
{
    if (p.eps <= 0 || p.sample_count == 0)
        fail(ErrorKind::Precondition, "regularity needs eps > 0 and at least one sample");
    check_disjoint(g.vertex_count(), A, B);
    if (double(A.size()) * p.eps < 1 - 1e-9 || double(B.size()) * p.eps < 1 - 1e-9)
        fail(ErrorKind::Precondition, "sampled regularity needs |A|, |B| >= 1/eps (|A|=" + std::to_string(A.size()) +
                                          ", |B|=" + std::to_string(B.size()) + ")");
    RegularityVerdict v;
    degree_clause(g, A, B, p, v);

    auto rows = kernels::neighbour_rows(g, A, B);
    auto cols = kernels::neighbour_rows(g, B, A);
    auto s = threshold_size(p.eps, A.size());
    auto t = threshold_size(p.eps, B.size());
    auto allA = iota_pool(A.size()), allB = iota_pool(B.size());

    // sample i mixes uniform sets with sets inside or outside the
    // neighbourhood of a random pivot on the other side
    std::vector<kernels::SetPair> samples(p.sample_count);
    for (std::size_t i = 0; i < p.sample_count; ++i) {
        Rng rng(derive_seed(p.rng_seed, kSampleStream, i));
        int sk = int(i % 9) / 3, tk = int(i % 3);
        auto pick = [&](int kind, const kernels::BitRows &pivots, const std::vector<std::uint32_t> &all,
                        std::size_t k) {
            if (kind == 0)
                return take(rng, all, k);
            auto pool = row_pool(pivots, rng.below(pivots.rows), kind == 1);
            return take(rng, pool.size() >= k ? pool : all, k);
        };
        samples[i].S = pick(sk, cols, allA, s);
        samples[i].T = pick(tk, rows, allB, t);
    }
    auto counts = kernels::parallel::sampled_edge_counts(rows, samples);
    bool first = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double dens = double(counts[i]) / (double(s) * double(t));
        note_density(v, dens, p.d, first);
        if (!within(dens, p.d, p.eps))
            add_witness(v, {"density", to_vertices(A, samples[i].S), to_vertices(B, samples[i].T), dens});
    }
    v.samples_checked = samples.size();

    if (A.size() >= 2 && !check_pair_degree_regularity(g, A, B, p.eps, p.d))
        add_witness(v, {"pair-degree", {}, {}, 0});
    return v;
}

RegularityVerdict check_super_regular_exact(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                            const RegularityParams &p)
{
    if (p.eps <= 0)
        fail(ErrorKind::Precondition, "regularity needs eps > 0");
    check_disjoint(g.vertex_count(), A, B);
    if (A.size() > 22)
        fail(ErrorKind::CapExceeded, "exact regularity enumerates 2^|A| sets; |A|=" + std::to_string(A.size()));
    RegularityVerdict v;
    v.exhaustive = true;
    degree_clause(g, A, B, p, v);

    auto rows = kernels::neighbour_rows(g, A, B);
    auto s = threshold_size(p.eps, A.size());
    auto t = threshold_size(p.eps, B.size());
    const std::size_t m = B.size();
    std::vector<std::uint32_t> deg(m);
    std::vector<std::uint32_t> order(m);
    bool first = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << A.size()); ++mask) {
        auto size = std::size_t(std::popcount(mask));
        if (size < s)
            continue;
        std::fill(deg.begin(), deg.end(), 0);
        for (std::size_t i = 0; i < A.size(); ++i)
            if (mask >> i & 1)
                for (std::size_t j = 0; j < m; ++j)
                    deg[j] += rows.test(i, j);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return deg[x] < deg[y] || (deg[x] == deg[y] && x < y); });
        std::uint64_t low = 0, high = 0;
        for (std::size_t k = 1; k <= m; ++k) {
            low += deg[order[k - 1]];
            high += deg[order[m - k]];
            if (k < t)
                continue;
            double denom = double(size) * double(k);
            double dl = double(low) / denom, dh = double(high) / denom;
            note_density(v, dl, p.d, first);
            note_density(v, dh, p.d, first);
            ++v.samples_checked;
            bool bad_low = !within(dl, p.d, p.eps), bad_high = !within(dh, p.d, p.eps);
            if (bad_low || bad_high) {
                std::vector<std::uint32_t> Spos, Tpos;
                for (std::size_t i = 0; i < A.size(); ++i)
                    if (mask >> i & 1)
                        Spos.push_back(std::uint32_t(i));
                for (std::size_t q = 0; q < k; ++q)
                    Tpos.push_back(bad_low ? order[q] : order[m - 1 - q]);
                add_witness(v, {"density", to_vertices(A, Spos), to_vertices(B, Tpos), bad_low ? dl : dh});
                if (v.witnesses.size() >= kMaxWitnesses)
                    return v;
            }
        }
    }
    if (A.size() >= 2 && !check_pair_degree_regularity(g, A, B, p.eps, p.d))
        add_witness(v, {"pair-degree", {}, {}, 0});
    return v;
}

RegularityVerdict check_super_regular(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                      const RegularityParams &p)
{
    // the set clause is symmetric, so enumerate the smaller side
    auto small = std::min(A.size(), B.size()), large = std::max(A.size(), B.size());
    if (small <= 16 && (std::uint64_t(1) << small) * large <= (std::uint64_t(1) << 24)) {
        if (A.size() <= B.size())
            return check_super_regular_exact(g, A, B, p);
        auto v = check_super_regular_exact(g, B, A, p);
        // the pair degree criterion is one sided; restore the A side reading
        std::erase_if(v.witnesses, [](auto &w) { return w.kind == "pair-degree"; });
        for (auto &w : v.witnesses)
            std::swap(w.S, w.T);
        v.passed = v.witnesses.empty();
        if (A.size() >= 2 && !check_pair_degree_regularity(g, A, B, p.eps, p.d))
            add_witness(v, {"pair-degree", {}, {}, 0});
        return v;
    }
    return check_super_regular_sampled(g, A, B, p);
}

RegularityVerdict check_quasirandom(const ColouredGraph &g, double eps, double d, std::size_t sample_count,
                                    std::uint64_t seed)
{
    const std::size_t n = g.vertex_count();
    if (eps <= 0 || double(n) * eps < 1 - 1e-9)
        fail(ErrorKind::Precondition, "quasirandom check needs |V| >= 1/eps");
    RegularityVerdict v;
    double lo = 2, hi = -1;
    for (Vertex x = 0; x < n; ++x) {
        double f = double(g.degree(x)) / double(n);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
        if (!within(f, d, eps))
            add_witness(v, {"degree", {x}, {}, f});
    }
    v.degree_range = {lo, hi};

    auto k = threshold_size(eps, n);
    if (2 * k > n)
        return v; // no disjoint pair of threshold size exists
    VertexSet all(n);
    std::iota(all.begin(), all.end(), 0u);
    auto rows = kernels::neighbour_rows(g, all, all);
    auto everything = iota_pool(n);

    std::vector<kernels::SetPair> samples(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        Rng rng(derive_seed(seed, kSampleStream, i));
        int kind = int(i % 4);
        std::vector<std::uint32_t> inside, outside;
        if (kind != 0) {
            auto pivot = rng.below(n);
            for (std::uint32_t j = 0; j < n; ++j)
                if (j != pivot)
                    (rows.test(pivot, j) ? inside : outside).push_back(j);
        }
        // kind 1: S in N(v), T outside; 2: both inside; 3: both outside
        auto &poolS = kind == 0 ? everything : (kind == 3 ? outside : inside);
        auto &poolT = kind == 0 ? everything : (kind == 2 ? inside : outside);
        if (&poolS == &poolT || poolS.size() < k || poolT.size() < k) {
            auto &pool = (&poolS == &poolT && poolS.size() >= 2 * k) ? poolS : everything;
            auto both = take(rng, pool, 2 * k);
            rng.shuffle(both);
            samples[i].S.assign(both.begin(), both.begin() + long(k));
            samples[i].T.assign(both.begin() + long(k), both.end());
        } else {
            samples[i].S = take(rng, poolS, k);
            samples[i].T = take(rng, poolT, k);
        }
        std::sort(samples[i].S.begin(), samples[i].S.end());
        std::sort(samples[i].T.begin(), samples[i].T.end());
    }
    auto counts = kernels::parallel::sampled_edge_counts(rows, samples);
    bool first = true;
    for (std::size_t i = 0; i < sample_count; ++i) {
        double dens = double(counts[i]) / (double(k) * double(k));
        note_density(v, dens, d, first);
        if (!within(dens, d, eps))
            add_witness(v, {"density", samples[i].S, samples[i].T, dens});
    }
    v.samples_checked = sample_count;
    return v;
}

std::size_t slicing_exceptions(const ColouredGraph &g, const VertexSet &A, const VertexSet &Y, double eps, double d)
{
    auto rows = kernels::neighbour_rows(g, A, Y);
    auto pool = iota_pool(Y.size());
    double m = double(Y.size());
    return std::size_t(kernels::parallel::slicing_exceptions(rows, pool, (d - eps) * m, (d + eps) * m));
}

} // namespace rainbow
