// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/pipeline.hpp"

#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rainbow {

namespace {

constexpr std::uint64_t kLayerStream = 0x1a7;
constexpr std::uint64_t kPadStream = 0xbad;
constexpr std::uint64_t kSplitStream = 0x5b1;
constexpr std::uint64_t kTauStream = 0x7a0;

// index of the unordered pair i < j among r parts, row major
std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t r)
{
    if (i > j)
        std::swap(i, j);
    return i * r - i * (i + 1) / 2 + (j - i - 1);
}

Colour single_colour(const ColouredGraph &g, EdgeId e)
{
    auto cs = g.colours(e);
    if (cs.size() != 1)
        fail(ErrorKind::InvalidInput, "host edge " + std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v) +
                                          " carries " + std::to_string(cs.size()) + " colours, expected 1");
    return cs[0];
}

std::string pair_name(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

} // namespace

LayerSplit split_host_colours(const ColouredGraph &g, double gamma, std::uint64_t seed)
{
    if (gamma < 0 || gamma > 1)
        fail(ErrorKind::Precondition, "layer split gamma must lie in [0, 1]");
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        single_colour(g, e);
    LayerSplit s;
    s.in_B.assign(g.colour_count(), 0);
    Rng rng(derive_seed(seed, kLayerStream));
    for (Colour a = 0; a < g.colour_count(); ++a)
        s.in_B[a] = rng.bernoulli(gamma);
    s.A = filter_edges(g, [&](EdgeId e) { return !s.in_B[g.colours(e)[0]]; });
    s.B = filter_edges(g, [&](EdgeId e) { return bool(s.in_B[g.colours(e)[0]]); });
    return s;
}

std::size_t pad_h_matchings(BlowUpInstance &inst, double gamma, std::uint64_t seed)
{
    validate_instance(inst);
    const auto r = inst.r();
    const auto target = std::size_t(std::ceil(gamma * gamma * inst.cluster_size() - 1e-9));
    auto part = part_index(inst.H.vertex_count(), inst.X);
    GraphBuilder b(inst.H.vertex_count());
    b.set_labels(inst.H.labels());
    std::vector<std::vector<int>> nbr_in; // per vertex: does it have an H-neighbour in cluster j
    nbr_in.assign(inst.H.vertex_count(), std::vector<int>(r, 0));
    for (auto &e : inst.H.edges()) {
        b.add_edge(e.u, e.v);
        if (part[e.u] >= 0 && part[e.v] >= 0) {
            nbr_in[e.u][part[e.v]] = 1;
            nbr_in[e.v][part[e.u]] = 1;
        }
    }
    auto counts = pair_edge_counts(inst.H, inst.X);
    Rng rng(derive_seed(seed, kPadStream));
    std::size_t added = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            auto have = counts[i][j];
            if (have >= target)
                continue;
            VertexSet fi, fj;
            for (auto x : inst.X[i])
                if (!nbr_in[x][j])
                    fi.push_back(x);
            for (auto y : inst.X[j])
                if (!nbr_in[y][i])
                    fj.push_back(y);
            rng.shuffle(fi);
            rng.shuffle(fj);
            for (std::size_t q = 0; q < std::min(fi.size(), fj.size()) && have < target; ++q, ++have, ++added) {
                b.add_edge(fi[q], fj[q]);
                nbr_in[fi[q]][j] = nbr_in[fj[q]][i] = 1;
            }
        }
    inst.H = b.build();
    return added;
}

std::pair<ColouredGraph, ColourSplitReport> colour_split_transform(const BlowUpInstance &inst, std::uint64_t seed,
                                                                   const ColourSplitOptions &opts)
{
    validate_instance(inst);
    const auto r = inst.r();
    const double gamma = inst.params.gamma, g2 = gamma * gamma;
    const double n = inst.cluster_size();
    const std::size_t P = r * (r - 1) / 2;
    if (r < 2)
        fail(ErrorKind::Precondition, "colour split needs at least two clusters");
    if (double(P) * g2 >= 1)
        fail(ErrorKind::Precondition, "colour split needs C(r,2) gamma^2 < 1");
    const auto eh = pair_edge_counts(inst.H, inst.X);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (double(eh[i][j]) < g2 * n - 1e-9)
                fail(ErrorKind::Precondition, "pair " + pair_name(i, j) + " has e_H = " + std::to_string(eh[i][j]) +
                                                  " < gamma^2 n; pad H first");

    const auto &G = inst.G;
    const std::size_t Delta = std::max<std::size_t>(1, std::max(inst.params.Delta, inst.H.max_degree()));
    auto part = part_index(G.vertex_count(), inst.V);
    std::vector<long> slot(G.edge_count(), -1);
    for (EdgeId e = 0; e < G.edge_count(); ++e) {
        single_colour(G, e);
        int a = part[G.edge(e).u], b = part[G.edge(e).v];
        if (a >= 0 && b >= 0 && a != b)
            slot[e] = long(pair_slot(std::size_t(a), std::size_t(b), r));
    }

    ColourSplitReport rep;
    rep.p.assign(P, 0);
    std::vector<double> pair_density(P, 0), gvv(P, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            auto s = pair_slot(i, j, r);
            rep.p[s] = std::min(1.0, double(eh[i][j]) / (2.0 * double(Delta) * n));
            gvv[s] = double(inst.V[i].size()) * double(inst.V[j].size());
        }
    for (EdgeId e = 0; e < G.edge_count(); ++e)
        if (slot[e] >= 0)
            pair_density[slot[e]] += 1;
    double dprime = opts.target_density;
    if (dprime < 0) {
        dprime = 1;
        for (std::size_t s = 0; s < P; ++s)
            dprime = std::min(dprime, g2 * rep.p[s] * pair_density[s] / gvv[s]);
    }
    rep.target_density = dprime;

    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, opts.retries); ++attempt) {
        rep.attempts = attempt + 1;
        rep.failures.clear();
        Rng rng(derive_seed(seed, kSplitStream, attempt));
        // stage 1
        std::vector<char> keep(G.edge_count(), 0);
        for (EdgeId e = 0; e < G.edge_count(); ++e)
            if (slot[e] >= 0)
                keep[e] = rng.bernoulli(rep.p[slot[e]]);
        // stage 2: tau and the survival coins
        std::vector<double> counts(P);
        for (Colour a = 0; a < G.colour_count(); ++a) {
            auto cls = G.colour_class(a);
            std::fill(counts.begin(), counts.end(), 0.0);
            double total = 0;
            for (auto e : cls)
                if (keep[e]) {
                    counts[slot[e]] += 1;
                    total += 1;
                }
            if (total == 0)
                continue;
            const double thr = g2 * total / (1.0 - double(P) * g2);
            std::vector<double> q(P + 1, 0);
            double heavy = 0;
            std::size_t light = 0;
            for (std::size_t s = 0; s < P; ++s)
                if (counts[s] > thr)
                    heavy += counts[s];
                else
                    ++light;
            double mass = 0;
            for (std::size_t s = 0; s < P; ++s) {
                q[s] = counts[s] > thr ? (1.0 - double(light) * g2) * counts[s] / heavy : g2;
                mass += q[s];
            }
            q[P] = std::max(0.0, 1.0 - mass); // no pair
            auto tau = rng.weighted(q);
            for (auto e : cls) {
                if (!keep[e])
                    continue;
                keep[e] = std::size_t(slot[e]) == tau && rng.bernoulli(g2 / q[tau]);
            }
        }
        // stage 3: thin every pair to d'
        for (EdgeId e = 0; e < G.edge_count(); ++e)
            if (keep[e]) {
                double expected = g2 * rep.p[slot[e]] * pair_density[slot[e]] / gvv[slot[e]];
                if (expected > dprime)
                    keep[e] = rng.bernoulli(dprime / expected);
            }
        auto out = filter_edges(G, [&](EdgeId e) { return bool(keep[e]); });

        // exact post-checks
        rep.colour_split = colouring_stats(out, inst.V).split_violations == 0;
        if (!rep.colour_split)
            rep.failures.push_back("colour-split");
        auto ge = pair_edge_counts(out, inst.V);
        rep.worst_bound_ratio.assign(P, 0);
        rep.bounded = true;
        std::vector<std::vector<std::size_t>> per(P);
        for (Colour a = 0; a < out.colour_count(); ++a) {
            auto cls = out.colour_class(a);
            std::fill(counts.begin(), counts.end(), 0.0);
            for (auto e : cls) {
                int i = part[out.edge(e).u], j = part[out.edge(e).v];
                counts[pair_slot(std::size_t(i), std::size_t(j), r)] += 1;
            }
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j) {
                    auto s = pair_slot(i, j, r);
                    if (counts[s] == 0)
                        continue;
                    double allowed = (1.0 - gamma / 2) * double(ge[i][j]) / double(eh[i][j]);
                    rep.worst_bound_ratio[s] = std::max(rep.worst_bound_ratio[s], counts[s] / allowed);
                    if (counts[s] > allowed + 1e-9 && rep.bounded) {
                        rep.bounded = false;
                        rep.failures.push_back("bounded: colour " + out.colour_label(a) + " has " +
                                               std::to_string(std::size_t(counts[s])) + " edges on pair " +
                                               pair_name(i, j) + ", allowed " + std::to_string(allowed));
                    }
                }
        }
        rep.regular = true;
        for (std::size_t i = 0; i < r && rep.regular; ++i)
            for (std::size_t j = i + 1; j < r && rep.regular; ++j) {
                double d = double(ge[i][j]) / gvv[pair_slot(i, j, r)];
                RegularityParams rp{inst.params.eps, d, opts.sample_count, derive_seed(seed, kSplitStream + 1, attempt)};
                if (!check_super_regular(out, inst.V[i], inst.V[j], rp).passed) {
                    rep.regular = false;
                    rep.failures.push_back("regular: pair " + pair_name(i, j));
                }
            }
        if (rep.colour_split && rep.bounded && rep.regular)
            return {std::move(out), rep};
    }
    Error err(ErrorKind::RetriesExhausted,
              "colour split transform failed after " + std::to_string(rep.attempts) + " attempts", "colour_split");
    err.details = rep.failures;
    throw err;
}

std::pair<BlowUpInstance, RefinementReport> refine_instance(const BlowUpInstance &inst, double gamma,
                                                            std::uint64_t seed, std::size_t retries)
{
    validate_instance(inst);
    if (colouring_stats(inst.G, inst.V).split_violations != 0)
        fail(ErrorKind::Precondition, "refine_instance needs a colour-split instance");
    auto rp = refine_partition(inst, gamma, seed);
    const auto &G = inst.G;
    const auto m = rp.X.size();
    const auto &Hp = rp.H_padded;
    auto hcount = pair_edge_counts(Hp, rp.X);
    auto gpart = part_index(G.vertex_count(), rp.V);
    auto cpart = part_index(G.vertex_count(), inst.V);

    RefinementReport rep;
    // refined pairs must carry H' matchings
    rep.matchings = true;
    auto hpart = part_index(Hp.vertex_count(), rp.X);
    for (Vertex x = 0; x < Hp.vertex_count() && rep.matchings; ++x) {
        std::vector<int> seen(m, 0);
        for (auto w : Hp.neighbours(x))
            if (hpart[w] >= 0 && seen[hpart[w]]++) {
                rep.matchings = false;
                rep.failures.push_back("matching: vertex " + std::to_string(x) + " has two neighbours in class " +
                                       std::to_string(hpart[w]));
                break;
            }
    }

    // p over refined pairs below each cluster pair
    const auto r = inst.r();
    std::vector<std::vector<double>> hc(r, std::vector<double>(r, 0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (rp.parent[a] != rp.parent[b])
                hc[rp.parent[a]][rp.parent[b]] += double(hcount[a][b]);
    auto gcl = pair_edge_counts(G, inst.V);

    BlowUpInstance out;
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, retries); ++attempt) {
        rep.attempts = attempt + 1;
        rep.failures.erase(std::remove_if(rep.failures.begin(), rep.failures.end(),
                                          [](auto &f) { return f.rfind("matching", 0) != 0; }),
                           rep.failures.end());
        Rng rng(derive_seed(seed, kTauStream, attempt));
        std::vector<long> tau(G.colour_count(), -1);
        for (Colour a = 0; a < G.colour_count(); ++a) {
            auto cls = G.colour_class(a);
            if (cls.empty())
                continue;
            int i1 = cpart[G.edge(cls[0]).u], i2 = cpart[G.edge(cls[0]).v];
            if (i1 < 0 || i2 < 0 || i1 == i2)
                continue;
            std::vector<std::pair<std::size_t, std::size_t>> opts;
            std::vector<double> w;
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y)
                    if (int(rp.parent[x]) == i1 && int(rp.parent[y]) == i2) {
                        opts.emplace_back(x, y);
                        w.push_back(hc[i1][i2] > 0 ? double(hcount[x][y]) / hc[i1][i2] : 1.0);
                    }
            if (opts.empty())
                continue;
            auto k = rng.weighted(w);
            tau[a] = long(std::min(opts[k].first, opts[k].second) * m + std::max(opts[k].first, opts[k].second));
        }
        std::vector<char> keep(G.edge_count(), 0);
        for (EdgeId e = 0; e < G.edge_count(); ++e) {
            int a = gpart[G.edge(e).u], b = gpart[G.edge(e).v];
            if (a < 0 || b < 0 || rp.parent[a] == rp.parent[b])
                continue;
            keep[e] = tau[G.colours(e)[0]] == long(std::min(a, b)) * long(m) + long(std::max(a, b));
        }
        // thinning to the smallest expected density p * d
        std::vector<std::vector<double>> expect(m, std::vector<double>(m, -1));
        double dprime = 1;
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y) {
                auto i1 = rp.parent[x], i2 = rp.parent[y];
                if (i1 == i2)
                    continue;
                double p = hc[i1][i2] > 0 ? double(hcount[x][y]) / hc[i1][i2] : 0;
                double d = double(gcl[i1][i2]) / (double(inst.V[i1].size()) * double(inst.V[i2].size()));
                expect[x][y] = p * d;
                if (p * d > 0)
                    dprime = std::min(dprime, p * d);
            }
        for (EdgeId e = 0; e < G.edge_count(); ++e)
            if (keep[e]) {
                auto a = std::size_t(gpart[G.edge(e).u]), b = std::size_t(gpart[G.edge(e).v]);
                if (expect[a][b] > dprime)
                    keep[e] = rng.bernoulli(dprime / expect[a][b]);
            }
        GraphBuilder gb(G.vertex_count());
        gb.set_labels(G.labels());
        for (EdgeId e = 0; e < G.edge_count(); ++e)
            if (keep[e])
                gb.add_edge(G.edge(e).u, G.edge(e).v, G.colours(e)[0]);
        // artificial rainbow fill of intra cluster pairs
        rep.artificial_edges = 0;
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = x + 1; y < m; ++y) {
                if (rp.parent[x] != rp.parent[y])
                    continue;
                for (auto u : rp.V[x])
                    for (auto v : rp.V[y])
                        if (rng.bernoulli(dprime)) {
                            auto c = gb.labels().intern("art:" + std::to_string(rep.artificial_edges++));
                            gb.add_edge(u, v, c);
                        }
            }
        auto G2 = gb.build();
        rep.colour_split = colouring_stats(G2, rp.V).split_violations == 0;
        if (!rep.colour_split)
            rep.failures.push_back("colour-split");
        rep.bounded = true;
        auto g2c = pair_edge_counts(G2, rp.V);
        for (Colour a = 0; a < G2.colour_count() && rep.bounded; ++a) {
            auto cls = G2.colour_class(a);
            if (cls.empty())
                continue;
            auto x = std::size_t(gpart[G2.edge(cls[0]).u]), y = std::size_t(gpart[G2.edge(cls[0]).v]);
            if (hcount[x][y] == 0)
                continue;
            double allowed = (1.0 - gamma / 2) * double(g2c[x][y]) / double(hcount[x][y]);
            if (double(cls.size()) > allowed + 1e-9) {
                rep.bounded = false;
                rep.failures.push_back("bounded: colour " + G2.colour_label(a) + " has " +
                                       std::to_string(cls.size()) + " edges, allowed " + std::to_string(allowed));
            }
        }
        out.H = Hp;
        out.G = std::move(G2);
        out.X = rp.X;
        out.V = rp.V;
        out.params = inst.params;
        out.params.Delta = Hp.max_degree();
        out.params.d = dprime;
        if (rep.matchings && rep.colour_split && rep.bounded)
            return {std::move(out), rep};
    }
    Error err(ErrorKind::RetriesExhausted,
              "refinement failed after " + std::to_string(rep.attempts) + " attempts", "refine_instance");
    err.details = rep.failures;
    throw err;
}

} // namespace rainbow
