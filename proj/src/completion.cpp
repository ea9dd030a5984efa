// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/pipeline.hpp"

#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace rainbow {

namespace {

constexpr std::uint64_t kReservoirStream = 0xc0e;
constexpr std::uint64_t kValueStream = 0xc1a;
constexpr std::uint64_t kStarStream = 0xc5a;
constexpr std::uint64_t kCompletionCheckStream = 0xcc4;

struct Csp {
    const ColouredGraph *H = nullptr;
    const ColouredGraph *G = nullptr;
    const ColouredGraph *host = nullptr; // G_B, or G when relaxed
    std::vector<char> blocked;           // colours of kept fixed-fixed edges (relaxed only)
    const Embedding *orig = nullptr; // round assignment
    std::vector<int> var_of;         // per H-vertex, -1 when fixed
    std::vector<Vertex> vars;
    std::vector<std::vector<Vertex>> domain; // per var, after the unary filter
    std::vector<std::vector<std::vector<Colour>>> unary_colours; // G_B colours towards fixed neighbours
    std::vector<Vertex> img;
    std::vector<char> taken;
    std::unordered_map<Colour, int> used_b;
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;

    bool original_edge(Vertex x, Vertex v, Vertex y, Vertex w) const
    {
        return (*orig)[x] == v && (*orig)[y] == w && v != kUnmapped && w != kUnmapped;
    }

    // colours x -> v would add, or false when inconsistent
    bool consistent(std::size_t xi, std::size_t di, std::vector<Colour> &add) const
    {
        const Vertex x = vars[xi];
        const Vertex v = domain[xi][di];
        if (taken[v])
            return false;
        add = unary_colours[xi][di];
        for (auto y : H->neighbours(x)) {
            int yi = var_of[y];
            if (yi < 0 || img[yi] == kUnmapped)
                continue;
            Vertex w = img[yi];
            const auto *g = original_edge(x, v, y, w) ? G : host;
            auto e = g->find_edge(v, w);
            if (!e)
                return false;
            for (auto c : g->colours(*e))
                add.push_back(c);
        }
        std::sort(add.begin(), add.end());
        if (std::adjacent_find(add.begin(), add.end()) != add.end())
            return false;
        for (auto c : add) {
            if (c < blocked.size() && blocked[c])
                return false;
            auto it = used_b.find(c);
            if (it != used_b.end() && it->second > 0)
                return false;
        }
        return true;
    }

    bool solve(Rng &rng)
    {
        if (++nodes > budget)
            return false;
        // MRV over unassigned variables
        std::size_t best = vars.size(), best_count = ~std::size_t(0);
        std::vector<Colour> scratch;
        for (std::size_t xi = 0; xi < vars.size(); ++xi) {
            if (img[xi] != kUnmapped)
                continue;
            std::size_t cnt = 0;
            for (std::size_t di = 0; di < domain[xi].size() && cnt < best_count; ++di)
                cnt += consistent(xi, di, scratch);
            if (cnt < best_count) {
                best = xi;
                best_count = cnt;
                if (cnt == 0)
                    return false;
            }
        }
        if (best == vars.size())
            return true;
        std::vector<std::size_t> order(domain[best].size());
        std::iota(order.begin(), order.end(), std::size_t(0));
        rng.shuffle(order);
        // the round image first: it keeps reserved edges
        const Vertex home = (*orig)[vars[best]];
        std::stable_partition(order.begin(), order.end(), [&](std::size_t di) { return domain[best][di] == home; });
        std::vector<Colour> add;
        for (auto di : order) {
            if (!consistent(best, di, add))
                continue;
            Vertex v = domain[best][di];
            img[best] = v;
            taken[v] = 1;
            for (auto c : add)
                ++used_b[c];
            if (solve(rng))
                return true;
            for (auto c : add)
                --used_b[c];
            taken[v] = 0;
            img[best] = kUnmapped;
            if (nodes > budget)
                return false;
        }
        return false;
    }
};

bool regular_pair(const ColouredGraph &g, const VertexSet &A, const VertexSet &B, double eps, double d,
                  std::size_t samples, std::uint64_t seed)
{
    if (A.empty() || B.empty())
        return true;
    RegularityParams rp{std::min(1.0, eps), d, std::max<std::size_t>(1, samples), seed};
    try {
        return check_super_regular(g, A, B, rp).passed;
    } catch (const Error &) {
        return false;
    }
}

} // namespace

CompletionReport complete_embedding(CompletionState &state, PartialEmbedding &phi, const PipelineConfig &cfg,
                                    double eps_last, std::uint64_t seed)
{
    const auto &inst = *state.inst;
    const auto &H = inst.H;
    const auto &G = inst.G;
    const auto &GB = *state.GB;
    const auto r = inst.r();
    const double n = inst.cluster_size();
    CompletionReport rep;
    rep.n_B_nominal = std::size_t(std::ceil(cfg.mu * n - 1e-9));

    auto hpart = part_index(H.vertex_count(), inst.X);
    auto gpart = part_index(G.vertex_count(), inst.V);
    std::vector<VertexSet> left(r), free(r);
    std::vector<char> image_used(G.vertex_count(), 0);
    for (auto v : phi.assignment)
        if (v != kUnmapped)
            image_used[v] = 1;
    std::size_t biggest = 0, max_left = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (auto x : inst.X[i])
            if (phi.assignment[x] == kUnmapped)
                left[i].push_back(x);
        for (auto v : inst.V[i])
            if (!image_used[v])
                free[i].push_back(v);
        if (left[i].size() != free[i].size())
            fail(ErrorKind::Internal, "leftover counts differ in cluster " + std::to_string(i), "completion");
        rep.leftovers += left[i].size();
        biggest = std::max(biggest, inst.X[i].size());
        max_left = std::max(max_left, left[i].size());
    }

    // diagnostic mirror candidacy graphs B_i against phi and E_G*
    {
        const double dB = cfg.star_density >= 0 ? cfg.star_density
                                                : (G.edge_count() ? double(GB.edge_count()) / double(G.edge_count()) : 0) *
                                                      inst.params.d;
        state.B.clear();
        for (std::size_t i = 0; i < r; ++i) {
            CandidacyGraph b;
            b.left = inst.X[i];
            b.right = inst.V[i];
            b.adj.resize(b.left.size());
            for (std::size_t l = 0; l < b.left.size(); ++l) {
                auto x = b.left[l];
                for (std::uint32_t q = 0; q < b.right.size(); ++q) {
                    auto v = b.right[q];
                    bool ok = true;
                    if (phi.assignment[x] != kUnmapped) {
                        Rng star(derive_seed(seed, kStarStream, (std::uint64_t(phi.assignment[x]) << 32) | v));
                        ok = star.bernoulli(dB);
                    }
                    for (auto y : H.neighbours(x))
                        if (ok && phi.assignment[y] != kUnmapped)
                            ok = GB.has_edge(phi.assignment[y], v);
                    if (ok)
                        b.adj[l].push_back({q, {}});
                }
            }
            state.B.push_back(std::move(b));
        }
    }

    const std::size_t step = std::max<std::size_t>(1, (rep.n_B_nominal + 1) / 2);
    const std::size_t base = std::max(rep.n_B_nominal, max_left);
    const auto restarts = std::max<std::size_t>(1, cfg.completion_restarts);
    for (std::size_t s = 0; s < restarts; ++s) {
        rep.restarts = s;
        const std::size_t nB = std::min(biggest, base + s * step);
        Rng rng(derive_seed(seed, kReservoirStream, s));
        std::vector<char> in_res(H.vertex_count(), 0);
        std::vector<VertexSet> Xres(r), Vres(r);
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t want = std::min(nB, inst.X[i].size());
            // images a stuck leftover could take through G_B
            std::vector<char> fits(G.vertex_count(), 0), near(H.vertex_count(), 0);
            for (auto x : left[i]) {
                for (auto y : H.neighbours(x))
                    near[y] = 1;
                for (auto v : inst.V[i]) {
                    bool ok = true;
                    for (auto y : H.neighbours(x))
                        if (phi.assignment[y] != kUnmapped && !GB.has_edge(phi.assignment[y], v)) {
                            ok = false;
                            break;
                        }
                    fits[v] = fits[v] || ok;
                }
            }
            std::vector<std::pair<double, Vertex>> scored;
            for (auto x : inst.X[i])
                if (phi.assignment[x] != kUnmapped) {
                    double sc = 4.0 * fits[phi.assignment[x]] + 2.0 * (H.degree(x) == 0) + 1.0 * near[x] +
                                rng.uniform() * (1.0 + double(s));
                    scored.emplace_back(-sc, x);
                }
            std::sort(scored.begin(), scored.end());
            Xres[i] = left[i];
            Vres[i] = free[i];
            for (std::size_t q = 0; q < scored.size() && Xres[i].size() < want; ++q) {
                Xres[i].push_back(scored[q].second);
                Vres[i].push_back(phi.assignment[scored[q].second]);
            }
            std::sort(Xres[i].begin(), Xres[i].end());
            std::sort(Vres[i].begin(), Vres[i].end());
            for (auto x : Xres[i])
                in_res[x] = 1;
        }

        std::vector<Vertex> isolated;
        for (std::size_t i = 0; i < r; ++i)
            for (auto x : Xres[i])
                if (H.degree(x) == 0)
                    isolated.push_back(x);
        auto build = [&](const ColouredGraph &host, bool relaxed, bool &dead) {
            Csp csp;
            csp.H = &H;
            csp.G = &G;
            csp.host = &host;
            csp.orig = &phi.assignment;
            csp.var_of.assign(H.vertex_count(), -1);
            csp.taken.assign(G.vertex_count(), 0);
            csp.budget = cfg.completion_node_budget;
            if (relaxed) {
                csp.blocked.assign(G.colour_count(), 0);
                for (auto &e : H.edges())
                    if (!in_res[e.u] && !in_res[e.v])
                        for (auto c : G.colours(*G.find_edge(phi.assignment[e.u], phi.assignment[e.v])))
                            csp.blocked[c] = 1;
            }
            for (std::size_t i = 0; i < r; ++i)
                for (auto x : Xres[i])
                    if (H.degree(x) > 0) {
                        csp.var_of[x] = int(csp.vars.size());
                        csp.vars.push_back(x);
                    }
            dead = false;
            for (std::size_t xi = 0; xi < csp.vars.size(); ++xi) {
                auto x = csp.vars[xi];
                auto i = std::size_t(hpart[x]);
                std::vector<Vertex> dom;
                std::vector<std::vector<Colour>> cols;
                for (auto v : Vres[i]) {
                    std::vector<Colour> cs;
                    bool ok = true;
                    // the round image keeps its edges to fixed neighbours
                    const auto &g = phi.assignment[x] == v ? G : host;
                    for (auto y : H.neighbours(x)) {
                        if (in_res[y])
                            continue;
                        auto e = g.find_edge(phi.assignment[y], v);
                        if (!e) {
                            ok = false;
                            break;
                        }
                        for (auto c : g.colours(*e))
                            cs.push_back(c);
                    }
                    std::sort(cs.begin(), cs.end());
                    if (!ok || std::adjacent_find(cs.begin(), cs.end()) != cs.end())
                        continue;
                    if (relaxed && std::any_of(cs.begin(), cs.end(), [&](Colour c) { return csp.blocked[c] != 0; }))
                        continue;
                    dom.push_back(v);
                    cols.push_back(std::move(cs));
                }
                dead = dead || dom.empty();
                csp.domain.push_back(std::move(dom));
                csp.unary_colours.push_back(std::move(cols));
            }
            csp.img.assign(csp.vars.size(), kUnmapped);
            return csp;
        };
        bool dead = false;
        Csp csp = build(GB, false, dead);

        // regularity, boundedness and size checks on this reservoir
        CompletionChecks ch;
        ch.bound = std::pow(cfg.mu, 1.5) * n;
        for (std::size_t i = 0; i < r; ++i)
            ch.sizes = ch.sizes && Xres[i].size() == Vres[i].size() &&
                       Xres[i].size() == std::min(nB, inst.X[i].size());
        auto gb_counts = pair_edge_counts(GB, inst.V);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                double d = double(gb_counts[i][j]) / (double(inst.V[i].size()) * double(inst.V[j].size()));
                ch.gb_regular = ch.gb_regular && regular_pair(GB, Vres[i], Vres[j], eps_last, d, cfg.sample_count,
                                                              derive_seed(seed, kCompletionCheckStream, i * r + j));
            }
        for (std::size_t i = 0; i < r && ch.b_regular; ++i) {
            // B_i' as a standalone bipartite graph
            std::vector<int> pos(G.vertex_count(), -1);
            for (std::size_t q = 0; q < Vres[i].size(); ++q)
                pos[Vres[i][q]] = int(Xres[i].size() + q);
            GraphBuilder bb(Xres[i].size() + Vres[i].size());
            std::size_t arcs = 0;
            for (std::size_t l = 0; l < Xres[i].size(); ++l) {
                int xi = csp.var_of[Xres[i][l]];
                if (xi < 0) {
                    for (std::size_t q = 0; q < Vres[i].size(); ++q, ++arcs)
                        bb.add_edge(Vertex(l), Vertex(Xres[i].size() + q));
                    continue;
                }
                for (auto v : csp.domain[std::size_t(xi)]) {
                    bb.add_edge(Vertex(l), Vertex(pos[v]));
                    ++arcs;
                }
            }
            auto bg = bb.build();
            VertexSet Ls(Xres[i].size()), Rs(Vres[i].size());
            std::iota(Ls.begin(), Ls.end(), 0u);
            std::iota(Rs.begin(), Rs.end(), Vertex(Xres[i].size()));
            double d = Ls.empty() ? 0 : double(arcs) / (double(Ls.size()) * double(Rs.size()));
            ch.b_regular = regular_pair(bg, Ls, Rs, eps_last, d, cfg.sample_count,
                                        derive_seed(seed, kCompletionCheckStream + 1, i));
        }
        {
            std::vector<char> in_vres(G.vertex_count(), 0);
            for (auto &Vi : Vres)
                for (auto v : Vi)
                    in_vres[v] = 1;
            std::unordered_map<Colour, std::size_t> res_load, hit_load;
            std::vector<Edge> hits;
            std::vector<Vertex> preimage(G.vertex_count(), kUnmapped);
            for (Vertex x = 0; x < H.vertex_count(); ++x)
                if (phi.assignment[x] != kUnmapped)
                    preimage[phi.assignment[x]] = x;
            for (EdgeId e = 0; e < GB.edge_count(); ++e) {
                auto [u, v] = GB.edge(e);
                auto c = GB.colours(e)[0];
                if (in_vres[u] && in_vres[v]) {
                    ch.max_reservoir_colour = std::max(ch.max_reservoir_colour, ++res_load[c]);
                    continue;
                }
                for (int side = 0; side < 2; ++side) {
                    Vertex a = side ? v : u, b = side ? u : v; // a fixed, b in a reservoir
                    if (in_vres[a] || !in_vres[b] || preimage[a] == kUnmapped || gpart[b] < 0)
                        continue;
                    bool hit = false;
                    for (auto y : H.neighbours(preimage[a]))
                        hit = hit || (in_res[y] && hpart[y] == gpart[b]);
                    if (hit) {
                        hits.push_back(make_edge(a, b));
                        ch.max_hit_colour = std::max(ch.max_hit_colour, ++hit_load[c]);
                    }
                }
            }
            ch.reservoir_bounded = double(ch.max_reservoir_colour) <= ch.bound + 1e-9;
            ch.hit_bounded = double(ch.max_hit_colour) <= ch.bound + 1e-9;
            state.hit_edges = std::move(hits);
        }
        rep.checks = ch;
        state.checks = ch;
        rep.n_B = nB;
        const bool checks_ok =
            ch.gb_regular && ch.b_regular && ch.reservoir_bounded && ch.hit_bounded && ch.sizes;
        if (cfg.strict_completion_checks && !checks_ok)
            continue;
        Rng vrng(derive_seed(seed, kValueStream, s));
        bool relaxed = false;
        bool ok = !dead && csp.solve(vrng);
        rep.nodes += csp.nodes;
        if (!ok && cfg.relaxed_completion) {
            bool rdead = false;
            csp = build(G, true, rdead);
            ok = !rdead && csp.solve(vrng);
            rep.nodes += csp.nodes;
            relaxed = ok;
        }
        if (!ok)
            continue;

        // assemble: fixed vertices keep phi, variables take the CSP image,
        // isolated reservoir vertices take whatever images remain
        Embedding psi = phi.assignment;
        for (std::size_t i = 0; i < r; ++i)
            for (auto x : Xres[i])
                psi[x] = kUnmapped;
        std::vector<char> taken(G.vertex_count(), 0);
        for (std::size_t xi = 0; xi < csp.vars.size(); ++xi) {
            psi[csp.vars[xi]] = csp.img[xi];
            taken[csp.img[xi]] = 1;
        }
        for (auto x : isolated) {
            auto i = std::size_t(hpart[x]);
            Vertex pick = kUnmapped;
            if (phi.assignment[x] != kUnmapped && !taken[phi.assignment[x]])
                pick = phi.assignment[x];
            for (auto v : Vres[i])
                if (pick == kUnmapped && !taken[v])
                    pick = v;
            psi[x] = pick;
            taken[pick] = 1;
        }
        // layer discipline: every H-edge is a kept round image or a G_B
        // edge; relaxed solutions may also use unused G_A colours
        rep.reused_edges = 0;
        rep.relaxed = relaxed;
        for (auto &e : H.edges()) {
            auto a = psi[e.u], b = psi[e.v];
            if (a == phi.assignment[e.u] && b == phi.assignment[e.v] && a != kUnmapped && b != kUnmapped) {
                ++rep.reused_edges;
                if (!state.GA->has_edge(a, b))
                    fail(ErrorKind::Internal, "kept round image is not a G_A edge", "completion");
                continue;
            }
            if (!(relaxed ? G.has_edge(a, b) : GB.has_edge(a, b)))
                fail(ErrorKind::Internal, "completion edge outside the allowed layer", "completion");
        }
        phi.assignment = std::move(psi);
        phi.used_colours.clear();
        for (auto &e : H.edges()) {
            auto ge = G.find_edge(phi.assignment[e.u], phi.assignment[e.v]);
            for (auto c : G.colours(*ge))
                phi.used_colours.push_back(c);
        }
        std::sort(phi.used_colours.begin(), phi.used_colours.end());
        state.X_res = std::move(Xres);
        state.V_res = std::move(Vres);
        state.n_B = nB;
        rep.success = true;
        return rep;
    }
    return rep;
}

} // namespace rainbow
