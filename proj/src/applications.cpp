// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/applications.hpp"

#include "rainbow/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace rainbow {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

Permutation compose(const Permutation &g, const Permutation &h) // g after h
{
    Permutation out(h.size());
    for (std::size_t v = 0; v < h.size(); ++v)
        out[v] = g[h[v]];
    return out;
}

// applications check their own theorem-level hypothesis; the generic gates
// of the drivers are then skipped
PipelineConfig inner_config(const PipelineConfig &cfg)
{
    PipelineConfig c = cfg;
    c.force = true;
    return c;
}

EmbedOutcome run_quasirandom(const ColouredGraph &G, const ColouredGraph &H, const PipelineConfig &cfg)
{
    return embed_quasirandom(G, H, inner_config(cfg));
}

void gate(bool ok, const std::string &msg)
{
    if (!ok)
        fail(ErrorKind::Gate, msg, "gate");
}

EdgeList mapped_edges(const ColouredGraph &H, const Embedding &phi) { return image_edges(H, phi); }

PackingResult finish_packing(const ColouredGraph &H, ColouredGraph host, GroupAction group, Embedding base,
                             Transcript transcript)
{
    PackingResult res;
    auto rb = check_rainbow(host, base, H);
    if (!rb.ok)
        fail(ErrorKind::Internal, "base copy is not rainbow under the orbit colouring", "packing");
    std::vector<EdgeList> lists;
    for (auto &g : group.elements) {
        Embedding phi(base.size());
        for (std::size_t x = 0; x < base.size(); ++x)
            phi[x] = g[base[x]];
        lists.push_back(mapped_edges(H, phi));
        res.copies.push_back(std::move(phi));
    }
    res.verdict = check_packing(lists, host);
    if (!res.verdict.verdict.ok)
        fail(ErrorKind::Internal, "rotated copies of a rainbow copy overlap", "packing");
    const bool counts = group.elements.size() * H.edge_count() == host.edge_count();
    res.decomposition = counts && res.verdict.decomposition;
    if (counts != res.verdict.decomposition)
        fail(ErrorKind::Internal, "decomposition flag disagrees with the edge count", "packing");
    res.host = std::move(host);
    res.group = std::move(group);
    res.base_copy = std::move(base);
    res.transcript = std::move(transcript);
    return res;
}

} // namespace

bool within_edge_budget(std::size_t edges, double bound, double slack)
{
    return double(edges) <= (1.0 - slack) * bound + 1e-9;
}

ColouredGraph distance_colouring(std::size_t n) { return gen::distance_clique(n); }

std::pair<ColouredGraph, GroupAction> orbit_colouring(const ColouredGraph &g, const std::vector<Permutation> &generators,
                                                      const OrbitOptions &opts)
{
    const auto n = g.vertex_count();
    GroupAction act;
    for (std::size_t k = 0; k < generators.size(); ++k) {
        auto &p = generators[k];
        if (p.size() != n)
            fail(ErrorKind::InvalidInput, "generator " + std::to_string(k) + " has " + std::to_string(p.size()) +
                                              " entries for " + std::to_string(n) + " vertices");
        std::vector<char> hit(n, 0);
        for (auto v : p) {
            if (v >= n || hit[v])
                fail(ErrorKind::InvalidInput, "generator " + std::to_string(k) + " is not a permutation");
            hit[v] = 1;
        }
        for (auto &e : g.edges())
            if (!g.has_edge(p[e.u], p[e.v]))
                fail(ErrorKind::InvalidInput, "generator " + std::to_string(k) + " maps edge " +
                                                  std::to_string(e.u) + "-" + std::to_string(e.v) + " to a non-edge");
        act.generator_perms.push_back(p);
    }

    Permutation id(n);
    std::iota(id.begin(), id.end(), Vertex(0));
    std::set<Permutation> seen{id};
    act.elements.push_back(id);
    for (std::size_t q = 0; q < act.elements.size(); ++q)
        for (auto &gen : act.generator_perms) {
            auto next = compose(gen, act.elements[q]);
            if (seen.insert(next).second) {
                if (seen.size() > opts.cap)
                    fail(ErrorKind::CapExceeded, "group has more than " + std::to_string(opts.cap) + " elements");
                act.elements.push_back(std::move(next));
            }
        }

    UnionFind uf(g.edge_count());
    for (auto &gen : act.generator_perms)
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            uf.unite(e, *g.find_edge(gen[g.edge(e).u], gen[g.edge(e).v]));
    std::map<std::uint32_t, std::uint32_t> id_of;
    std::vector<std::size_t> sizes;
    act.orbit_of_edge.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto root = uf.find(e);
        auto [it, fresh] = id_of.emplace(root, std::uint32_t(id_of.size()));
        if (fresh)
            sizes.push_back(0);
        act.orbit_of_edge[e] = it->second;
        ++sizes[it->second];
    }
    act.orbit_count = sizes.size();
    act.full_orbits = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == act.elements.size(); });
    if (opts.require_full_orbits && !act.full_orbits) {
        std::size_t bad = 0;
        while (sizes[bad] == act.elements.size())
            ++bad;
        fail(ErrorKind::Precondition, "orbit " + std::to_string(bad) + " has " + std::to_string(sizes[bad]) +
                                          " edges but the group has " + std::to_string(act.elements.size()) +
                                          " elements");
    }
    GraphBuilder b(n);
    for (std::size_t k = 0; k < act.orbit_count; ++k)
        b.labels().intern(std::to_string(k));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        b.add_edge(g.edge(e).u, g.edge(e).v, Colour(act.orbit_of_edge[e]));
    return {b.build(), std::move(act)};
}

PackingResult cyclic_packing(const ColouredGraph &H, std::size_t n, const PipelineConfig &cfg)
{
    if (n < 3)
        fail(ErrorKind::Precondition, "cyclic packing needs n >= 3");
    if (H.vertex_count() > n)
        fail(ErrorKind::Precondition, "H has more vertices than K_n");
    gate(within_edge_budget(H.edge_count(), double(n) / 2, cfg.slack),
         "e(H)=" + std::to_string(H.edge_count()) + " exceeds (1-slack) n/2");
    GraphBuilder b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (n % 2 || j - i != n / 2)
                b.add_edge(Vertex(i), Vertex(j));
    Permutation rot(n);
    for (std::size_t i = 0; i < n; ++i)
        rot[i] = Vertex((i + 1) % n);
    auto [host, act] = orbit_colouring(b.build(), {rot}, {1'000'000, true});
    auto out = run_quasirandom(host, H, cfg);
    return finish_packing(H, std::move(host), std::move(act), std::move(out.embedding), std::move(out.transcript));
}

PackingResult bipartite_packing(const ColouredGraph &H, const std::vector<int> &side, std::size_t n,
                                const PipelineConfig &cfg)
{
    if (n < 1)
        fail(ErrorKind::Precondition, "bipartite packing needs n >= 1");
    if (side.size() != H.vertex_count())
        fail(ErrorKind::Precondition, "side vector does not match H");
    std::vector<VertexSet> parts(2);
    for (Vertex x = 0; x < H.vertex_count(); ++x) {
        if (side[x] != 0 && side[x] != 1)
            fail(ErrorKind::Precondition, "side entries must be 0 or 1");
        parts[side[x]].push_back(x);
    }
    for (auto &e : H.edges())
        if (side[e.u] == side[e.v])
            fail(ErrorKind::Precondition, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                              " lies inside one side");
    if (parts[0].size() > n || parts[1].size() > n)
        fail(ErrorKind::Precondition, "a side of H has more than n vertices");
    gate(within_edge_budget(H.edge_count(), double(n), cfg.slack),
         "e(H)=" + std::to_string(H.edge_count()) + " exceeds (1-slack) n");

    GraphBuilder kb(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            kb.add_edge(Vertex(i), Vertex(n + j));
    Permutation rot(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        rot[i] = Vertex((i + 1) % n);
        rot[n + i] = Vertex(n + (i + 1) % n);
    }
    auto [host, act] = orbit_colouring(kb.build(), {rot}, {1'000'000, true});
    if (colouring_stats(host).local_max != 1)
        fail(ErrorKind::Internal, "orbit colouring of K_{n,n} is not proper", "packing");

    // two cluster instance; H padded with isolated vertices to n + n
    std::vector<Vertex> to_pad(H.vertex_count());
    BlowUpInstance inst;
    inst.X.assign(2, {});
    GraphBuilder hb(2 * n);
    for (int s = 0; s < 2; ++s)
        for (std::size_t q = 0; q < n; ++q) {
            auto v = Vertex(s * n + q);
            inst.X[s].push_back(v);
            if (q < parts[s].size())
                to_pad[parts[s][q]] = v;
        }
    for (auto &e : H.edges())
        hb.add_edge(to_pad[e.u], to_pad[e.v]);
    inst.H = hb.build();
    inst.G = host;
    inst.V.assign(2, {});
    for (std::size_t q = 0; q < n; ++q) {
        inst.V[0].push_back(Vertex(q));
        inst.V[1].push_back(Vertex(n + q));
    }
    inst.params.eps = cfg.gate_eps >= 0 ? cfg.gate_eps : 0.1;
    inst.params.d = 1.0;
    inst.params.Delta = std::max<std::size_t>(1, H.max_degree());
    inst.params.Lambda = 1;
    inst.params.gamma = cfg.slack;
    auto out = embed_rainbow(inst, cfg);
    Embedding base(H.vertex_count());
    for (Vertex x = 0; x < H.vertex_count(); ++x)
        base[x] = out.embedding[to_pad[x]];
    return finish_packing(H, std::move(host), std::move(act), std::move(base), std::move(out.transcript));
}

OdcResult odc_cover(const ColouredGraph &H, std::size_t k, const PipelineConfig &cfg)
{
    if (k < 1 || k > 16)
        fail(ErrorKind::Precondition, "odc needs 1 <= k <= 16 (n = 2^k)");
    const std::size_t n = std::size_t(1) << k;
    if (H.vertex_count() > n)
        fail(ErrorKind::Precondition, "H has more vertices than K_n");
    gate(within_edge_budget(H.edge_count(), double(n), cfg.slack),
         "e(H)=" + std::to_string(H.edge_count()) + " exceeds (1-slack) n");
    OdcResult res;
    res.host = gen::xor_clique(k);
    auto out = run_quasirandom(res.host, H, cfg);
    res.base_copy = out.embedding;
    res.transcript = std::move(out.transcript);

    std::vector<EdgeList> lists;
    for (std::size_t z = 0; z < n; ++z) {
        Embedding phi(res.base_copy.size());
        for (std::size_t x = 0; x < phi.size(); ++x)
            phi[x] = Vertex(res.base_copy[x] ^ z);
        if (!check_rainbow(res.host, phi, H).ok)
            fail(ErrorKind::Internal, "translate " + std::to_string(z) + " is not rainbow", "odc");
        lists.push_back(mapped_edges(H, phi));
        res.copies.push_back(std::move(phi));
    }
    res.verdict = check_odc(lists, res.host);
    if (!res.verdict.ok)
        fail(ErrorKind::Internal, "translates of a rainbow copy violate the double cover bounds", "odc");

    std::map<std::uint64_t, std::size_t> mult;
    std::vector<std::vector<std::uint64_t>> keys;
    for (auto &l : lists) {
        std::vector<std::uint64_t> ks;
        for (auto &e : l) {
            ks.push_back(edge_key(e.u, e.v));
            ++mult[ks.back()];
        }
        std::sort(ks.begin(), ks.end());
        keys.push_back(std::move(ks));
    }
    for (auto &e : res.host.edges()) {
        auto it = mult.find(edge_key(e.u, e.v));
        auto m = it == mult.end() ? 0 : it->second;
        res.uncovered_edges += m == 0;
        res.single_edges += m == 1;
        res.double_edges += m == 2;
    }
    for (std::size_t a = 0; a < keys.size(); ++a)
        for (std::size_t b = a + 1; b < keys.size(); ++b) {
            std::vector<std::uint64_t> common;
            std::set_intersection(keys[a].begin(), keys[a].end(), keys[b].begin(), keys[b].end(),
                                  std::back_inserter(common));
            res.disjoint_pairs += common.empty();
        }
    return res;
}

LabellingResult harmonious_labelling(const ColouredGraph &H, const AbelianGroup &group, const PipelineConfig &cfg)
{
    const std::size_t n = group.order();
    if (H.vertex_count() > n)
        fail(ErrorKind::Precondition, "H has more vertices than the group has elements");
    gate(H.edge_count() <= n, "e(H)=" + std::to_string(H.edge_count()) + " exceeds the " + std::to_string(n) +
                                  " possible edge sums");
    gate(within_edge_budget(H.edge_count(), double(n), cfg.slack),
         "e(H)=" + std::to_string(H.edge_count()) + " exceeds (1-slack) n");
    GraphBuilder b(n);
    for (std::uint32_t s = 0; s < n; ++s)
        b.labels().intern(std::to_string(s));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            b.add_edge(i, j, Colour(group.op(i, j)));
    auto host = b.build();
    auto out = run_quasirandom(host, H, cfg);
    LabellingResult res;
    res.labels.assign(out.embedding.begin(), out.embedding.end());
    res.verdict = check_harmonious(H, res.labels, group);
    if (!res.verdict.ok)
        fail(ErrorKind::Internal, "rainbow copy in K_Gamma gave a non-harmonious labelling", "label");
    res.transcript = std::move(out.transcript);
    return res;
}

} // namespace rainbow
