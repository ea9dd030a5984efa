// Shared fixtures for the unit tests and the acceptance runner.

#pragma once

#include "rainbow/generators.hpp"
#include "rainbow/hypermatch.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace rainbow::testing {

inline VertexSet range(Vertex from, Vertex count)
{
    VertexSet s(count);
    std::iota(s.begin(), s.end(), from);
    return s;
}

// k-uniform hypergraph from a shuffled list of `degree` copies of every
// vertex; triples repeating a vertex or pushing a pair past the codegree cap
// are dropped, so degrees end up a little below `degree`.
inline ConflictHypergraph near_regular_hypergraph(std::uint32_t n, std::uint32_t degree, std::uint32_t k,
                                                  std::uint32_t codegree_cap, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::uint32_t> slots;
    for (std::uint32_t v = 0; v < n; ++v)
        slots.insert(slots.end(), degree, v);
    rng.shuffle(slots);
    std::map<std::uint64_t, std::uint32_t> pair;
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::size_t i = 0; i + k <= slots.size(); i += k) {
        std::vector<std::uint32_t> e(slots.begin() + std::ptrdiff_t(i), slots.begin() + std::ptrdiff_t(i + k));
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            continue;
        bool ok = true;
        for (std::size_t a = 0; a < k && ok; ++a)
            for (std::size_t b = a + 1; b < k && ok; ++b)
                ok = pair[(std::uint64_t(e[a]) << 32) | e[b]] < codegree_cap;
        if (!ok)
            continue;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                ++pair[(std::uint64_t(e[a]) << 32) | e[b]];
        edges.push_back(std::move(e));
    }
    return ConflictHypergraph::plain(n, k, edges);
}

inline ConflictHypergraph fano_plane()
{
    return ConflictHypergraph::plain(
        7, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

// weights uniform in [0, cap]
inline WeightFunction random_weight(const ConflictHypergraph &h, std::uint32_t cap, std::uint64_t seed,
                                    std::string name)
{
    Rng rng(seed);
    WeightFunction w{std::move(name), std::vector<std::uint32_t>(h.edge_count()), cap};
    for (auto &x : w.weights)
        x = std::uint32_t(rng.below(cap + 1));
    return w;
}

// Two clusters of `size` vertices. H is a random bipartite graph of max degree
// `max_degree` between X_0 and X_1 with `h_edges` edges; G is a random
// bipartite graph with edge probability p and `colours` colours.
inline BlowUpInstance toy_instance(std::uint32_t size, std::size_t h_edges, std::size_t max_degree, double p,
                                   std::size_t colours, std::uint64_t seed)
{
    Rng rng(seed);
    BlowUpInstance inst;
    GraphBuilder hb(2 * size);
    std::vector<std::size_t> deg(2 * size, 0);
    for (std::size_t guard = 0; hb.edge_count() < h_edges && guard < 100 * h_edges + 100; ++guard) {
        auto u = Vertex(rng.below(size)), v = Vertex(size + rng.below(size));
        if (deg[u] < max_degree && deg[v] < max_degree && !hb.has_edge(u, v)) {
            hb.add_edge(u, v);
            ++deg[u];
            ++deg[v];
        }
    }
    inst.H = hb.build();
    GraphBuilder gb(2 * size);
    for (std::size_t c = 0; c < colours; ++c)
        gb.labels().intern(std::to_string(c));
    for (Vertex u = 0; u < size; ++u)
        for (Vertex v = size; v < 2 * size; ++v)
            if (rng.bernoulli(p))
                gb.add_edge(u, v, Colour(rng.below(colours)));
    inst.G = gb.build();
    inst.X = inst.V = {range(0, size), range(size, size)};
    inst.params.eps = 0.2;
    inst.params.d = p;
    inst.params.Delta = max_degree;
    inst.params.gamma = 0.1;
    return inst;
}

// Two clusters of n vertices. G keeps each cross pair (i, j) with probability
// p and colours it by the cyclic distance of i and j together with the block
// i / block, so colours are locally 2-bounded and hold at most 2 block edges.
// H is the union of `matchings` random perfect matchings between X_0 and X_1.
inline BlowUpInstance distance_pair_instance(std::uint32_t n, double p, std::uint32_t block, std::size_t matchings,
                                             std::uint64_t seed)
{
    Rng rng(seed);
    BlowUpInstance inst;
    GraphBuilder gb(2 * n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) {
            if (!rng.bernoulli(p))
                continue;
            auto dist = std::min((i + n - j) % n, (j + n - i) % n);
            gb.add_edge(i, n + j, gb.labels().intern(std::to_string(dist) + "/" + std::to_string(i / block)));
        }
    inst.G = gb.build();
    GraphBuilder hb(2 * n);
    for (std::size_t m = 0; m < matchings; ++m) {
        std::vector<Vertex> perm = range(0, n);
        for (int guard = 0; guard < 1000; ++guard) {
            rng.shuffle(perm);
            bool fresh = true;
            for (Vertex i = 0; i < n && fresh; ++i)
                fresh = !hb.has_edge(i, n + perm[i]);
            if (fresh)
                break;
        }
        for (Vertex i = 0; i < n; ++i)
            if (!hb.has_edge(i, n + perm[i]))
                hb.add_edge(i, n + perm[i]);
    }
    inst.H = hb.build();
    inst.X = inst.V = {range(0, n), range(n, n)};
    inst.params.eps = 0.2;
    inst.params.d = p;
    inst.params.Delta = matchings;
    inst.params.gamma = 0.1;
    return inst;
}

// r clusters of `size` vertices; H has `edges` random edges between distinct
// clusters with maximum degree <= max_degree; G is the complete r-partite
// graph coloured by cyclic distance
// With matching_pairs every H-vertex has at most one neighbour per cluster.
inline BlowUpInstance multipartite_instance(std::uint32_t r, std::uint32_t size, std::size_t edges,
                                           std::size_t max_degree, std::uint64_t seed, bool matching_pairs = false)
{
    Rng rng(seed);
    const std::uint32_t N = r * size;
    BlowUpInstance inst;
    GraphBuilder hb(N);
    std::vector<std::size_t> deg(N, 0);
    std::set<std::pair<Vertex, std::uint32_t>> seen; // (vertex, cluster it has a neighbour in)
    for (std::size_t guard = 0; hb.edge_count() < edges && guard < 1000 * edges; ++guard) {
        auto u = Vertex(rng.below(N)), v = Vertex(rng.below(N));
        if (u / size == v / size || deg[u] >= max_degree || deg[v] >= max_degree || hb.has_edge(u, v))
            continue;
        if (matching_pairs && (seen.count({u, v / size}) || seen.count({v, u / size})))
            continue;
        seen.insert({u, v / size});
        seen.insert({v, u / size});
        hb.add_edge(u, v);
        ++deg[u];
        ++deg[v];
    }
    inst.H = hb.build();
    GraphBuilder gb(N);
    for (Vertex u = 0; u < N; ++u)
        for (Vertex v = u + 1; v < N; ++v)
            if (u / size != v / size)
                gb.add_edge(u, v, gb.labels().intern(std::to_string(std::min(v - u, N - (v - u)))));
    inst.G = gb.build();
    for (std::uint32_t i = 0; i < r; ++i)
        inst.X.push_back(range(i * size, size));
    inst.V = inst.X;
    inst.params.eps = 0.2;
    inst.params.d = 1.0;
    inst.params.Delta = max_degree;
    inst.params.gamma = 0.3;
    return inst;
}

// Distance coloured K_N split into r random clusters with the intra cluster
// edges removed; H is empty apart from the padding matchings of size
// ceil(gamma^2 n) that pad_h_matchings adds (call it before the transform).
inline BlowUpInstance distance_split_instance(std::uint32_t N, std::uint32_t r, double gamma, std::uint64_t seed)
{
    Rng rng(seed);
    auto perm = range(0, N);
    rng.shuffle(perm);
    BlowUpInstance inst;
    inst.V.resize(r);
    for (std::uint32_t i = 0; i < N; ++i)
        inst.V[i % r].push_back(perm[i]);
    for (auto &v : inst.V)
        std::sort(v.begin(), v.end());
    auto full = gen::distance_clique(N);
    auto part = part_index(N, inst.V);
    inst.G = filter_edges(full, [&](EdgeId e) { return part[full.edge(e).u] != part[full.edge(e).v]; });
    inst.X = inst.V;
    inst.H = GraphBuilder(N).build();
    inst.params.gamma = gamma;
    inst.params.d = 1.0;
    inst.params.Delta = 1;
    inst.params.eps = 0.2;
    return inst;
}

} // namespace rainbow::testing
