// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/generators.hpp"

#include "rainbow/rng.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace rainbow::gen {

namespace {

// colour ids equal to the order of first interning
Colour colour(GraphBuilder &b, std::size_t c) { return b.labels().intern(std::to_string(c)); }

ColouredGraph rainbow_from(std::size_t n, const std::vector<Edge> &edges)
{
    GraphBuilder b(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
        b.add_edge(edges[i].u, edges[i].v, colour(b, i));
    return b.build();
}

} // namespace

ColouredGraph distance_clique(std::size_t n)
{
    if (n < 3)
        fail(ErrorKind::Precondition, "distance colouring needs n >= 3");
    GraphBuilder b(n);
    for (std::size_t c = 1; c <= n / 2; ++c)
        colour(b, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            b.add_edge(Vertex(i), Vertex(j), colour(b, std::min(j - i, n - (j - i))));
    return b.build();
}

ColouredGraph xor_clique(std::size_t k)
{
    if (k == 0 || k > 16)
        fail(ErrorKind::Precondition, "xor clique needs 1 <= k <= 16");
    const std::size_t n = std::size_t(1) << k;
    GraphBuilder b(n);
    for (std::size_t c = 1; c < n; ++c)
        colour(b, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            b.add_edge(Vertex(i), Vertex(j), colour(b, i ^ j));
    return b.build();
}

ColouredGraph random_coloured(std::size_t n, double p, std::size_t colours, std::uint64_t seed)
{
    if (colours == 0 || p < 0 || p > 1)
        fail(ErrorKind::Precondition, "random coloured graph needs p in [0,1] and at least one colour");
    Rng rng(seed);
    GraphBuilder b(n);
    for (std::size_t c = 0; c < colours; ++c)
        colour(b, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(p))
                b.add_edge(Vertex(i), Vertex(j), colour(b, rng.below(colours)));
    return b.build();
}

ColouredGraph two_cliques(std::size_t n)
{
    std::vector<Edge> edges;
    for (std::size_t side = 0; side < 2; ++side)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                edges.push_back({Vertex(side * n + i), Vertex(side * n + j)});
    return rainbow_from(2 * n, edges);
}

ColouredGraph random_bipartite(std::size_t a, std::size_t b, double p, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            if (rng.bernoulli(p))
                edges.push_back({Vertex(i), Vertex(a + j)});
    return rainbow_from(a + b, edges);
}

ColouredGraph complete_bipartite(std::size_t a, std::size_t b) { return random_bipartite(a, b, 1.0, 0); }

ColouredGraph path(std::size_t edges)
{
    GraphBuilder b(edges + 1);
    for (std::size_t i = 0; i < edges; ++i)
        b.add_edge(Vertex(i), Vertex(i + 1));
    return b.build();
}

ColouredGraph star(std::size_t leaves)
{
    GraphBuilder b(leaves + 1);
    for (std::size_t i = 1; i <= leaves; ++i)
        b.add_edge(0, Vertex(i));
    return b.build();
}

ColouredGraph grid(std::size_t rows, std::size_t cols)
{
    GraphBuilder b(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = Vertex(r * cols + c);
            if (c + 1 < cols)
                b.add_edge(v, v + 1);
            if (r + 1 < rows)
                b.add_edge(v, Vertex(v + cols));
        }
    return b.build();
}

ColouredGraph random_tree(std::size_t edges, std::size_t max_degree, std::uint64_t seed)
{
    if (max_degree < 2 && edges > 1)
        fail(ErrorKind::Precondition, "a tree with more than one edge needs max degree >= 2");
    Rng rng(seed);
    GraphBuilder b(edges + 1);
    std::vector<std::size_t> deg(edges + 1, 0);
    std::vector<Vertex> open{0}; // vertices with spare degree
    for (std::size_t v = 1; v <= edges; ++v) {
        auto k = rng.below(open.size());
        auto p = open[k];
        b.add_edge(p, Vertex(v));
        if (++deg[p] == max_degree) {
            open[k] = open.back();
            open.pop_back();
        }
        deg[v] = 1;
        if (max_degree > 1)
            open.push_back(Vertex(v));
    }
    return b.build();
}

ColouredGraph random_bounded_degree(std::size_t n, std::size_t edges, std::size_t max_degree, std::uint64_t seed)
{
    if (2 * edges > n * max_degree)
        fail(ErrorKind::Precondition, "too many edges for the degree bound");
    Rng rng(seed);
    GraphBuilder b(n);
    std::vector<std::size_t> deg(n, 0);
    std::size_t stall = 0;
    while (b.edge_count() < edges) {
        auto u = Vertex(rng.below(n)), v = Vertex(rng.below(n));
        if (u == v || deg[u] >= max_degree || deg[v] >= max_degree || b.has_edge(u, v)) {
            if (++stall > 1000 * (edges + n))
                fail(ErrorKind::RetriesExhausted, "could not place the requested edges under the degree bound");
            continue;
        }
        b.add_edge(u, v);
        ++deg[u];
        ++deg[v];
    }
    return b.build();
}

namespace {

using Adj = std::vector<std::vector<int>>;

std::string encode(const Adj &t, int v, int parent)
{
    std::vector<std::string> kids;
    for (int w : t[v])
        if (w != parent)
            kids.push_back(encode(t, w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto &k : kids)
        s += k;
    return s + ")";
}

// AHU string rooted at the centre (the smaller string for two centres)
std::string canonical(const Adj &t)
{
    const int n = int(t.size());
    std::vector<int> deg(n), layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = int(t[v].size());
        if (deg[v] <= 1)
            layer.push_back(v);
    }
    int left = n;
    while (left > 2) {
        left -= int(layer.size());
        std::vector<int> next;
        for (int v : layer)
            for (int w : t[v])
                if (--deg[w] == 1)
                    next.push_back(w);
        layer = next;
    }
    std::string best;
    for (int c : layer) {
        auto s = encode(t, c, -1);
        if (best.empty() || s < best)
            best = s;
    }
    return best;
}

} // namespace

std::vector<ColouredGraph> all_trees(std::size_t n)
{
    if (n == 0)
        return {};
    std::map<std::string, Adj> level{{"()", Adj(1)}};
    for (std::size_t k = 2; k <= n; ++k) {
        std::map<std::string, Adj> next;
        for (auto &[key, t] : level)
            for (std::size_t v = 0; v < t.size(); ++v) {
                Adj u = t;
                u.emplace_back();
                u[v].push_back(int(k - 1));
                u.back().push_back(int(v));
                next.emplace(canonical(u), std::move(u));
            }
        level = std::move(next);
    }
    std::vector<ColouredGraph> out;
    for (auto &[key, t] : level) {
        GraphBuilder b(n);
        for (std::size_t v = 0; v < n; ++v)
            for (int w : t[v])
                if (std::size_t(w) > v)
                    b.add_edge(Vertex(v), Vertex(w));
        out.push_back(b.build());
    }
    return out;
}

} // namespace rainbow::gen
