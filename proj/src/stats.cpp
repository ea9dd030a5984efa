// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/instance.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace rainbow {

double BlowUpInstance::cluster_size() const
{
    if (V.empty())
        return 0;
    std::size_t total = 0;
    for (auto &v : V)
        total += v.size();
    return double(total) / double(V.size());
}

void validate_instance(const BlowUpInstance &inst)
{
    if (inst.X.size() != inst.V.size())
        fail(ErrorKind::Precondition, "instance has " + std::to_string(inst.X.size()) + " H-clusters but " +
                                          std::to_string(inst.V.size()) + " G-clusters");
    part_index(inst.H.vertex_count(), inst.X);
    part_index(inst.G.vertex_count(), inst.V);
    for (std::size_t i = 0; i < inst.X.size(); ++i) {
        if (inst.X[i].size() != inst.V[i].size())
            fail(ErrorKind::Precondition, "cluster " + std::to_string(i) + " sizes differ: |X|=" +
                                              std::to_string(inst.X[i].size()) +
                                              " |V|=" + std::to_string(inst.V[i].size()));
        if (!is_independent(inst.H, inst.X[i]))
            fail(ErrorKind::Precondition, "cluster " + std::to_string(i) + " is not independent in H");
    }
}

ColouringStats colouring_stats(const ColouredGraph &g)
{
    ColouringStats s;
    for (Colour a = 0; a < g.colour_count(); ++a)
        s.global_max = std::max(s.global_max, g.colour_size(a));

    // local: per vertex count colours among incident edges
    std::unordered_map<Colour, std::size_t> count;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        count.clear();
        for (auto e : g.incident(v))
            for (auto a : g.colours(e))
                s.local_max = std::max(s.local_max, ++count[a]);
    }

    std::unordered_map<std::uint64_t, std::size_t> pairs;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto cs = g.colours(e);
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                s.codegree = std::max(s.codegree, ++pairs[(std::uint64_t(cs[i]) << 32) | cs[j]]);
    }
    return s;
}

namespace {

// slot of an edge: index of the unordered part pair (or the part itself)
std::vector<long> edge_slots(const ColouredGraph &g, const std::vector<int> &idx, std::size_t k)
{
    std::vector<long> slot(g.edge_count(), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        int a = idx[g.edge(e).u], b = idx[g.edge(e).v];
        if (a < 0 || b < 0)
            continue;
        if (a > b)
            std::swap(a, b);
        slot[e] = long(a) * long(k) + long(b);
    }
    return slot;
}

std::size_t count_split_violations(const ColouredGraph &g, const std::vector<VertexSet> &parts)
{
    auto idx = part_index(g.vertex_count(), parts);
    auto slot = edge_slots(g, idx, parts.size());
    std::size_t bad = 0;
    for (Colour a = 0; a < g.colour_count(); ++a) {
        long first = -2;
        for (auto e : g.colour_class(a)) {
            if (first == -2)
                first = slot[e];
            else if (slot[e] != first) {
                ++bad;
                break;
            }
        }
    }
    return bad;
}

} // namespace

ColouringStats colouring_stats(const ColouredGraph &g, const std::vector<VertexSet> &parts)
{
    auto s = colouring_stats(g);
    s.split_violations = count_split_violations(g, parts);
    return s;
}

bool is_colour_split(const ColouredGraph &g, const std::vector<VertexSet> &parts)
{
    auto idx = part_index(g.vertex_count(), parts);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (idx[v] < 0)
            fail(ErrorKind::Precondition, "parts do not cover vertex " + std::to_string(v));
    return count_split_violations(g, parts) == 0;
}

std::size_t BoundednessReport::failures() const
{
    return std::size_t(std::count_if(colours.begin(), colours.end(), [](auto &c) { return !c.passed; }));
}

std::vector<std::vector<std::size_t>> pair_edge_counts(const ColouredGraph &g, const std::vector<VertexSet> &parts)
{
    auto idx = part_index(g.vertex_count(), parts);
    std::vector<std::vector<std::size_t>> t(parts.size(), std::vector<std::size_t>(parts.size(), 0));
    for (auto &e : g.edges()) {
        int a = idx[e.u], b = idx[e.v];
        if (a < 0 || b < 0)
            continue;
        ++t[a][b];
        if (a != b)
            ++t[b][a];
    }
    return t;
}

BoundednessReport boundedness_condition(const BlowUpInstance &inst, double n)
{
    BoundednessReport rep;
    rep.limit = (1.0 - inst.params.gamma) * inst.params.d * n * n;
    auto eh = pair_edge_counts(inst.H, inst.X);
    auto idx = part_index(inst.G.vertex_count(), inst.V);
    for (Colour a = 0; a < inst.G.colour_count(); ++a) {
        auto cls = inst.G.colour_class(a);
        if (cls.empty())
            continue;
        double value = 0;
        for (auto e : cls) {
            int i = idx[inst.G.edge(e).u], j = idx[inst.G.edge(e).v];
            if (i < 0 || j < 0 || i == j)
                continue;
            value += double(eh[i][j]);
        }
        ColourBound b{a, value, value <= rep.limit + 1e-9};
        rep.passed = rep.passed && b.passed;
        rep.colours.push_back(b);
    }
    return rep;
}

} // namespace rainbow
