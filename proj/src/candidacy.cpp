// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/candidacy.hpp"

#include <algorithm>

namespace rainbow {

std::size_t CandidacyGraph::edge_count() const
{
    std::size_t k = 0;
    for (auto &row : adj)
        k += row.size();
    return k;
}

const CandidacyArc *CandidacyGraph::find(std::uint32_t l, std::uint32_t r) const
{
    auto &row = adj[l];
    auto it = std::lower_bound(row.begin(), row.end(), r, [](const CandidacyArc &a, std::uint32_t x) {
        return a.right < x;
    });
    return it != row.end() && it->right == r ? &*it : nullptr;
}

std::size_t CandidacyGraph::max_colour_set() const
{
    std::size_t m = 0;
    for (auto &row : adj)
        for (auto &a : row)
            m = std::max(m, a.colours.size());
    return m;
}

std::vector<std::size_t> CandidacyGraph::right_degrees() const
{
    std::vector<std::size_t> d(right.size(), 0);
    for (auto &row : adj)
        for (auto &a : row)
            ++d[a.right];
    return d;
}

CandidacyGraph complete_candidacy(const VertexSet &left, const VertexSet &right)
{
    CandidacyGraph a;
    a.left = left;
    a.right = right;
    a.adj.resize(left.size());
    for (auto &row : a.adj)
        for (std::uint32_t r = 0; r < right.size(); ++r)
            row.push_back({r, {}});
    return a;
}

CandidacyGraph pad_colour_sets(const CandidacyGraph &a, std::size_t t, Colour &next_fresh)
{
    CandidacyGraph out = a;
    if (out.dummy_from == std::numeric_limits<Colour>::max())
        out.dummy_from = next_fresh;
    else if (next_fresh < out.dummy_from)
        fail(ErrorKind::Precondition, "fresh dummy colours would collide with earlier padding");
    for (auto &row : out.adj)
        for (auto &arc : row) {
            if (arc.colours.size() > t)
                fail(ErrorKind::Precondition, "colour set of size " + std::to_string(arc.colours.size()) +
                                                  " exceeds t=" + std::to_string(t));
            while (arc.colours.size() < t)
                arc.colours.push_back(next_fresh++);
            std::sort(arc.colours.begin(), arc.colours.end());
        }
    return out;
}

CandidacyGraph strip_dummies(const CandidacyGraph &a)
{
    CandidacyGraph out = a;
    for (auto &row : out.adj)
        for (auto &arc : row)
            std::erase_if(arc.colours, [&](Colour c) { return c >= a.dummy_from; });
    out.dummy_from = std::numeric_limits<Colour>::max();
    return out;
}

} // namespace rainbow
