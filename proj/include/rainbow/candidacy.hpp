// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/common.hpp"

#include <limits>
#include <vector>

namespace rainbow {

struct CandidacyArc {
    std::uint32_t right = 0; // index into CandidacyGraph::right
    ColourSet colours;
};

// Bipartite X_i x V_i graph of admissible images with accumulated colour
// sets. Colours >= dummy_from are padding and never reach an output.
struct CandidacyGraph {
    VertexSet left;  // H-vertices
    VertexSet right; // G-vertices
    std::vector<std::vector<CandidacyArc>> adj; // per left index, sorted by right index
    Colour dummy_from = std::numeric_limits<Colour>::max();

    std::size_t edge_count() const;
    const CandidacyArc *find(std::uint32_t l, std::uint32_t r) const;
    std::size_t max_colour_set() const;
    std::size_t left_degree(std::uint32_t l) const { return adj[l].size(); }
    std::vector<std::size_t> right_degrees() const;
};

// Complete candidacy graph left x right with empty colour sets.
CandidacyGraph complete_candidacy(const VertexSet &left, const VertexSet &right);

// Every colour set padded to exactly t colours with globally fresh dummies
// numbered from next_fresh upward; next_fresh is advanced. Throws
// Precondition if a set already exceeds t.
CandidacyGraph pad_colour_sets(const CandidacyGraph &a, std::size_t t, Colour &next_fresh);

// drops the dummy colours again
CandidacyGraph strip_dummies(const CandidacyGraph &a);

} // namespace rainbow
