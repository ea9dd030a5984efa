// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Exact checkers. They take plain graphs and maps only and never look at
// pipeline state.

#pragma once

#include "rainbow/graph.hpp"
#include "rainbow/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

// phi[x] is the image of H-vertex x
using Embedding = std::vector<Vertex>;

struct Violation {
    std::string kind;
    std::string witness;

    friend bool operator==(const Violation &, const Violation &) = default;
};

struct Verdict {
    static constexpr std::size_t kMaxViolations = 100;

    bool ok = true;
    std::vector<Violation> violations; // first kMaxViolations in canonical order
    std::size_t total_violations = 0;

    void add(std::string kind, std::string witness);
    friend bool operator==(const Verdict &, const Verdict &) = default;
};

Verdict check_embedding(const ColouredGraph &H, const ColouredGraph &G, const Embedding &phi);
// colour sets on the image edges are pairwise disjoint; phi must be an embedding
Verdict check_rainbow(const ColouredGraph &G, const Embedding &phi, const ColouredGraph &H);

// one copy is a list of G-edges
using EdgeList = std::vector<Edge>;

struct PackingVerdict {
    Verdict verdict;
    std::size_t covered_edges = 0;
    // edge disjoint and every edge of G covered
    bool decomposition = false;
};

PackingVerdict check_packing(const std::vector<EdgeList> &copies, const ColouredGraph &G);
// every edge in at most two copies, any two copies share at most one edge
Verdict check_odc(const std::vector<EdgeList> &copies, const ColouredGraph &G);
// f injective into the group, edge sums f(x)+f(y) pairwise distinct
Verdict check_harmonious(const ColouredGraph &H, const std::vector<std::uint32_t> &f, const AbelianGroup &group);

// image of every H-edge under phi
EdgeList image_edges(const ColouredGraph &H, const Embedding &phi);

struct SearchLimits {
    std::uint64_t node_cap = 10'000'000;
};

struct SearchResult {
    std::optional<Embedding> embedding; // empty: search exhausted, none exists
    std::uint64_t nodes = 0;
};

// Backtracking over all injections x -> phi(x) with h_part[x] == g_part[phi(x)]
// (empty part vectors mean unconstrained). Throws CapExceeded past the cap.
SearchResult exhaustive_rainbow_search(const ColouredGraph &H, const ColouredGraph &G, const std::vector<int> &h_part,
                                       const std::vector<int> &g_part, const SearchLimits &limits = {});

} // namespace rainbow
