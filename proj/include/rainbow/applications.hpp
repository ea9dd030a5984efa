// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Packings, orthogonal double covers and harmonious labellings obtained from
// one rainbow copy and a group acting on the host.

#pragma once

#include "rainbow/group.hpp"
#include "rainbow/pipeline.hpp"
#include "rainbow/verify.hpp"

#include <cstdint>
#include <vector>

namespace rainbow {

using Permutation = std::vector<Vertex>;

struct GroupAction {
    std::vector<Permutation> generator_perms;
    std::vector<Permutation> elements;       // identity first
    std::vector<std::uint32_t> orbit_of_edge; // by edge id of the host
    std::size_t orbit_count = 0;
    bool full_orbits = false;                 // |orbit| == |group| for every edge
};

struct OrbitOptions {
    std::size_t cap = 1'000'000;   // largest group we enumerate
    bool require_full_orbits = false;
};

// K_n, {i,j} coloured by its cyclic distance
ColouredGraph distance_colouring(std::size_t n);

// recolours g by edge orbits; throws InvalidInput for a non-automorphism,
// CapExceeded past the cap, Precondition when full orbits are required and missing
std::pair<ColouredGraph, GroupAction> orbit_colouring(const ColouredGraph &g, const std::vector<Permutation> &generators,
                                                      const OrbitOptions &opts = {});

struct PackingResult {
    ColouredGraph host;             // orbit coloured
    GroupAction group;
    Embedding base_copy;
    std::vector<Embedding> copies;  // base copy composed with every group element
    PackingVerdict verdict;
    bool decomposition = false;
    Transcript transcript;
};

// ceil-free gate helper: e(H) <= (1 - slack) * bound
bool within_edge_budget(std::size_t edges, double bound, double slack);

// Z_n acting on K_n (minus the antipodal matching for even n)
PackingResult cyclic_packing(const ColouredGraph &H, std::size_t n, const PipelineConfig &cfg);
// Z_n acting on K_{n,n} by simultaneous rotation; side[x] in {0,1} places x
PackingResult bipartite_packing(const ColouredGraph &H, const std::vector<int> &side, std::size_t n,
                                const PipelineConfig &cfg);

struct OdcResult {
    ColouredGraph host; // K_{2^k}, coloured by xor
    Embedding base_copy;
    std::vector<Embedding> copies; // translates by every z in Z_2^k
    Verdict verdict;
    std::size_t uncovered_edges = 0;
    std::size_t single_edges = 0;  // edges in exactly one copy
    std::size_t double_edges = 0;  // edges in exactly two copies
    std::size_t disjoint_pairs = 0; // copy pairs sharing no edge
    Transcript transcript;
};

OdcResult odc_cover(const ColouredGraph &H, std::size_t k, const PipelineConfig &cfg);

struct LabellingResult {
    std::vector<std::uint32_t> labels; // f(x) for every H-vertex
    Verdict verdict;
    Transcript transcript;
};

// K_Gamma coloured by i + j; a rainbow copy gives an injective map with
// distinct edge sums
LabellingResult harmonious_labelling(const ColouredGraph &H, const AbelianGroup &group, const PipelineConfig &cfg);

} // namespace rainbow
