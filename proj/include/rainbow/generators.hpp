// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded host and target graph generators. Same seed, same graph.

#pragma once

#include "rainbow/graph.hpp"

#include <cstdint>
#include <vector>

namespace rainbow::gen {

// hosts
ColouredGraph distance_clique(std::size_t n);   // K_n, {i,j} coloured min(|i-j|, n-|i-j|)
ColouredGraph xor_clique(std::size_t k);         // K_{2^k}, {i,j} coloured i xor j
// G(n,p) with each edge coloured uniformly from `colours` colours
ColouredGraph random_coloured(std::size_t n, double p, std::size_t colours, std::uint64_t seed);
// two disjoint rainbow cliques on n vertices each
ColouredGraph two_cliques(std::size_t n);
// random bipartite graph on parts {0..a-1}, {a..a+b-1}, rainbow coloured
ColouredGraph random_bipartite(std::size_t a, std::size_t b, double p, std::uint64_t seed);
// complete bipartite K_{a,b}, rainbow coloured
ColouredGraph complete_bipartite(std::size_t a, std::size_t b);

// targets (uncoloured)
ColouredGraph path(std::size_t edges);
ColouredGraph star(std::size_t leaves);
ColouredGraph grid(std::size_t rows, std::size_t cols);
// uniform attachment tree on edges+1 vertices, every degree <= max_degree
ColouredGraph random_tree(std::size_t edges, std::size_t max_degree, std::uint64_t seed);
// random graph with `edges` edges and maximum degree <= max_degree
ColouredGraph random_bounded_degree(std::size_t n, std::size_t edges, std::size_t max_degree, std::uint64_t seed);
// one representative per isomorphism class of trees on exactly n vertices
std::vector<ColouredGraph> all_trees(std::size_t n);

} // namespace rainbow::gen
