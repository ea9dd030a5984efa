// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rainbow {

struct RegularityParams {
    double eps = 0.1;
    double d = 0.5;
    std::size_t sample_count = 64;
    std::uint64_t rng_seed = 0;
};

// A failing (S, T) pair. Degree failures use S = {v} and an empty T.
struct SetWitness {
    std::string kind; // "degree", "density", "pair-degree"
    VertexSet S;
    VertexSet T;
    double density = 0;
};

struct RegularityVerdict {
    bool passed = true;
    // the sampled (or enumerated) density furthest from d
    double worst_pair_density = 0;
    std::pair<double, double> degree_range{0, 0};
    std::vector<SetWitness> witnesses;
    // every qualifying (S, T) was checked, not sampled
    bool exhaustive = false;
    std::size_t samples_checked = 0;
};

// e(S,T)/(|S||T|); S and T disjoint and non-empty
double density(const ColouredGraph &g, const VertexSet &S, const VertexSet &T);

// smallest integer >= eps * m (at least 1)
std::size_t threshold_size(double eps, std::size_t m);

// degree clause exhaustively, the set clause on p.sample_count seeded pairs,
// plus the pair degree criterion
RegularityVerdict check_super_regular_sampled(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                              const RegularityParams &p);
// same clauses with every S of A enumerated; for each S the extreme T of each
// size follow from sorting B by degree into S. Needs |A| <= 22.
RegularityVerdict check_super_regular_exact(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                            const RegularityParams &p);
// exact when one side has at most 16 vertices, sampled otherwise
RegularityVerdict check_super_regular(const ColouredGraph &g, const VertexSet &A, const VertexSet &B,
                                      const RegularityParams &p);

bool check_pair_degree_regularity(const ColouredGraph &g, const VertexSet &A, const VertexSet &B, double eps,
                                  double d);

RegularityVerdict check_quasirandom(const ColouredGraph &g, double eps, double d, std::size_t sample_count = 64,
                                    std::uint64_t seed = 0);

// vertices a in A with |N(a) & Y| outside (d +- eps)|Y|
std::size_t slicing_exceptions(const ColouredGraph &g, const VertexSet &A, const VertexSet &Y, double eps, double d);

} // namespace rainbow
