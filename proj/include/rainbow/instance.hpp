// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/graph.hpp"

#include <string>
#include <vector>

namespace rainbow {

struct InstanceParams {
    double eps = 0.1;
    double d = 1.0;
    std::size_t Delta = 0;
    std::size_t Lambda = 0;
    double gamma = 0.1;
};

// H and G with matched partitions; X[i] is embedded into V[i].
struct BlowUpInstance {
    ColouredGraph H;
    ColouredGraph G;
    std::vector<VertexSet> X;
    std::vector<VertexSet> V;
    InstanceParams params;

    std::size_t r() const { return X.size(); }
    // nominal cluster size n (mean |V_i|)
    double cluster_size() const;
};

// throws Precondition with a reason when the bookkeeping is off
void validate_instance(const BlowUpInstance &inst);

struct ColouringStats {
    std::size_t global_max = 0;
    std::size_t local_max = 0;
    std::size_t codegree = 0;
    std::size_t split_violations = 0;
};

ColouringStats colouring_stats(const ColouredGraph &g);
// split_violations counts colours seen in more than one slot of the partition
ColouringStats colouring_stats(const ColouredGraph &g, const std::vector<VertexSet> &parts);

// parts must be disjoint and cover V(g)
bool is_colour_split(const ColouredGraph &g, const std::vector<VertexSet> &parts);

struct ColourBound {
    Colour colour = 0;
    double value = 0;
    bool passed = true;
};

struct BoundednessReport {
    double limit = 0; // (1 - gamma) d n^2
    bool passed = true;
    std::vector<ColourBound> colours; // one entry per colour present in G
    std::size_t failures() const;
};

// sum_ij e^a_G(V_i,V_j) e_H(X_i,X_j) against (1-gamma) d n^2, per colour
BoundednessReport boundedness_condition(const BlowUpInstance &inst, double n);

// e_H(X_i, X_j) for all i < j, row major in an r x r table
std::vector<std::vector<std::size_t>> pair_edge_counts(const ColouredGraph &g, const std::vector<VertexSet> &parts);

} // namespace rainbow
