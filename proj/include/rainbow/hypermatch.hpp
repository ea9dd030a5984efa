// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/candidacy.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

enum class HyperTag : std::uint8_t { Left, Right, Colour, Plain };

// Uniform hypergraph with flattened edge storage. Built from a candidacy
// graph, vertices are left positions, then right positions, then colours.
class ConflictHypergraph {
  public:
    ConflictHypergraph() = default;
    // untagged hypergraph for tests and experiments; every edge has k distinct vertices
    static ConflictHypergraph plain(std::size_t vertex_count, std::size_t k,
                                    const std::vector<std::vector<std::uint32_t>> &edges);

    std::size_t uniformity() const { return k_; }
    std::size_t vertex_count() const { return tags_.size(); }
    std::size_t edge_count() const { return k_ == 0 ? 0 : flat_.size() / k_; }
    std::span<const std::uint32_t> edge(std::size_t i) const { return {flat_.data() + i * k_, k_}; }
    std::span<const std::uint32_t> incident(std::uint32_t v) const
    {
        return {inc_.data() + inc_off_[v], inc_.data() + inc_off_[v + 1]};
    }
    std::size_t degree(std::uint32_t v) const { return inc_off_[v + 1] - inc_off_[v]; }
    HyperTag tag(std::uint32_t v) const { return tags_[v]; }
    // original id behind a hyper vertex: left/right position or colour id
    std::uint32_t label(std::uint32_t v) const { return labels_[v]; }

    // candidacy arc (left position, arc index) that produced hyperedge i
    std::pair<std::uint32_t, std::uint32_t> origin(std::size_t i) const { return origin_[i]; }
    bool has_origin() const { return !origin_.empty(); }

  private:
    friend ConflictHypergraph build_conflict_hypergraph(const CandidacyGraph &a);
    void finalise();

    std::size_t k_ = 0;
    std::vector<HyperTag> tags_;
    std::vector<std::uint32_t> labels_;
    std::vector<std::uint32_t> flat_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> origin_;
    std::vector<std::size_t> inc_off_;
    std::vector<std::uint32_t> inc_;
};

// one hyperedge e u {x, v} u c(e) per candidacy arc; all colour sets must have
// the same size (pad first)
ConflictHypergraph build_conflict_hypergraph(const CandidacyGraph &a);

struct DegreeProfile {
    std::size_t max_degree = 0;
    // max number of edges through a pair of vertices that share an edge
    std::size_t max_codegree = 0;
    // histogram[d] = vertices of that class with degree d
    std::vector<std::size_t> left_histogram, right_histogram, colour_histogram, plain_histogram;
};

DegreeProfile degree_profile(const ConflictHypergraph &h);

struct WeightFunction {
    std::string name;
    std::vector<std::uint32_t> weights; // per hyperedge
    std::uint32_t cap = 1;              // weights lie in [0, cap]
};

WeightFunction constant_weight(const ConflictHypergraph &h, std::string name = "size");

struct WeightReport {
    std::string name;
    double total = 0;    // w(E)
    double achieved = 0; // w(M)
    double target = 0;   // w(E) / Delta
    // w(E) >= max w * Delta^(1 + delta); lighter functions are reported only
    bool significant = false;
    double ratio() const { return target > 0 ? achieved / target : 1.0; }
};

struct NibbleConfig {
    bool enabled = false;
    double theta = 0.1;
    std::uint64_t seed = 0;
    // delta in the mass threshold above
    double mass_threshold = 0.1;
    std::size_t max_rounds = 20000;
};

struct MatchingResult {
    std::vector<std::uint32_t> edges; // hyperedge ids, increasing
    std::size_t covered_left = 0;
    std::size_t covered_right = 0;
    std::size_t covered_vertices = 0;
    std::size_t rounds = 0;
    std::vector<WeightReport> weight_report;
};

// Seeded random greedy (or nibble rounds when cfg.enabled). Throws Internal if
// the output is not a matching.
MatchingResult pseudorandom_matching(const ConflictHypergraph &h, const std::vector<WeightFunction> &ws,
                                     const NibbleConfig &cfg);

bool is_matching(const ConflictHypergraph &h, const std::vector<std::uint32_t> &edges);

// exhaustive maximum matching size; throws CapExceeded above max_edges
std::size_t maximum_matching_size(const ConflictHypergraph &h, std::size_t max_edges = 40);

} // namespace rainbow
