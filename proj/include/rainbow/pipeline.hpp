// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/candidacy.hpp"
#include "rainbow/hypermatch.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/regularity.hpp"
#include "rainbow/verify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

inline constexpr Vertex kUnmapped = ~Vertex(0);

struct PipelineConfig {
    double gamma = 0.2;                // layer split: colour classes go to G_B with probability gamma
    double mu = 0.15;                  // reservoir fraction, 0 < mu < gamma
    std::vector<double> eps_schedule;  // eps_0 < ... < eps_{r+1}; empty means 0.1 * 2^t
    std::size_t retries = 16;          // independent pipeline attempts
    std::size_t round_retries = 4;
    std::size_t completion_restarts = 12;
    std::uint64_t completion_node_budget = 200000;
    std::uint64_t rng_seed = 0;
    NibbleConfig nibble;

    bool reductions = false;           // run the colour split and refinement transforms first
    bool strict_completion_checks = false;
    bool relaxed_completion = true;    // completion may fall back to unused G_A colours
    bool enforce_round_checks = true;
    bool force = false;                // skip the feasibility gates

    // embed_quasirandom
    double slack = 0.1;                // global bound (1 - slack) e(G)/e(H)
    double partition_eps = 1.0;        // colour balance tolerance
    double balance_min_expected = 2.0; // balance only for colours expecting this many edges per pair
    std::size_t partition_retries = 200;

    double star_density = -1;          // density of the E_G* relation; negative means d_B
    std::size_t codegree_cap = 0;      // 0 means ceil(n^(1/3))
    std::size_t weight_functions = 64;
    std::size_t sample_count = 32;     // regularity samples in reports
    double gate_eps = -1;              // super-regularity gate eps; negative means inst.params.eps
};

// throws Precondition on out of range values
void validate_config(const PipelineConfig &cfg);
// eps_t for t = 0..r+1 (explicit schedule or the default geometric one)
std::vector<double> eps_schedule(const PipelineConfig &cfg, std::size_t r);

// --- transcript --------------------------------------------------------------

struct StageRecord {
    std::string stage;
    std::size_t attempt = 0;
    std::map<std::string, double> counters;
    std::vector<std::string> notes;
};

struct Transcript {
    std::map<std::string, std::string> config;
    std::vector<StageRecord> stages;
    std::size_t attempts_used = 0;
    std::string verdict;

    StageRecord &add(std::string stage, std::size_t attempt);
    void append(const Transcript &other);
    std::string to_text() const;
};

// --- colour splitting and refinement ---------------------------------------

struct LayerSplit {
    ColouredGraph A;
    ColouredGraph B;
    std::vector<char> in_B; // per colour id
};

// each colour class lands in G_B with probability gamma
LayerSplit split_host_colours(const ColouredGraph &g, double gamma, std::uint64_t seed);

struct ColourSplitReport {
    bool colour_split = false;
    bool bounded = false;
    bool regular = false;
    std::size_t attempts = 0;
    double target_density = 0;
    std::vector<double> p;                // per pair, row major i < j
    std::vector<double> worst_bound_ratio; // per pair: max colour count / allowed
    std::vector<std::string> failures;
};

struct ColourSplitOptions {
    double target_density = -1; // d'; negative means min over pairs of gamma^2 p_ij d
    // attempts are cheap and at n ~ 70 only a few percent pass the exact bound check
    std::size_t retries = 256;
    std::size_t sample_count = 32;
};

// adds matching edges on unmatched vertices until every pair has
// ceil(gamma^2 n) H-edges; returns the number of edges added
std::size_t pad_h_matchings(BlowUpInstance &inst, double gamma, std::uint64_t seed);

// three stage subsampling of G; throws RetriesExhausted with the failing
// clauses when no attempt passes the exact checks
std::pair<ColouredGraph, ColourSplitReport> colour_split_transform(const BlowUpInstance &inst, std::uint64_t seed,
                                                                   const ColourSplitOptions &opts = {});

// k independent sets of sizes floor(n/k) or ceil(n/k); needs Delta(h) < k
std::vector<VertexSet> equitable_partition(const ColouredGraph &h, std::size_t k, std::uint64_t seed = 0);
// square of h restricted to S
ColouredGraph square_on(const ColouredGraph &h, const VertexSet &S);

struct RefinedPartition {
    std::vector<VertexSet> X;        // refined H classes
    std::vector<VertexSet> V;        // refined G classes, same sizes
    std::vector<std::size_t> parent; // cluster of each refined class
    ColouredGraph H_padded;          // H plus padding edges
    std::vector<Edge> padding;       // flagged padding edges
    std::size_t floor = 0;           // ceil(gamma^4 n / Delta^2)
};

RefinedPartition refine_partition(const BlowUpInstance &inst, double gamma, std::uint64_t seed);

struct RefinementReport {
    bool matchings = false;
    bool colour_split = false;
    bool bounded = false;
    std::size_t attempts = 0;
    std::size_t artificial_edges = 0;
    std::vector<std::string> failures;
};

// full refinement: H side as refine_partition, G side by the tau
// distribution, thinning and artificial fill of empty intra cluster pairs
std::pair<BlowUpInstance, RefinementReport> refine_instance(const BlowUpInstance &inst, double gamma,
                                                            std::uint64_t seed, std::size_t retries = 8);

// --- the rounds ---------------------------------------------------------------

struct PartialEmbedding {
    Embedding assignment;          // kUnmapped where not embedded
    std::vector<Colour> used_colours; // sorted
    std::size_t round = 0;
};

struct RoundContext {
    const BlowUpInstance *inst = nullptr;
    const ColouredGraph *GA = nullptr;       // host layer consumed by the rounds
    const ColouredGraph *GB = nullptr;
    std::vector<int> h_part;                 // cluster per H-vertex
    std::vector<int> g_part;                 // cluster per G-vertex
    std::vector<std::uint32_t> h_pos;        // position of x inside its cluster
    std::vector<std::uint32_t> g_pos;
};

RoundContext make_context(const BlowUpInstance &inst, const ColouredGraph &GA, const ColouredGraph &GB);

// A_i(phi) rebuilt from scratch: v is a candidate for x when every embedded
// H-neighbour y of x has phi(y) v in `host`; colours of those edges form c_t
CandidacyGraph candidacy_from_scratch(const RoundContext &ctx, const ColouredGraph &host, std::size_t cluster,
                                      const Embedding &phi);

struct PruneReport {
    std::size_t removed_A0 = 0;
    std::size_t removed_Ai = 0;
    std::size_t removed_G = 0;
    std::size_t bad_vertices = 0;
    std::size_t colour_conflicts = 0; // arcs dropped for repeated or used colours
    double worst_fraction = 0;
    bool within_budget = true;
};

struct PruneResult {
    CandidacyGraph A0;
    std::vector<CandidacyGraph> A;      // later clusters, same order as input
    std::vector<std::vector<char>> bad; // per later cluster: removed host edge flags by G edge id
    PruneReport report;
};

// drops colour conflicting arcs of A0, then the atypical arcs and host edges
PruneResult prune_bad(const RoundContext &ctx, std::size_t cluster, const CandidacyGraph &A0,
                      const std::vector<std::size_t> &later, const std::vector<CandidacyGraph> &A,
                      const std::vector<Colour> &used_colours, double eps, double budget);

struct RoundReport {
    std::size_t matched = 0;
    std::size_t target = 0;
    std::size_t retries = 0;
    bool size_ok = false;
    bool bounded_ok = true;   // per colour load in the updated graphs
    bool codegree_ok = true;  // colour codegree
    std::size_t regular_fail = 0; // pairs failing super-regularity, reported only
    std::size_t max_colour_load = 0;
    std::size_t max_codegree = 0;
    std::size_t colour_growth = 0; // max |c_{t+1}| - |c_t|
    std::vector<WeightReport> weights;
    PruneReport prune;
};

// one round of the approximate embedding: matches cluster `cluster` and
// updates the later A-candidacy graphs in place
RoundReport approx_embed_round(const RoundContext &ctx, std::size_t cluster, const std::vector<std::size_t> &later,
                               std::vector<CandidacyGraph> &A, PartialEmbedding &phi, double eps, double eps_next,
                               const PipelineConfig &cfg, std::uint64_t seed);

// --- completion ---------------------------------------------------------------

struct CompletionChecks {
    bool gb_regular = true;        // G_B between reservoirs
    bool b_regular = true;         // mirror candidacy graphs
    bool reservoir_bounded = true; // colours inside the reservoirs
    bool hit_bounded = true;       // colours of G_B^hit
    bool sizes = true;
    std::size_t max_reservoir_colour = 0;
    std::size_t max_hit_colour = 0;
    double bound = 0; // mu^{3/2} n
};

struct CompletionState {
    const BlowUpInstance *inst = nullptr;
    const ColouredGraph *GA = nullptr;
    const ColouredGraph *GB = nullptr;
    std::vector<CandidacyGraph> B;      // diagnostic mirror candidacy graphs
    std::vector<VertexSet> X_res, V_res; // reservoirs of the successful attempt
    std::size_t n_B = 0;
    std::vector<Edge> hit_edges;
    CompletionChecks checks;
};

struct CompletionReport {
    bool success = false;
    std::size_t leftovers = 0;
    std::size_t restarts = 0;
    std::size_t n_B = 0;
    std::size_t n_B_nominal = 0;
    std::uint64_t nodes = 0;
    std::size_t reused_edges = 0; // H-edges kept on their round image
    bool relaxed = false;         // the solution needed G_A colours unused by phi
    CompletionChecks checks;
};

// extends phi to a total embedding using G_B edges (and the round images of
// edges whose endpoints both return to their old images)
CompletionReport complete_embedding(CompletionState &state, PartialEmbedding &phi, const PipelineConfig &cfg,
                                    double eps_last, std::uint64_t seed);

// --- drivers ------------------------------------------------------------------

struct EmbedOutcome {
    bool success = false;
    Embedding embedding;
    std::vector<Colour> edge_colours; // per H-edge, in H edge order
    Transcript transcript;
    std::string failed_stage;
    ErrorKind error = ErrorKind::RetriesExhausted;
    std::string message;
};

// never throws for exhausted retries; the outcome says what failed
EmbedOutcome try_embed_rainbow(const BlowUpInstance &inst, const PipelineConfig &cfg);
// throws Error(RetriesExhausted or Gate) tagged with the stage
EmbedOutcome embed_rainbow(const BlowUpInstance &inst, const PipelineConfig &cfg);

struct QuasirandomGate {
    bool passed = true;
    std::size_t global_max = 0;
    double limit = 0;
    std::size_t local_max = 0;
    std::vector<std::pair<Colour, std::size_t>> offending; // colour, class size
};

QuasirandomGate quasirandom_gate(const ColouredGraph &G, const ColouredGraph &H, double slack);

EmbedOutcome try_embed_quasirandom(const ColouredGraph &G, const ColouredGraph &H, const PipelineConfig &cfg);
EmbedOutcome embed_quasirandom(const ColouredGraph &G, const ColouredGraph &H, const PipelineConfig &cfg);

} // namespace rainbow
