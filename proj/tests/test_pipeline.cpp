#include "support.hpp"

#include "rainbow/kernels.hpp"
#include "rainbow/pipeline.hpp"

#include <doctest.h>

#include <set>

using namespace rainbow;
using rainbow::testing::range;

namespace {

ColouredGraph rainbow_clique(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            b.add_edge(i, j, b.labels().intern(std::to_string(i) + "-" + std::to_string(j)));
    return b.build();
}

ColouredGraph triangle()
{
    GraphBuilder b(3);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    return b.build();
}

std::vector<std::size_t> sizes(const std::vector<VertexSet> &parts)
{
    std::vector<std::size_t> s;
    for (auto &p : parts)
        s.push_back(p.size());
    std::sort(s.rbegin(), s.rend());
    return s;
}

bool covers(const std::vector<VertexSet> &parts, std::size_t n)
{
    std::vector<int> seen(n, 0);
    for (auto &p : parts)
        for (auto v : p)
            ++seen[v];
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

// no two vertices of a class within distance 2 in h
bool two_independent(const ColouredGraph &h, const VertexSet &cls)
{
    std::set<Vertex> in(cls.begin(), cls.end());
    for (auto x : cls)
        for (auto y : h.neighbours(x)) {
            if (in.count(y))
                return false;
            for (auto z : h.neighbours(y))
                if (z != x && in.count(z))
                    return false;
        }
    return true;
}

std::size_t matching_edges_between(const ColouredGraph &h, const VertexSet &a, const VertexSet &b)
{
    std::set<Vertex> in_b(b.begin(), b.end());
    std::size_t m = 0;
    for (auto x : a)
        for (auto y : h.neighbours(x))
            m += in_b.count(y);
    return m;
}

} // namespace

TEST_CASE("config validation")
{
    PipelineConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));
    auto bad = cfg;
    bad.mu = bad.gamma;
    CHECK_THROWS_AS(validate_config(bad), Error);
    bad = cfg;
    bad.gamma = 0;
    CHECK_THROWS_AS(validate_config(bad), Error);
    bad = cfg;
    bad.eps_schedule = {0.1, 0.1, 0.2};
    CHECK_THROWS_AS(validate_config(bad), Error);

    auto eps = eps_schedule(cfg, 2);
    REQUIRE(eps.size() == 4);
    CHECK(eps[0] == doctest::Approx(0.1));
    CHECK(eps[3] == doctest::Approx(0.8));
    auto mine = cfg;
    mine.eps_schedule = {0.01, 0.02};
    CHECK_THROWS_AS(eps_schedule(mine, 2), Error);
}

TEST_CASE("layer split extremes")
{
    auto g = gen::distance_clique(9);
    auto all_b = split_host_colours(g, 1.0, 3);
    CHECK(all_b.A.edge_count() == 0);
    CHECK(all_b.B.edge_count() == g.edge_count());
    auto all_a = split_host_colours(g, 0.0, 3);
    CHECK(all_a.B.edge_count() == 0);
    CHECK(all_a.A.edge_count() == g.edge_count());
}

TEST_CASE("layer split partitions edges by colour class")
{
    auto k4 = rainbow_clique(4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = split_host_colours(k4, 0.5, seed);
        CHECK(s.A.edge_count() + s.B.edge_count() == 6);
        for (EdgeId e = 0; e < 6; ++e) {
            auto [u, v] = k4.edge(e);
            CHECK(s.A.has_edge(u, v) != s.B.has_edge(u, v));
            CHECK(bool(s.in_B[k4.colour_of(e)]) == s.B.has_edge(u, v));
        }
        auto again = split_host_colours(k4, 0.5, seed);
        CHECK(again.in_B == s.in_B);
    }
    auto g = gen::random_coloured(40, 0.5, 12, 1);
    auto s = split_host_colours(g, 0.4, 9);
    for (Colour c = 0; c < g.colour_count(); ++c)
        CHECK((s.A.colour_size(c) == 0 || s.B.colour_size(c) == 0));

    GraphBuilder b(3);
    b.add_edge(0, 1, ColourSet{0, 1});
    CHECK_THROWS_AS(split_host_colours(b.build(), 0.5, 0), Error);
}

TEST_CASE("equitable partitions")
{
    auto empty = GraphBuilder(7).build();
    auto p = equitable_partition(empty, 3, 1);
    CHECK(sizes(p) == std::vector<std::size_t>{3, 2, 2});

    GraphBuilder c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(0, 3);
    auto cycle = c4.build();
    auto q = equitable_partition(cycle, 3, 1);
    CHECK(sizes(q) == std::vector<std::size_t>{2, 1, 1});
    for (auto &cls : q)
        CHECK(is_independent(cycle, cls));

    auto k5 = rainbow_clique(5);
    auto singles = equitable_partition(k5, 5, 0);
    CHECK(sizes(singles) == std::vector<std::size_t>(5, 1));
    CHECK_THROWS_AS(equitable_partition(k5, 4, 0), Error);
}

TEST_CASE("equitable partitions of random bounded degree graphs")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto h = gen::random_bounded_degree(101, 150, 4, seed);
        auto parts = equitable_partition(h, 5, seed);
        REQUIRE(parts.size() == 5);
        CHECK(covers(parts, 101));
        auto s = sizes(parts);
        CHECK(s.front() - s.back() <= 1);
        for (auto &cls : parts)
            CHECK(is_independent(h, cls));
    }
}

TEST_CASE("refinement of a perfect matching is the identity")
{
    BlowUpInstance inst;
    GraphBuilder hb(20);
    for (Vertex i = 0; i < 10; ++i)
        hb.add_edge(i, 10 + i);
    inst.H = hb.build();
    inst.G = gen::complete_bipartite(10, 10);
    inst.X = inst.V = {range(0, 10), range(10, 10)};
    inst.params.Delta = 1;
    auto rp = refine_partition(inst, 0.1, 0);
    CHECK(rp.X.size() == 2);
    CHECK(rp.padding.empty());
}

TEST_CASE("refined classes of a path are 2-independent")
{
    // Hamilton path alternating between two clusters of 20
    BlowUpInstance inst;
    GraphBuilder hb(40);
    for (Vertex i = 0; i + 1 < 40; ++i)
        hb.add_edge(i % 2 == 0 ? i / 2 : 20 + i / 2, (i + 1) % 2 == 0 ? (i + 1) / 2 : 20 + (i + 1) / 2);
    inst.H = hb.build();
    inst.G = gen::complete_bipartite(20, 20);
    inst.X = inst.V = {range(0, 20), range(20, 20)};
    inst.params.Delta = 2;
    auto rp = refine_partition(inst, 0.5, 4);
    CHECK(rp.X.size() == 8);
    CHECK(covers(rp.X, 40));
    for (auto &cls : rp.X)
        CHECK(two_independent(inst.H, cls));
    for (std::size_t i = 0; i < rp.X.size(); ++i)
        CHECK(rp.X[i].size() == rp.V[i].size());
}

TEST_CASE("padding reaches the floor and keeps refined pairs matchings")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = rainbow::testing::multipartite_instance(4, 30, 150, 3, seed);
        auto rp = refine_partition(inst, 0.8, seed);
        CHECK(rp.floor == 2);
        for (auto &cls : rp.X)
            CHECK(two_independent(inst.H, cls));
        for (std::size_t a = 0; a < rp.X.size(); ++a)
            for (std::size_t c = a + 1; c < rp.X.size(); ++c) {
                auto m = matching_edges_between(rp.H_padded, rp.X[a], rp.X[c]);
                CHECK(m >= std::min({rp.floor, rp.X[a].size(), rp.X[c].size()}));
                for (auto x : rp.X[a]) {
                    std::size_t k = 0;
                    for (auto y : rp.H_padded.neighbours(x))
                        k += std::count(rp.X[c].begin(), rp.X[c].end(), y);
                    CHECK(k <= 1);
                }
            }
        for (auto &e : rp.padding)
            CHECK_FALSE(inst.H.has_edge(e.u, e.v));
        CHECK(rp.H_padded.edge_count() == inst.H.edge_count() + rp.padding.size());
    }
}

TEST_CASE("colour split transform output is split and bounded")
{
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = rainbow::testing::distance_split_instance(120, 3, 0.3, seed);
        pad_h_matchings(inst, inst.params.gamma, seed);
        try {
            auto [g, rep] = colour_split_transform(inst, seed);
            CHECK(is_colour_split(g, inst.V));
            CHECK(rep.colour_split);
            CHECK(rep.bounded);
            for (auto &e : g.edges())
                CHECK(inst.G.has_edge(e.u, e.v));
            ++ok;
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::RetriesExhausted);
            CHECK_FALSE(e.details.empty());
        }
    }
    CHECK(ok >= 3);
}

// With one pair tau is forced (q = 1) and each stage 1 survivor stays with
// probability gamma^2 / q = gamma^2.
TEST_CASE("colour split with a single pair")
{
    auto inst = rainbow::testing::distance_split_instance(200, 2, 0.3, 1);
    pad_h_matchings(inst, inst.params.gamma, 1);
    REQUIRE(inst.H.edge_count() == 9);
    ColourSplitOptions opts;
    opts.target_density = 1.0; // no thinning
    auto [g, rep] = colour_split_transform(inst, 1, opts);
    CHECK(rep.p.at(0) == doctest::Approx(9.0 / 200.0));
    CHECK(is_colour_split(g, inst.V));
    // expected 0.09 * 0.045 * 10000 = 40.5 edges
    CHECK(g.edge_count() >= 15);
    CHECK(g.edge_count() <= 70);
}

TEST_CASE("pad_h_matchings lifts every pair to gamma^2 n")
{
    auto inst = rainbow::testing::multipartite_instance(3, 30, 6, 3, 5);
    auto added = pad_h_matchings(inst, 0.5, 1);
    CHECK(added > 0);
    auto eh = pair_edge_counts(inst.H, inst.X);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(double(eh[i][j]) >= 0.25 * 30 - 1e-9);
}

// colour sets grow by at most one per round only when every cluster pair of H
// is a matching; otherwise a vertex can gain several neighbours in one round
TEST_CASE("rounds keep candidacy graphs consistent and colour sets growing by one")
{
    auto inst = rainbow::testing::multipartite_instance(3, 30, 45, 2, 7, true);
    REQUIRE(inst.H.edge_count() == 45);
    PipelineConfig cfg;
    auto split = split_host_colours(inst.G, cfg.gamma, 1);
    auto ctx = make_context(inst, split.A, split.B);
    std::vector<CandidacyGraph> A;
    for (std::size_t i = 0; i < 3; ++i)
        A.push_back(complete_candidacy(inst.X[i], inst.V[i]));
    PartialEmbedding phi;
    phi.assignment.assign(inst.H.vertex_count(), kUnmapped);
    auto eps = eps_schedule(cfg, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<std::size_t> later;
        for (std::size_t i = k + 1; i < 3; ++i)
            later.push_back(i);
        auto before = A;
        auto rep = approx_embed_round(ctx, k, later, A, phi, eps[k], eps[k + 1], cfg, 100 + k);
        CHECK(rep.colour_growth <= 1);
        // every surviving arc is a candidate when rebuilt from phi
        for (auto i : later) {
            auto scratch = candidacy_from_scratch(ctx, split.A, i, phi.assignment);
            for (std::uint32_t l = 0; l < A[i].adj.size(); ++l)
                for (auto &arc : A[i].adj[l]) {
                    auto ref = scratch.find(l, arc.right);
                    REQUIRE(ref != nullptr);
                    CHECK(ref->colours == arc.colours);
                }
        }
        // used colours: one per embedded H-edge, all distinct
        std::size_t embedded_edges = 0;
        for (auto &e : inst.H.edges())
            embedded_edges += phi.assignment[e.u] != kUnmapped && phi.assignment[e.v] != kUnmapped;
        CHECK(phi.used_colours.size() == embedded_edges);
        CHECK(std::adjacent_find(phi.used_colours.begin(), phi.used_colours.end()) == phi.used_colours.end());
        // only G_A edges so far
        for (auto &e : inst.H.edges())
            if (phi.assignment[e.u] != kUnmapped && phi.assignment[e.v] != kUnmapped)
                CHECK(split.A.has_edge(phi.assignment[e.u], phi.assignment[e.v]));
    }
}

TEST_CASE("round on an uncoloured complete instance is a perfect matching")
{
    BlowUpInstance inst;
    inst.H = GraphBuilder(20).build();
    inst.G = gen::complete_bipartite(10, 10);
    inst.X = inst.V = {range(0, 10), range(10, 10)};
    PipelineConfig cfg;
    auto ctx = make_context(inst, inst.G, GraphBuilder(20).build());
    std::vector<CandidacyGraph> A{complete_candidacy(inst.X[0], inst.V[0]), complete_candidacy(inst.X[1], inst.V[1])};
    auto untouched = A[1];
    PartialEmbedding phi;
    phi.assignment.assign(20, kUnmapped);
    auto rep = approx_embed_round(ctx, 0, {1}, A, phi, 0.1, 0.2, cfg, 5);
    CHECK(rep.matched == 10);
    CHECK(rep.prune.removed_A0 == 0);
    CHECK(A[1].edge_count() == untouched.edge_count());
}

TEST_CASE("edgeless targets embed")
{
    BlowUpInstance inst;
    inst.H = GraphBuilder(20).build();
    inst.G = gen::random_bipartite(10, 10, 0.8, 1);
    inst.X = inst.V = {range(0, 10), range(10, 10)};
    inst.params.d = 0.8;
    PipelineConfig cfg;
    cfg.force = true;
    auto out = embed_rainbow(inst, cfg);
    CHECK(out.success);
    CHECK(check_embedding(inst.H, inst.G, out.embedding).ok);
    for (Vertex x = 0; x < 20; ++x)
        CHECK((out.embedding[x] < 10) == (x < 10));
}

TEST_CASE("a perfect matching into a rainbow complete bipartite graph")
{
    BlowUpInstance inst;
    GraphBuilder hb(40);
    for (Vertex i = 0; i < 20; ++i)
        hb.add_edge(i, 20 + (i * 7) % 20);
    inst.H = hb.build();
    inst.G = gen::complete_bipartite(20, 20);
    inst.X = inst.V = {range(0, 20), range(20, 20)};
    inst.params.d = 1.0;
    inst.params.eps = 0.2;
    PipelineConfig cfg;
    auto out = embed_rainbow(inst, cfg);
    REQUIRE(out.success);
    CHECK(check_rainbow(inst.G, out.embedding, inst.H).ok);
    CHECK(out.edge_colours.size() == 20);
}

TEST_CASE("distance style pair instances embed in most seeds")
{
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = rainbow::testing::distance_pair_instance(60, 0.6, 8, 2, seed);
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        auto out = try_embed_rainbow(inst, cfg);
        if (out.success) {
            ++ok;
            CHECK(check_embedding(inst.H, inst.G, out.embedding).ok);
            CHECK(check_rainbow(inst.G, out.embedding, inst.H).ok);
        }
    }
    CHECK(ok >= 16);
}

TEST_CASE("completion succeeds within five restarts")
{
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = rainbow::testing::distance_pair_instance(40, 0.6, 8, 1, seed);
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        cfg.gamma = 0.3;
        cfg.mu = 0.2;
        cfg.retries = 1;
        cfg.completion_restarts = 5;
        cfg.force = true;
        auto out = try_embed_rainbow(inst, cfg);
        if (out.success) {
            ++ok;
            CHECK(check_rainbow(inst.G, out.embedding, inst.H).ok);
        }
    }
    CHECK(ok >= 16);
}

TEST_CASE("boundedness gate rejects over-used colours")
{
    // a single block, so every colour holds about 36 edges
    auto inst = rainbow::testing::distance_pair_instance(30, 0.6, 30, 2, 1);
    PipelineConfig cfg;
    auto out = try_embed_rainbow(inst, cfg);
    CHECK_FALSE(out.success);
    CHECK(out.error == ErrorKind::Gate);
    CHECK_THROWS_AS(embed_rainbow(inst, cfg), Error);
}

TEST_CASE("triangle into a rainbow clique")
{
    PipelineConfig cfg;
    auto out = embed_quasirandom(rainbow_clique(10), triangle(), cfg);
    REQUIRE(out.success);
    CHECK(out.embedding.size() == 3);
    CHECK(check_rainbow(rainbow_clique(10), out.embedding, triangle()).ok);
}

TEST_CASE("quasirandom gate counts colours")
{
    // K_6 by distance has classes of 6, 6 and 3 edges; a 5-edge path allows 0.9 * 15 / 5 = 2.7
    auto g = gen::distance_clique(6);
    auto h = gen::path(5);
    auto gate = quasirandom_gate(g, h, 0.1);
    CHECK_FALSE(gate.passed);
    CHECK_FALSE(gate.offending.empty());
    auto out = try_embed_quasirandom(g, h, PipelineConfig{});
    CHECK(out.error == ErrorKind::Gate);
    CHECK_FALSE(out.success);
}

TEST_CASE("runs are deterministic per seed and thread count")
{
    auto inst = rainbow::testing::distance_pair_instance(40, 0.6, 8, 2, 3);
    PipelineConfig cfg;
    cfg.rng_seed = 11;
    const int saved = kernels::thread_budget();
    kernels::set_thread_budget(1);
    auto a = try_embed_rainbow(inst, cfg);
    kernels::set_thread_budget(4);
    auto b = try_embed_rainbow(inst, cfg);
    kernels::set_thread_budget(saved);
    CHECK(a.success == b.success);
    CHECK(a.embedding == b.embedding);
    CHECK(a.transcript.to_text() == b.transcript.to_text());
}

TEST_CASE("transcripts echo the configuration")
{
    PipelineConfig cfg;
    cfg.rng_seed = 42;
    auto out = try_embed_quasirandom(rainbow_clique(10), triangle(), cfg);
    auto text = out.transcript.to_text();
    CHECK(text.find("gamma") != std::string::npos);
    CHECK(text.find("seed") != std::string::npos);
    CHECK(text.find("verdict") != std::string::npos);
}

TEST_CASE("toy instances never report a false success")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = rainbow::testing::toy_instance(6, 5 + seed % 4, 2, 0.7, 4 + seed % 5, seed);
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        cfg.force = true;
        cfg.retries = 4;
        auto out = try_embed_rainbow(inst, cfg);
        auto hp = part_index(inst.H.vertex_count(), inst.X);
        auto gp = part_index(inst.G.vertex_count(), inst.V);
        auto oracle = exhaustive_rainbow_search(inst.H, inst.G, hp, gp);
        if (!oracle.embedding)
            CHECK_FALSE(out.success);
        if (out.success)
            CHECK(check_rainbow(inst.G, out.embedding, inst.H).ok);
    }
}
