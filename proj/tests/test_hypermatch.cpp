#include "support.hpp"

#include "rainbow/candidacy.hpp"
#include "rainbow/hypermatch.hpp"

#include <doctest.h>

#include <set>

using namespace rainbow;
using rainbow::testing::fano_plane;

namespace {

CandidacyGraph two_by_two(ColourSet a, ColourSet b, ColourSet c, ColourSet d)
{
    auto g = complete_candidacy({0, 1}, {10, 11});
    g.adj[0][0].colours = std::move(a);
    g.adj[0][1].colours = std::move(b);
    g.adj[1][0].colours = std::move(c);
    g.adj[1][1].colours = std::move(d);
    return g;
}

// colour sets of the chosen arcs are pairwise disjoint and arcs share no endpoint
bool rainbow_matching(const CandidacyGraph &a, const ConflictHypergraph &h, const std::vector<std::uint32_t> &edges)
{
    std::set<std::uint32_t> left, right;
    std::set<Colour> colours;
    for (auto e : edges) {
        auto [l, i] = h.origin(e);
        auto &arc = a.adj[l][i];
        if (!left.insert(l).second || !right.insert(arc.right).second)
            return false;
        for (auto c : arc.colours)
            if (!colours.insert(c).second)
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("uncoloured candidacy arcs become 2-sets")
{
    auto a = complete_candidacy({0, 1, 2}, {5, 6, 7});
    auto h = build_conflict_hypergraph(a);
    CHECK(h.uniformity() == 2);
    CHECK(h.edge_count() == 9);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        CHECK(h.tag(e[0]) == HyperTag::Left);
        CHECK(h.tag(e[1]) == HyperTag::Right);
    }
}

TEST_CASE("coloured arcs gain their colours as vertices")
{
    auto a = two_by_two({1, 2}, {3, 4}, {1, 5}, {6, 7});
    auto h = build_conflict_hypergraph(a);
    CHECK(h.uniformity() == 4);
    auto e = h.edge(0);
    std::set<Colour> colours;
    for (auto v : e)
        if (h.tag(v) == HyperTag::Colour)
            colours.insert(h.label(v));
    CHECK(colours == std::set<Colour>{1, 2});
    // arcs 0-10 and 1-10 share colour 1 and right vertex 10; arcs 0-10 and 1-11 are disjoint
    auto [l, i] = h.origin(3);
    CHECK(l == 1);
    CHECK(i == 1);
}

TEST_CASE("shared colours are never co-selected")
{
    // 0-10 {1} and 1-11 {1}: a perfect matching exists only through the other diagonal
    auto a = two_by_two({1}, {2}, {3}, {1});
    auto h = build_conflict_hypergraph(a);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto m = pseudorandom_matching(h, {}, {false, 0.1, seed});
        CHECK(rainbow_matching(a, h, m.edges));
        std::set<std::uint32_t> chosen(m.edges.begin(), m.edges.end());
        CHECK_FALSE((chosen.count(0) && chosen.count(3)));
    }
}

TEST_CASE("non uniform colour sets are rejected")
{
    auto a = two_by_two({1}, {2, 3}, {4}, {5});
    CHECK_THROWS_AS(build_conflict_hypergraph(a), Error);
}

TEST_CASE("degree profiles")
{
    auto disjoint = ConflictHypergraph::plain(6, 3, {{0, 1, 2}, {3, 4, 5}});
    auto p = degree_profile(disjoint);
    CHECK(p.max_degree == 1);
    CHECK(p.max_codegree == 1);

    auto f = degree_profile(fano_plane());
    CHECK(f.max_degree == 3);
    CHECK(f.max_codegree == 1);

    auto k = degree_profile(build_conflict_hypergraph(complete_candidacy({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9})));
    CHECK(k.max_degree == 5);
    CHECK(k.max_codegree == 1);
    CHECK(k.left_histogram.at(5) == 5);
    CHECK(k.right_histogram.at(5) == 5);
}

TEST_CASE("plain hypergraphs validate their edges")
{
    CHECK_THROWS_AS(ConflictHypergraph::plain(4, 3, {{0, 1}}), Error);
    CHECK_THROWS_AS(ConflictHypergraph::plain(4, 3, {{0, 1, 1}}), Error);
    CHECK_THROWS_AS(ConflictHypergraph::plain(4, 3, {{0, 1, 4}}), Error);
}

TEST_CASE("disjoint edges are all taken")
{
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 10; ++i)
        edges.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    auto h = ConflictHypergraph::plain(30, 3, edges);
    for (bool nibble : {false, true}) {
        auto m = pseudorandom_matching(h, {constant_weight(h)}, {nibble, 0.5, 3});
        CHECK(m.edges.size() == 10);
        CHECK(m.covered_vertices == 30);
    }
}

TEST_CASE("the Fano plane has matchings of size one")
{
    auto h = fano_plane();
    CHECK(maximum_matching_size(h) == 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK(pseudorandom_matching(h, {}, {false, 0.1, seed}).edges.size() == 1);
        CHECK(pseudorandom_matching(h, {}, {true, 0.3, seed}).edges.size() == 1);
    }
}

TEST_CASE("matchings are deterministic per seed")
{
    auto h = rainbow::testing::near_regular_hypergraph(300, 10, 3, 3, 4);
    auto w = rainbow::testing::random_weight(h, 5, 1, "w");
    for (bool nibble : {false, true}) {
        NibbleConfig cfg{nibble, 0.2, 77};
        auto a = pseudorandom_matching(h, {w}, cfg);
        auto b = pseudorandom_matching(h, {w}, cfg);
        CHECK(a.edges == b.edges);
        CHECK(a.weight_report[0].achieved == b.weight_report[0].achieved);
    }
}

TEST_CASE("constant weight equals matching size")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto h = rainbow::testing::near_regular_hypergraph(200, 8, 3, 2, seed);
        auto m = pseudorandom_matching(h, {constant_weight(h)}, {seed % 2 == 1, 0.2, seed});
        CHECK(is_matching(h, m.edges));
        CHECK(m.weight_report[0].achieved == double(m.edges.size()));
        CHECK(m.weight_report[0].total == double(h.edge_count()));
    }
}

TEST_CASE("random greedy is within half of the maximum on small hypergraphs")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        std::vector<std::vector<std::uint32_t>> edges;
        const std::uint32_t n = 12;
        auto m = 5 + rng.below(16);
        for (std::size_t i = 0; i < m; ++i) {
            auto pick = sample_indices(rng, n, 3);
            edges.push_back({pick[0], pick[1], pick[2]});
        }
        auto h = ConflictHypergraph::plain(n, 3, edges);
        auto best = maximum_matching_size(h);
        auto got = pseudorandom_matching(h, {}, {false, 0.1, seed}).edges.size();
        CHECK(2 * got >= best);
    }
}

TEST_CASE("matchings map back to rainbow candidacy matchings")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        VertexSet left = rainbow::testing::range(0, 12), right = rainbow::testing::range(100, 12);
        auto a = complete_candidacy(left, right);
        for (auto &row : a.adj)
            for (auto &arc : row) {
                ColourSet cs;
                while (cs.size() < 2) {
                    auto c = Colour(rng.below(30));
                    if (std::find(cs.begin(), cs.end(), c) == cs.end())
                        cs.push_back(c);
                }
                std::sort(cs.begin(), cs.end());
                arc.colours = cs;
            }
        auto h = build_conflict_hypergraph(a);
        auto m = pseudorandom_matching(h, {}, {seed % 2 == 0, 0.2, seed});
        CHECK(rainbow_matching(a, h, m.edges));
        CHECK(m.covered_left == m.edges.size());
        CHECK(m.covered_right == m.edges.size());
    }
}

TEST_CASE("weights above the cap are rejected")
{
    auto h = fano_plane();
    WeightFunction w{"bad", std::vector<std::uint32_t>(7, 3), 2};
    CHECK_THROWS_AS(pseudorandom_matching(h, {w}, {}), Error);
}

TEST_CASE("pad and strip colour sets")
{
    auto a = two_by_two({}, {1}, {}, {2});
    Colour next = 100;
    auto p = pad_colour_sets(a, 3, next);
    std::set<Colour> dummies;
    for (auto &row : p.adj)
        for (auto &arc : row) {
            CHECK(arc.colours.size() == 3);
            for (auto c : arc.colours)
                if (c >= p.dummy_from)
                    CHECK(dummies.insert(c).second);
        }
    CHECK(dummies.size() == 3 + 2 + 3 + 2);
    CHECK(next == 110);
    auto s = strip_dummies(p);
    CHECK(s.adj[0][1].colours == ColourSet{1});
    CHECK(s.adj[0][0].colours.empty());

    Colour n2 = 0;
    auto unchanged = pad_colour_sets(complete_candidacy({0}, {1}), 0, n2);
    CHECK(unchanged.adj[0][0].colours.empty());
    CHECK_THROWS_AS(pad_colour_sets(a, 0, n2), Error);
}
