#include "support.hpp"

#include "rainbow/applications.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <set>

using namespace rainbow;

namespace {

Permutation rotation(std::size_t n)
{
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = Vertex((i + 1) % n);
    return p;
}

ColouredGraph uncoloured_clique(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            b.add_edge(i, j);
    return b.build();
}

// edges grouped into classes by colour, as sorted lists of edge ids
std::set<std::vector<EdgeId>> colour_partition(const ColouredGraph &g)
{
    std::map<Colour, std::vector<EdgeId>> by;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        by[g.colours(e)[0]].push_back(e);
    std::set<std::vector<EdgeId>> out;
    for (auto &[c, es] : by)
        out.insert(es);
    return out;
}

ErrorKind kind_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

} // namespace

TEST_CASE("rotation orbits of K5 are the distance classes")
{
    auto [g, act] = orbit_colouring(uncoloured_clique(5), {rotation(5)});
    CHECK(act.elements.size() == 5);
    CHECK(act.orbit_count == 2);
    CHECK(act.full_orbits);
    CHECK(colour_partition(g) == colour_partition(distance_colouring(5)));
}

TEST_CASE("identity group gives a rainbow colouring")
{
    Permutation id{0, 1, 2, 3};
    auto [g, act] = orbit_colouring(uncoloured_clique(4), {id});
    CHECK(act.elements.size() == 1);
    CHECK(act.orbit_count == 6);
    CHECK(colouring_stats(g).global_max == 1);
}

TEST_CASE("orbit colouring preconditions")
{
    CHECK(kind_of([] { orbit_colouring(uncoloured_clique(4), {rotation(4)}, {1000, true}); }) ==
          ErrorKind::Precondition);
    CHECK(kind_of([] { orbit_colouring(gen::path(3), {rotation(4)}); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { orbit_colouring(uncoloured_clique(6), {rotation(6)}, {3, false}); }) ==
          ErrorKind::CapExceeded);
}

TEST_CASE("orbit ids are invariant under the group")
{
    const std::size_t n = 9;
    Permutation mult(n); // i -> 2i is an automorphism of K_9 as well
    for (std::size_t i = 0; i < n; ++i)
        mult[i] = Vertex((2 * i) % n);
    auto base = uncoloured_clique(n);
    auto [g, act] = orbit_colouring(base, {rotation(n), mult});
    CHECK(act.elements.front() == Permutation{0, 1, 2, 3, 4, 5, 6, 7, 8});
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto &phi = act.elements[rng.below(act.elements.size())];
        auto e = EdgeId(rng.below(g.edge_count()));
        auto [u, v] = g.edge(e);
        auto image = *g.find_edge(phi[u], phi[v]);
        CHECK(act.orbit_of_edge[image] == act.orbit_of_edge[e]);
    }
}

TEST_CASE("cyclic decomposition of K5 by 2-edge paths")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        auto res = cyclic_packing(gen::path(2), 5, cfg);
        CHECK(res.verdict.verdict.ok);
        CHECK(res.decomposition);
        CHECK(res.verdict.covered_edges == 10);
        CHECK(res.copies.size() == 5);
    }
}

TEST_CASE("cyclic packing of a single edge")
{
    PipelineConfig cfg;
    auto res = cyclic_packing(gen::path(1), 5, cfg);
    CHECK(res.verdict.verdict.ok);
    CHECK(res.copies.size() == 5);
    CHECK(res.verdict.covered_edges == 5);
    CHECK_FALSE(res.decomposition);
}

TEST_CASE("even cyclic hosts drop the antipodal matching")
{
    PipelineConfig cfg;
    // n = 8 and 10 are too small: some antipodal pair always straddles two
    // clusters and that vertex misses the degree bound
    auto res = cyclic_packing(gen::path(2), 16, cfg);
    CHECK(res.host.edge_count() == 120 - 8);
    CHECK_FALSE(res.host.has_edge(0, 8));
    CHECK(res.verdict.verdict.ok);
    CHECK(colouring_stats(res.host).local_max <= 2);
}

TEST_CASE("cyclic packing gate")
{
    PipelineConfig cfg;
    CHECK(kind_of([&] { cyclic_packing(gen::path(3), 6, cfg); }) == ErrorKind::Gate);
    CHECK(kind_of([&] { cyclic_packing(gen::path(8), 5, cfg); }) == ErrorKind::Precondition);
}

TEST_CASE("bipartite packings")
{
    PipelineConfig cfg;
    auto edge = bipartite_packing(gen::path(1), {0, 1}, 4, cfg);
    CHECK(edge.verdict.verdict.ok);
    CHECK(edge.verdict.covered_edges == 4);
    CHECK(colouring_stats(edge.host).local_max == 1);
    // the single edge orbit is a perfect matching of K_{4,4}
    std::vector<int> deg(8, 0);
    for (auto &c : edge.copies) {
        ++deg[c[0]];
        ++deg[c[1]];
    }
    CHECK(std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; }));

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        cfg.rng_seed = seed;
        auto p = bipartite_packing(gen::path(2), {0, 1, 0}, 3, cfg);
        CHECK(p.verdict.verdict.ok);
        CHECK(p.verdict.covered_edges == 6);
        CHECK_FALSE(p.decomposition);
    }
    CHECK(kind_of([&] { bipartite_packing(gen::path(3), {0, 1, 0, 1}, 3, cfg); }) == ErrorKind::Gate);
    CHECK(kind_of([&] { bipartite_packing(gen::path(2), {0, 0, 1}, 3, cfg); }) == ErrorKind::Precondition);
}

TEST_CASE("double cover of a single edge")
{
    PipelineConfig cfg;
    auto res = odc_cover(gen::path(1), 1, cfg);
    CHECK(res.verdict.ok);
    CHECK(res.copies.size() == 2);
    CHECK(res.double_edges == 1);
    CHECK(res.disjoint_pairs == 0);
}

TEST_CASE("translates keep their colours")
{
    auto host = gen::xor_clique(4);
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto u = Vertex(rng.below(16)), v = Vertex(rng.below(16)), z = Vertex(rng.below(16));
        if (u == v)
            continue;
        auto a = host.colours(*host.find_edge(u, v))[0];
        auto b = host.colours(*host.find_edge(u ^ z, v ^ z))[0];
        CHECK(a == b);
    }
}

TEST_CASE("double covers of a 12-edge path")
{
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        try {
            auto res = odc_cover(gen::path(12), 4, cfg);
            ok += res.verdict.ok;
            CHECK(res.single_edges + 2 * res.double_edges == 16 * 12);
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::RetriesExhausted);
        }
    }
    CHECK(ok >= 4);
}

TEST_CASE("odc preconditions")
{
    PipelineConfig cfg;
    CHECK(kind_of([&] { odc_cover(gen::path(1), 0, cfg); }) == ErrorKind::Precondition);
    CHECK(kind_of([&] { odc_cover(gen::path(4), 2, cfg); }) == ErrorKind::Precondition);
    GraphBuilder cycle(8);
    for (Vertex i = 0; i < 8; ++i)
        cycle.add_edge(i, (i + 1) % 8);
    CHECK(kind_of([&] { odc_cover(cycle.build(), 3, cfg); }) == ErrorKind::Gate);
}

TEST_CASE("harmonious labellings")
{
    PipelineConfig cfg;
    auto star = harmonious_labelling(gen::star(3), AbelianGroup::cyclic(5), cfg);
    CHECK(star.verdict.ok);
    CHECK(check_harmonious(gen::star(3), star.labels, AbelianGroup::cyclic(5)).ok);

    auto edge = harmonious_labelling(gen::path(1), AbelianGroup::cyclic(2), cfg);
    CHECK(edge.verdict.ok);
    CHECK(std::set<std::uint32_t>(edge.labels.begin(), edge.labels.end()) == std::set<std::uint32_t>{0, 1});

    CHECK(kind_of([&] { harmonious_labelling(gen::random_bounded_degree(8, 9, 3, 1), AbelianGroup::cyclic(8), cfg); }) ==
          ErrorKind::Gate);

    auto tree = harmonious_labelling(gen::random_tree(9, 3, 2), AbelianGroup::parse_spec("Z2xZ8"), cfg);
    CHECK(tree.verdict.ok);
}

TEST_CASE("edge budget arithmetic")
{
    CHECK(within_edge_budget(9, 10, 0.1));
    CHECK_FALSE(within_edge_budget(10, 10, 0.1));
    CHECK(within_edge_budget(2, 2.5, 0.1));
}
