// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. `acceptance` runs every criterion, `acceptance N` one of
// them. Prints one PASS/FAIL line per criterion; exit status 1 on any FAIL.

#include "support.hpp"

#include "rainbow/applications.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/results.hpp"

#include <fmt/core.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>

using namespace rainbow;
using rainbow::testing::range;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// successes returned by drivers and how many of them the verifier rejected
struct Audit {
    std::size_t successes = 0;
    std::size_t rejected = 0;
    std::vector<std::string> notes;

    void record(bool verified, const std::string &what)
    {
        ++successes;
        if (!verified) {
            ++rejected;
            notes.push_back(what);
        }
    }
};

struct Line {
    bool pass = false;
    std::string detail;
};

std::vector<EdgeList> copy_edges(const ColouredGraph &H, const std::vector<Embedding> &copies)
{
    std::vector<EdgeList> out;
    for (auto &phi : copies)
        out.push_back(image_edges(H, phi));
    return out;
}

bool copies_embed(const ColouredGraph &H, const ColouredGraph &G, const std::vector<Embedding> &copies)
{
    for (auto &phi : copies)
        if (!check_embedding(H, G, phi).ok)
            return false;
    return true;
}

// --- 2 -------------------------------------------------------------------

Line cyclic_k101(Audit &audit)
{
    const std::size_t n = 101;
    int verified = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        auto H = gen::random_tree(40, 4, seed);
        auto t0 = Clock::now();
        try {
            auto res = cyclic_packing(H, n, cfg);
            auto pv = check_packing(copy_edges(H, res.copies), res.host);
            bool ok = res.copies.size() == n && pv.verdict.ok && copies_embed(H, res.host, res.copies) &&
                      check_rainbow(res.host, res.base_copy, H).ok;
            audit.record(ok, fmt::format("cyclic K_101 seed {}", seed));
            verified += ok;
        } catch (const Error &) {
        }
        worst = std::max(worst, seconds_since(t0));
    }
    bool pass = verified >= 16 && worst <= 60;
    return {pass, fmt::format("cyclic packing of a 40-edge tree in K_101: {}/20 verified (need 16), slowest run {:.1f} s "
                              "(limit 60)",
                              verified, worst)};
}

// --- 3 -------------------------------------------------------------------

Line cyclic_k5(Audit &audit)
{
    int decomp = 0;
    double worst = 0;
    auto H = gen::path(2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        auto t0 = Clock::now();
        try {
            auto res = cyclic_packing(H, 5, cfg);
            auto pv = check_packing(copy_edges(H, res.copies), res.host);
            bool ok = pv.verdict.ok && copies_embed(H, res.host, res.copies);
            audit.record(ok, fmt::format("cyclic K_5 seed {}", seed));
            decomp += ok && pv.decomposition && res.decomposition;
        } catch (const Error &) {
        }
        worst = std::max(worst, seconds_since(t0));
    }
    return {decomp == 10 && worst <= 1.0,
            fmt::format("2-edge path decomposes K_5 cyclically: {}/10 (need 10), slowest run {:.3f} s (limit 1)", decomp,
                        worst)};
}

// --- 4 -------------------------------------------------------------------

Line harmonious_trees(Audit &audit)
{
    auto Z = AbelianGroup::cyclic(16);
    auto t0 = Clock::now();
    std::size_t total = 0, labelled = 0, total10 = 0, labelled10 = 0;
    for (std::size_t v = 1; v <= 10; ++v)
        for (auto &tree : gen::all_trees(v)) {
            bool good = false;
            for (std::uint64_t seed = 0; seed < 5 && !good; ++seed) {
                PipelineConfig cfg;
                cfg.rng_seed = seed;
                try {
                    auto res = harmonious_labelling(tree, Z, cfg);
                    bool ok = check_harmonious(tree, res.labels, Z).ok;
                    audit.record(ok, fmt::format("harmonious tree on {} vertices", v));
                    good = ok;
                } catch (const Error &) {
                }
            }
            ++total;
            labelled += good;
            if (v == 10) {
                ++total10;
                labelled10 += good;
            }
        }
    double t = seconds_since(t0);
    bool pass = total10 == 106 && labelled * 100 >= 95 * total && labelled10 * 100 >= 95 * total10 && t <= 600;
    return {pass, fmt::format("Z_16-harmonious labellings: {}/{} trees on <= 10 vertices, {}/{} on exactly 10 (need "
                              "95%), {:.1f} s (limit 600)",
                              labelled, total, labelled10, total10, t)};
}

// --- 5 -------------------------------------------------------------------

Line odc_path12(Audit &audit)
{
    int verified = 0;
    double worst = 0;
    auto H = gen::path(12);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        auto t0 = Clock::now();
        try {
            auto res = odc_cover(H, 4, cfg);
            bool ok = res.copies.size() == 16 && check_odc(copy_edges(H, res.copies), res.host).ok &&
                      copies_embed(H, res.host, res.copies);
            audit.record(ok, fmt::format("odc seed {}", seed));
            verified += ok;
        } catch (const Error &) {
        }
        worst = std::max(worst, seconds_since(t0));
    }
    return {verified >= 16 && worst <= 60,
            fmt::format("approximate ODC of K_16 by a 12-edge path: {}/20 verified (need 16), slowest run {:.2f} s "
                        "(limit 60)",
                        verified, worst)};
}

// --- 6 -------------------------------------------------------------------

std::vector<WeightFunction> weights_for(const ConflictHypergraph &h, std::uint64_t seed)
{
    std::vector<WeightFunction> ws;
    for (std::uint64_t i = 0; i < 10; ++i)
        ws.push_back(rainbow::testing::random_weight(h, 10, 1000 * seed + i, fmt::format("w{}", i)));
    return ws;
}

Line matching_pseudorandom(Audit &)
{
    int within = 0, pairs = 0;
    double min_cover = 1, worst = 0, lo = 1e9, hi = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto h = rainbow::testing::near_regular_hypergraph(3000, 30, 3, 3, seed);
        auto ws = weights_for(h, seed);
        NibbleConfig nc;
        nc.seed = seed;
        auto t0 = Clock::now();
        auto m = pseudorandom_matching(h, ws, nc);
        worst = std::max(worst, seconds_since(t0));
        if (!is_matching(h, m.edges))
            return {false, fmt::format("seed {}: output is not a matching", seed)};
        min_cover = std::min(min_cover, double(m.covered_vertices) / 3000.0);
        for (auto &r : m.weight_report) {
            if (r.name == "size")
                continue;
            ++pairs;
            within += std::abs(r.ratio() - 1) <= 0.2;
            lo = std::min(lo, r.ratio());
            hi = std::max(hi, r.ratio());
        }
    }
    bool pass = min_cover >= 0.85 && within * 10 >= 9 * pairs && worst <= 10;
    return {pass, fmt::format("3-uniform, 3000 vertices, degree ~30: min coverage {:.3f} (need 0.85), {}/{} weight "
                              "ratios within 20% (need 90%, range {:.3f}..{:.3f}), slowest run {:.2f} s (limit 10)",
                              min_cover, within, pairs, lo, hi, worst)};
}

// --- 7 -------------------------------------------------------------------

Line fano(Audit &)
{
    auto h = rainbow::testing::fano_plane();
    auto t0 = Clock::now();
    const auto best = maximum_matching_size(h, 40);
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        NibbleConfig nc;
        nc.seed = seed;
        nc.enabled = seed % 2 == 1;
        auto m = pseudorandom_matching(h, {}, nc);
        ones += m.edges.size() == 1 && is_matching(h, m.edges);
    }
    double t = seconds_since(t0);
    return {best == 1 && ones == 100 && t <= 1,
            fmt::format("Fano plane: maximum matching {} by exhaustive search, matching of size 1 in {}/100 seeds, "
                        "{:.3f} s",
                        best, ones, t)};
}

// --- 8 -------------------------------------------------------------------

// colours of g inside each pair, checked against (1 - gamma/2) e_g(V_i,V_j) / e_H(X_i,X_j)
bool pair_bounded(const ColouredGraph &g, const BlowUpInstance &inst)
{
    const auto r = inst.V.size();
    auto gp = part_index(g.vertex_count(), inst.V);
    auto hp = part_index(inst.H.vertex_count(), inst.X);
    std::vector<std::size_t> eg(r * r, 0), eh(r * r, 0);
    std::map<std::pair<std::size_t, Colour>, std::size_t> count;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        auto i = std::min(gp[u], gp[v]), j = std::max(gp[u], gp[v]);
        eg[std::size_t(i) * r + std::size_t(j)] += 1;
        for (auto c : g.colours(e))
            count[{std::size_t(i) * r + std::size_t(j), c}] += 1;
    }
    for (auto &e : inst.H.edges()) {
        auto i = std::min(hp[e.u], hp[e.v]), j = std::max(hp[e.u], hp[e.v]);
        eh[std::size_t(i) * r + std::size_t(j)] += 1;
    }
    for (auto &[key, k] : count) {
        if (eh[key.first] == 0)
            return false;
        if (double(k) > (1 - inst.params.gamma / 2) * double(eg[key.first]) / double(eh[key.first]) + 1e-9)
            return false;
    }
    return true;
}

Line colour_split(Audit &)
{
    int ok = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = rainbow::testing::distance_split_instance(200, 3, 0.3, seed);
        pad_h_matchings(inst, inst.params.gamma, seed);
        auto t0 = Clock::now();
        try {
            auto [g, rep] = colour_split_transform(inst, seed);
            bool sub = true;
            for (auto &e : g.edges())
                sub = sub && inst.G.has_edge(e.u, e.v);
            ok += sub && is_colour_split(g, inst.V) && pair_bounded(g, inst);
        } catch (const Error &) {
        }
        worst = std::max(worst, seconds_since(t0));
    }
    return {ok >= 18 && worst <= 30,
            fmt::format("colour split of distance K_200, r = 3, gamma = 0.3: {}/20 split and pair-bounded (need 18), "
                        "slowest run {:.2f} s (limit 30)",
                        ok, worst)};
}

// --- 9 -------------------------------------------------------------------

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

Line refinement(Audit &)
{
    const double gamma = 0.8;
    int classes = 0, independent = 0, pairs = 0, floored = 0;
    std::size_t floor = 0;
    auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = rainbow::testing::multipartite_instance(4, 30, 150, 3, seed);
        if (inst.H.vertex_count() != 120 || inst.H.max_degree() != 3)
            return {false, fmt::format("seed {}: generator did not give a Delta = 3 graph on 120 vertices", seed)};
        auto rp = refine_partition(inst, gamma, seed);
        floor = rp.floor;
        std::vector<char> seen(120, 0);
        for (auto &cls : rp.X) {
            ++classes;
            independent += two_independent(inst.H, cls);
            for (auto x : cls)
                seen[x] += 1;
        }
        if (std::count(seen.begin(), seen.end(), 1) != 120)
            return {false, fmt::format("seed {}: refined classes do not partition V(H)", seed)};
        for (std::size_t a = 0; a < rp.X.size(); ++a)
            for (std::size_t c = a + 1; c < rp.X.size(); ++c) {
                std::set<Vertex> in_c(rp.X[c].begin(), rp.X[c].end());
                std::size_t m = 0;
                for (auto x : rp.X[a])
                    for (auto y : rp.H_padded.neighbours(x))
                        m += in_c.count(y);
                ++pairs;
                floored += m >= std::min({rp.floor, rp.X[a].size(), rp.X[c].size()});
            }
    }
    double t = seconds_since(t0);
    return {independent == classes && floored == pairs && floor >= 1 && t <= 5,
            fmt::format("refinement of 4 x 30, Delta = 3, gamma = {}: {}/{} classes 2-independent, {}/{} pairs reach "
                        "the floor {}, {:.2f} s",
                        gamma, independent, classes, floored, pairs, floor, t)};
}

// --- 10 ------------------------------------------------------------------

Line regularity(Audit &)
{
    auto t0 = Clock::now();
    int complete_ok = 0, complete_total = 0;
    for (double eps : {0.01, 0.05, 0.1, 0.25, 0.5})
        for (std::size_t n : {8, 16, 120}) { // exact up to 16, sampled above
            auto g = gen::complete_bipartite(n, n);
            ++complete_total;
            complete_ok += check_super_regular(g, range(0, Vertex(n)), range(Vertex(n), Vertex(n)), {eps, 1.0}).passed;
        }
    int cliques_failed = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto v = check_quasirandom(gen::two_cliques(50), 0.1, 0.5, 64, seed);
        cliques_failed += !v.passed && !v.witnesses.empty();
    }
    int passed = 0, degree_only = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto g = gen::random_bipartite(300, 300, 0.5, seed);
        auto v = check_super_regular_sampled(g, range(0, 300), range(300, 300), {0.1, 0.5, 64, seed});
        passed += v.passed;
        bool only_degree = true;
        for (auto &w : v.witnesses)
            only_degree = only_degree && w.kind == "degree";
        degree_only += !v.passed && only_degree;
    }
    double t = seconds_since(t0);
    bool pass = complete_ok == complete_total && cliques_failed == 10 && passed >= 95 && t <= 60;
    return {pass, fmt::format("complete bipartite {}/{}, two cliques rejected with witness {}/10, G(300,300,0.5) "
                              "passes (0.1, 0.5) in {}/100 (need 95; {} failures are degree-only), {:.1f} s",
                              complete_ok, complete_total, cliques_failed, passed, degree_only, t)};
}

// --- 11 ------------------------------------------------------------------

Line toy_oracle(Audit &audit)
{
    auto t0 = Clock::now();
    int false_success = 0, none_exists = 0, successes = 0, inconclusive = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::uint32_t size = 3 + std::uint32_t(seed % 6);
        const std::size_t edges = size + seed % 5;
        const double p = 0.5 + 0.1 * double(seed % 5);
        const std::size_t colours = size + seed % (size + 1);
        auto inst = rainbow::testing::toy_instance(size, edges, 2, p, colours, seed);
        PipelineConfig cfg;
        cfg.rng_seed = seed;
        cfg.force = true;
        cfg.retries = 4;
        auto out = try_embed_rainbow(inst, cfg);
        if (out.success) {
            ++successes;
            auto hp = part_index(inst.H.vertex_count(), inst.X);
            auto gp = part_index(inst.G.vertex_count(), inst.V);
            bool clusters = true;
            for (Vertex x = 0; x < inst.H.vertex_count(); ++x)
                clusters = clusters && hp[x] == gp[out.embedding[x]];
            audit.record(clusters && check_embedding(inst.H, inst.G, out.embedding).ok &&
                             check_rainbow(inst.G, out.embedding, inst.H).ok,
                         fmt::format("toy seed {}", seed));
        }
        try {
            auto oracle = exhaustive_rainbow_search(inst.H, inst.G, part_index(inst.H.vertex_count(), inst.X),
                                                    part_index(inst.G.vertex_count(), inst.V));
            if (!oracle.embedding) {
                ++none_exists;
                false_success += out.success;
            }
        } catch (const Error &) {
            ++inconclusive;
        }
    }
    double t = seconds_since(t0);
    return {false_success == 0 && inconclusive == 0 && t <= 300,
            fmt::format("200 toy instances: {} successes, {} proven impossible, {} false successes, {} oracle caps hit, "
                        "{:.1f} s",
                        successes, none_exists, false_success, inconclusive, t)};
}

// --- 1 -------------------------------------------------------------------

Line soundness(Audit &)
{
    Audit audit;
    for (auto f : {cyclic_k101, cyclic_k5, harmonious_trees, odc_path12, toy_oracle})
        f(audit);
    std::string detail = fmt::format("{} driver successes, {} rejected by the verifier", audit.successes, audit.rejected);
    for (auto &n : audit.notes)
        detail += "; " + n;
    return {audit.rejected == 0 && audit.successes > 0, detail};
}

// --- 12 ------------------------------------------------------------------

std::string matching_doc(const MatchingResult &m)
{
    nlohmann::ordered_json doc = result_header("matching", 0);
    doc["edges"] = m.edges;
    doc["covered"] = m.covered_vertices;
    for (auto &r : m.weight_report)
        doc["weights"].push_back({{"name", r.name}, {"achieved", r.achieved}, {"target", r.target}});
    return render(doc);
}

std::vector<std::function<std::string()>> determinism_runs()
{
    std::vector<std::function<std::string()>> runs;
    runs.push_back([] {
        PipelineConfig cfg;
        cfg.rng_seed = 3;
        auto H = gen::random_tree(40, 4, 3);
        auto doc = result_header("pack-cyclic", cfg.rng_seed);
        add_packing(doc, cyclic_packing(H, 101, cfg), H);
        return render(doc);
    });
    runs.push_back([] {
        PipelineConfig cfg;
        cfg.rng_seed = 3;
        auto H = gen::path(2);
        auto doc = result_header("pack-cyclic", cfg.rng_seed);
        add_packing(doc, cyclic_packing(H, 5, cfg), H);
        return render(doc);
    });
    runs.push_back([] {
        PipelineConfig cfg;
        cfg.rng_seed = 3;
        auto Z = AbelianGroup::cyclic(16);
        std::string all;
        auto trees = gen::all_trees(10);
        for (std::size_t i = 0; i < trees.size(); i += 15) {
            auto doc = result_header("label", cfg.rng_seed);
            add_labelling(doc, harmonious_labelling(trees[i], Z, cfg), Z);
            all += render(doc);
        }
        return all;
    });
    runs.push_back([] {
        PipelineConfig cfg;
        cfg.rng_seed = 3;
        auto H = gen::path(12);
        auto doc = result_header("odc", cfg.rng_seed);
        add_odc(doc, odc_cover(H, 4, cfg), H);
        return render(doc);
    });
    runs.push_back([] {
        auto h = rainbow::testing::near_regular_hypergraph(3000, 30, 3, 3, 3);
        NibbleConfig nc;
        nc.seed = 3;
        std::string both = matching_doc(pseudorandom_matching(h, weights_for(h, 3), nc));
        nc.enabled = true;
        return both + matching_doc(pseudorandom_matching(h, weights_for(h, 3), nc));
    });
    runs.push_back([] {
        NibbleConfig nc;
        nc.seed = 3;
        return matching_doc(pseudorandom_matching(rainbow::testing::fano_plane(), {}, nc));
    });
    runs.push_back([] {
        auto inst = rainbow::testing::distance_split_instance(200, 3, 0.3, 3);
        pad_h_matchings(inst, inst.params.gamma, 3);
        auto [g, rep] = colour_split_transform(inst, 3);
        return to_text(g) + fmt::format("attempts {}\n", rep.attempts);
    });
    return runs;
}

Line determinism(Audit &)
{
    auto runs = determinism_runs();
    const int budget = kernels::thread_budget();
    int identical = 0;
    std::vector<std::string> failed;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::vector<std::string> out;
        for (int threads : {1, 4, 1}) {
            kernels::set_thread_budget(threads);
            try {
                out.push_back(runs[i]());
            } catch (const Error &e) {
                out.push_back(std::string("error: ") + e.what());
            }
        }
        kernels::set_thread_budget(budget);
        bool same = out[0] == out[1] && out[1] == out[2] && out[0].rfind("error", 0) != 0;
        identical += same;
        if (!same)
            failed.push_back(std::to_string(i + 2));
    }
    std::string detail = fmt::format("{}/{} result files byte-identical across reruns and thread budgets 1/4",
                                     identical, runs.size());
    if (!failed.empty()) {
        detail += " (differs:";
        for (auto &f : failed)
            detail += " criterion " + f;
        detail += ")";
    }
    return {identical == int(runs.size()), detail};
}

} // namespace

int main(int argc, char **argv)
{
    const std::vector<std::function<Line(Audit &)>> criteria{soundness,  cyclic_k101,  cyclic_k5,   harmonious_trees,
                                                             odc_path12, matching_pseudorandom,    fano,
                                                             colour_split, refinement, regularity, toy_oracle,
                                                             determinism};
    std::vector<std::size_t> which;
    if (argc > 1) {
        int k = std::atoi(argv[1]);
        if (k < 1 || k > int(criteria.size())) {
            fmt::print(stderr, "usage: acceptance [1..{}]\n", criteria.size());
            return 2;
        }
        which.push_back(std::size_t(k - 1));
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i)
            which.push_back(i);
    }
    bool all = true;
    for (auto i : which) {
        Audit audit;
        Line line;
        try {
            line = criteria[i](audit);
        } catch (const std::exception &e) {
            line = {false, std::string("threw: ") + e.what()};
        }
        if (audit.rejected > 0) {
            line.pass = false;
            line.detail += fmt::format("; {} successes rejected by the verifier", audit.rejected);
        }
        fmt::print("{} criterion {}: {}\n", line.pass ? "PASS" : "FAIL", i + 1, line.detail);
        std::fflush(stdout);
        all = all && line.pass;
    }
    return all ? 0 : 1;
}
