// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/hypermatch.hpp"

#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace rainbow {

void ConflictHypergraph::finalise()
{
    const auto n = tags_.size();
    inc_off_.assign(n + 1, 0);
    for (auto v : flat_)
        ++inc_off_[v + 1];
    for (std::size_t v = 0; v < n; ++v)
        inc_off_[v + 1] += inc_off_[v];
    inc_.assign(flat_.size(), 0);
    auto pos = inc_off_;
    for (std::size_t i = 0; i < edge_count(); ++i)
        for (auto v : edge(i))
            inc_[pos[v]++] = std::uint32_t(i);
}

ConflictHypergraph ConflictHypergraph::plain(std::size_t vertex_count, std::size_t k,
                                             const std::vector<std::vector<std::uint32_t>> &edges)
{
    if (k == 0)
        fail(ErrorKind::Precondition, "hypergraph uniformity must be positive");
    ConflictHypergraph h;
    h.k_ = k;
    h.tags_.assign(vertex_count, HyperTag::Plain);
    h.labels_.resize(vertex_count);
    std::iota(h.labels_.begin(), h.labels_.end(), 0u);
    for (auto &e : edges) {
        if (e.size() != k)
            fail(ErrorKind::InvalidInput, "hyperedge of size " + std::to_string(e.size()) + " in a " +
                                              std::to_string(k) + "-uniform hypergraph");
        auto s = e;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= vertex_count)
            fail(ErrorKind::InvalidInput, "hyperedge with repeated or out of range vertex");
        h.flat_.insert(h.flat_.end(), s.begin(), s.end());
    }
    h.finalise();
    return h;
}

ConflictHypergraph build_conflict_hypergraph(const CandidacyGraph &a)
{
    std::size_t t = 0;
    bool first = true;
    for (auto &row : a.adj)
        for (auto &arc : row) {
            if (first)
                t = arc.colours.size();
            else if (arc.colours.size() != t)
                fail(ErrorKind::InvalidInput, "candidacy colour sets are not uniform (sizes " + std::to_string(t) +
                                                  " and " + std::to_string(arc.colours.size()) + ")");
            first = false;
        }

    ConflictHypergraph h;
    h.k_ = t + 2;
    const auto L = std::uint32_t(a.left.size()), R = std::uint32_t(a.right.size());
    h.tags_.assign(L, HyperTag::Left);
    h.tags_.resize(L + R, HyperTag::Right);
    h.labels_.resize(L + R);
    std::iota(h.labels_.begin(), h.labels_.begin() + L, 0u);
    std::iota(h.labels_.begin() + L, h.labels_.end(), 0u);
    std::unordered_map<Colour, std::uint32_t> colour_vertex;
    for (std::uint32_t l = 0; l < L; ++l)
        for (std::uint32_t i = 0; i < a.adj[l].size(); ++i) {
            auto &arc = a.adj[l][i];
            h.flat_.push_back(l);
            h.flat_.push_back(L + arc.right);
            for (auto c : arc.colours) {
                auto [it, fresh] = colour_vertex.emplace(c, std::uint32_t(h.tags_.size()));
                if (fresh) {
                    h.tags_.push_back(HyperTag::Colour);
                    h.labels_.push_back(c);
                }
                h.flat_.push_back(it->second);
            }
            h.origin_.emplace_back(l, i);
        }
    h.finalise();
    return h;
}

DegreeProfile degree_profile(const ConflictHypergraph &h)
{
    DegreeProfile p;
    for (std::uint32_t v = 0; v < h.vertex_count(); ++v) {
        auto d = h.degree(v);
        p.max_degree = std::max(p.max_degree, d);
        auto &hist = h.tag(v) == HyperTag::Left    ? p.left_histogram
                     : h.tag(v) == HyperTag::Right ? p.right_histogram
                     : h.tag(v) == HyperTag::Colour ? p.colour_histogram
                                                    : p.plain_histogram;
        if (hist.size() <= d)
            hist.resize(d + 1, 0);
        ++hist[d];
    }
    // codegree of u through its incident edges, one vertex at a time
    std::vector<std::uint32_t> count(h.vertex_count(), 0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t u = 0; u < h.vertex_count(); ++u) {
        for (auto e : h.incident(u))
            for (auto w : h.edge(e))
                if (w > u) {
                    if (count[w]++ == 0)
                        touched.push_back(w);
                    p.max_codegree = std::max<std::size_t>(p.max_codegree, count[w]);
                }
        for (auto w : touched)
            count[w] = 0;
        touched.clear();
    }
    return p;
}

WeightFunction constant_weight(const ConflictHypergraph &h, std::string name)
{
    return {std::move(name), std::vector<std::uint32_t>(h.edge_count(), 1), 1};
}

bool is_matching(const ConflictHypergraph &h, const std::vector<std::uint32_t> &edges)
{
    std::vector<char> seen(h.vertex_count(), 0);
    for (auto e : edges) {
        if (e >= h.edge_count())
            return false;
        for (auto v : h.edge(e)) {
            if (seen[v])
                return false;
            seen[v] = 1;
        }
    }
    return true;
}

namespace {

constexpr std::uint64_t kGreedyStream = 0x9e7;
constexpr std::uint64_t kNibbleStream = 0x91b;

bool free_edge(const ConflictHypergraph &h, std::size_t e, const std::vector<char> &covered)
{
    for (auto v : h.edge(e))
        if (covered[v])
            return false;
    return true;
}

void take_edge(const ConflictHypergraph &h, std::size_t e, std::vector<char> &covered)
{
    for (auto v : h.edge(e))
        covered[v] = 1;
}

std::vector<std::uint32_t> random_greedy(const ConflictHypergraph &h, std::uint64_t seed)
{
    std::vector<std::uint32_t> order(h.edge_count());
    std::iota(order.begin(), order.end(), 0u);
    Rng rng(derive_seed(seed, kGreedyStream));
    rng.shuffle(order);
    std::vector<char> covered(h.vertex_count(), 0);
    std::vector<std::uint32_t> out;
    for (auto e : order)
        if (free_edge(h, e, covered)) {
            take_edge(h, e, covered);
            out.push_back(e);
        }
    return out;
}

std::vector<std::uint32_t> nibble(const ConflictHypergraph &h, const NibbleConfig &cfg, std::size_t &rounds)
{
    std::vector<char> covered(h.vertex_count(), 0);
    std::vector<std::uint32_t> alive(h.edge_count());
    std::iota(alive.begin(), alive.end(), 0u);
    std::vector<std::uint32_t> out;
    std::vector<std::uint32_t> deg(h.vertex_count(), 0);
    rounds = 0;
    while (!alive.empty() && rounds < cfg.max_rounds) {
        Rng rng(derive_seed(cfg.seed, kNibbleStream, rounds));
        ++rounds;
        std::fill(deg.begin(), deg.end(), 0);
        std::uint32_t max_deg = 1;
        for (auto e : alive)
            for (auto v : h.edge(e))
                max_deg = std::max(max_deg, ++deg[v]);
        double p = std::min(1.0, cfg.theta / double(max_deg));
        std::vector<std::uint32_t> picked;
        for (auto e : alive)
            if (rng.bernoulli(p))
                picked.push_back(e);
        rng.shuffle(picked);
        for (auto e : picked)
            if (free_edge(h, e, covered)) {
                take_edge(h, e, covered);
                out.push_back(e);
            }
        std::erase_if(alive, [&](std::uint32_t e) { return !free_edge(h, e, covered); });
    }
    // round cap reached: finish the remainder greedily in seeded order
    if (!alive.empty()) {
        Rng rng(derive_seed(cfg.seed, kNibbleStream, ~std::uint64_t(0)));
        rng.shuffle(alive);
        for (auto e : alive)
            if (free_edge(h, e, covered)) {
                take_edge(h, e, covered);
                out.push_back(e);
            }
    }
    return out;
}

} // namespace

MatchingResult pseudorandom_matching(const ConflictHypergraph &h, const std::vector<WeightFunction> &ws,
                                     const NibbleConfig &cfg)
{
    MatchingResult res;
    if (cfg.enabled) {
        if (cfg.theta <= 0 || cfg.theta > 1)
            fail(ErrorKind::Precondition, "nibble theta must lie in (0, 1]");
        res.edges = nibble(h, cfg, res.rounds);
    } else {
        res.edges = random_greedy(h, cfg.seed);
        res.rounds = 1;
    }
    std::sort(res.edges.begin(), res.edges.end());
    if (!is_matching(h, res.edges))
        fail(ErrorKind::Internal, "matching engine produced intersecting edges");

    std::vector<char> covered(h.vertex_count(), 0);
    for (auto e : res.edges)
        take_edge(h, e, covered);
    for (std::uint32_t v = 0; v < h.vertex_count(); ++v)
        if (covered[v]) {
            ++res.covered_vertices;
            res.covered_left += h.tag(v) == HyperTag::Left;
            res.covered_right += h.tag(v) == HyperTag::Right;
        }

    std::size_t delta = 0;
    for (std::uint32_t v = 0; v < h.vertex_count(); ++v)
        delta = std::max(delta, h.degree(v));
    for (auto &w : ws) {
        if (w.weights.size() != h.edge_count())
            fail(ErrorKind::Precondition, "weight function '" + w.name + "' has the wrong length");
        WeightReport r;
        r.name = w.name;
        std::uint32_t max_w = 0;
        for (auto x : w.weights) {
            if (x > w.cap)
                fail(ErrorKind::Precondition, "weight function '" + w.name + "' exceeds its cap");
            r.total += x;
            max_w = std::max(max_w, x);
        }
        for (auto e : res.edges)
            r.achieved += w.weights[e];
        r.target = delta ? r.total / double(delta) : 0.0;
        r.significant = max_w > 0 && r.total >= double(max_w) * std::pow(double(delta), 1.0 + cfg.mass_threshold);
        res.weight_report.push_back(std::move(r));
    }
    return res;
}

namespace {

void best_matching(const ConflictHypergraph &h, std::size_t i, std::vector<char> &covered, std::size_t cur,
                   std::size_t &best)
{
    best = std::max(best, cur);
    if (i == h.edge_count() || cur + (h.edge_count() - i) <= best)
        return;
    if (free_edge(h, i, covered)) {
        take_edge(h, i, covered);
        best_matching(h, i + 1, covered, cur + 1, best);
        for (auto v : h.edge(i))
            covered[v] = 0;
    }
    best_matching(h, i + 1, covered, cur, best);
}

} // namespace

std::size_t maximum_matching_size(const ConflictHypergraph &h, std::size_t max_edges)
{
    if (h.edge_count() > max_edges)
        fail(ErrorKind::CapExceeded, "exhaustive matching limited to " + std::to_string(max_edges) + " edges");
    std::vector<char> covered(h.vertex_count(), 0);
    std::size_t best = 0;
    best_matching(h, 0, covered, 0, best);
    return best;
}

} // namespace rainbow
