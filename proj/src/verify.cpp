// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/verify.hpp"

#include "rainbow/kernels.hpp"

#include <algorithm>
#include <unordered_map>

namespace rainbow {

namespace {

std::string pair_str(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

std::string key_str(std::uint64_t key) { return pair_str(Vertex(key >> 32), Vertex(key & 0xffffffffu)); }

// sorted keys of each copy; records host and repetition problems on the way
std::vector<std::vector<std::uint64_t>> copy_keys(const std::vector<EdgeList> &copies, const ColouredGraph &G,
                                                  Verdict &v)
{
    std::vector<std::vector<std::uint64_t>> keys(copies.size());
    for (std::size_t i = 0; i < copies.size(); ++i) {
        auto &k = keys[i];
        for (auto &e : copies[i]) {
            if (e.u >= G.vertex_count() || e.v >= G.vertex_count() || !G.has_edge(e.u, e.v))
                v.add("not-in-host", "copy " + std::to_string(i) + " edge " + pair_str(e.u, e.v));
            k.push_back(edge_key(e.u, e.v));
        }
        std::sort(k.begin(), k.end());
        for (std::size_t j = 1; j < k.size(); ++j)
            if (k[j] == k[j - 1])
                v.add("repeated-edge", "copy " + std::to_string(i) + " edge " + key_str(k[j]));
        k.erase(std::unique(k.begin(), k.end()), k.end());
    }
    return keys;
}

} // namespace

void Verdict::add(std::string kind, std::string witness)
{
    ok = false;
    ++total_violations;
    if (violations.size() < kMaxViolations)
        violations.push_back({std::move(kind), std::move(witness)});
}

Verdict check_embedding(const ColouredGraph &H, const ColouredGraph &G, const Embedding &phi)
{
    Verdict v;
    if (phi.size() != H.vertex_count()) {
        v.add("domain", "map has " + std::to_string(phi.size()) + " entries for " +
                            std::to_string(H.vertex_count()) + " vertices");
        return v;
    }
    std::unordered_map<Vertex, Vertex> owner;
    for (Vertex x = 0; x < phi.size(); ++x) {
        if (phi[x] >= G.vertex_count()) {
            v.add("range", std::to_string(x) + " -> " + std::to_string(phi[x]));
            continue;
        }
        auto [it, fresh] = owner.emplace(phi[x], x);
        if (!fresh)
            v.add("injectivity", pair_str(it->second, x) + " -> " + std::to_string(phi[x]));
    }
    for (auto &e : H.edges()) {
        auto a = phi[e.u], b = phi[e.v];
        if (a >= G.vertex_count() || b >= G.vertex_count())
            continue;
        if (!G.has_edge(a, b))
            v.add("non-edge", pair_str(e.u, e.v) + " -> " + pair_str(a, b));
    }
    return v;
}

Verdict check_rainbow(const ColouredGraph &G, const Embedding &phi, const ColouredGraph &H)
{
    Verdict v;
    if (phi.size() != H.vertex_count()) {
        v.add("domain", "map has " + std::to_string(phi.size()) + " entries");
        return v;
    }
    std::unordered_map<Colour, EdgeId> first;
    for (EdgeId he = 0; he < H.edge_count(); ++he) {
        auto e = H.edge(he);
        auto a = phi[e.u], b = phi[e.v];
        auto ge = (a < G.vertex_count() && b < G.vertex_count()) ? G.find_edge(a, b) : std::nullopt;
        if (!ge) {
            v.add("non-edge", pair_str(e.u, e.v) + " -> " + pair_str(a, b));
            continue;
        }
        for (auto c : G.colours(*ge)) {
            auto [it, fresh] = first.emplace(c, he);
            if (!fresh) {
                auto o = H.edge(it->second);
                v.add("colour", "colour " + G.colour_label(c) + " on " + pair_str(o.u, o.v) + " and " +
                                    pair_str(e.u, e.v));
            }
        }
    }
    return v;
}

EdgeList image_edges(const ColouredGraph &H, const Embedding &phi)
{
    EdgeList out;
    out.reserve(H.edge_count());
    for (auto &e : H.edges())
        out.push_back(make_edge(phi[e.u], phi[e.v]));
    return out;
}

PackingVerdict check_packing(const std::vector<EdgeList> &copies, const ColouredGraph &G)
{
    PackingVerdict pv;
    auto keys = copy_keys(copies, G, pv.verdict);
    for (auto &o : kernels::parallel::copy_overlaps(keys, 0))
        pv.verdict.add("overlap", "copies " + std::to_string(o.i) + "," + std::to_string(o.j) + " share " +
                                      std::to_string(o.shared) + " edge(s), first " + key_str(o.first_edge));
    std::vector<std::uint64_t> all;
    for (auto &k : keys)
        all.insert(all.end(), k.begin(), k.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    pv.covered_edges = all.size();
    pv.decomposition = pv.verdict.ok && !copies.empty() && pv.covered_edges == G.edge_count();
    return pv;
}

Verdict check_odc(const std::vector<EdgeList> &copies, const ColouredGraph &G)
{
    Verdict v;
    auto keys = copy_keys(copies, G, v);
    std::vector<std::uint64_t> all;
    for (auto &k : keys)
        all.insert(all.end(), k.begin(), k.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i])
            ++j;
        if (j - i > 2)
            v.add("multiplicity", "edge " + key_str(all[i]) + " in " + std::to_string(j - i) + " copies");
        i = j;
    }
    for (auto &o : kernels::parallel::copy_overlaps(keys, 1))
        v.add("pair-intersection", "copies " + std::to_string(o.i) + "," + std::to_string(o.j) + " share " +
                                       std::to_string(o.shared) + " edges");
    return v;
}

Verdict check_harmonious(const ColouredGraph &H, const std::vector<std::uint32_t> &f, const AbelianGroup &group)
{
    Verdict v;
    if (f.size() != H.vertex_count()) {
        v.add("domain", "labelling has " + std::to_string(f.size()) + " entries for " +
                            std::to_string(H.vertex_count()) + " vertices");
        return v;
    }
    for (Vertex x = 0; x < f.size(); ++x)
        if (f[x] >= group.order())
            fail(ErrorKind::InvalidInput, "label " + std::to_string(f[x]) + " of vertex " + std::to_string(x) +
                                              " is not an element of a group of order " +
                                              std::to_string(group.order()));
    std::unordered_map<std::uint32_t, Vertex> owner;
    for (Vertex x = 0; x < f.size(); ++x) {
        auto [it, fresh] = owner.emplace(f[x], x);
        if (!fresh)
            v.add("label-repeat", "vertices " + pair_str(it->second, x) + " share label " + std::to_string(f[x]));
    }
    std::unordered_map<std::uint32_t, EdgeId> sums;
    for (EdgeId e = 0; e < H.edge_count(); ++e) {
        auto [x, y] = H.edge(e);
        auto s = group.op(f[x], f[y]);
        auto [it, fresh] = sums.emplace(s, e);
        if (!fresh) {
            auto o = H.edge(it->second);
            v.add("sum-repeat", "edges " + pair_str(o.u, o.v) + " and " + pair_str(x, y) + " both sum to " +
                                    std::to_string(s));
        }
    }
    return v;
}

namespace {

class RainbowSearch {
  public:
    RainbowSearch(const ColouredGraph &H, const ColouredGraph &G, const std::vector<int> &hp,
                  const std::vector<int> &gp, std::uint64_t cap)
        : H_(H), G_(G), hp_(hp), gp_(gp), cap_(cap), phi_(H.vertex_count(), kNone), used_(G.vertex_count(), 0),
          colour_used_(G.colour_count(), 0)
    {
        order_vertices();
    }

    std::optional<Embedding> run()
    {
        if (H_.vertex_count() > G_.vertex_count())
            return std::nullopt;
        if (place(0))
            return phi_;
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

  private:
    static constexpr Vertex kNone = ~Vertex(0);

    // most constrained first: next vertex has the most already ordered neighbours
    void order_vertices()
    {
        const auto n = H_.vertex_count();
        std::vector<char> done(n, 0);
        std::vector<std::size_t> links(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            Vertex best = kNone;
            for (Vertex x = 0; x < n; ++x)
                if (!done[x] && (best == kNone || links[x] > links[best] ||
                                 (links[x] == links[best] && H_.degree(x) > H_.degree(best))))
                    best = x;
            done[best] = 1;
            order_.push_back(best);
            for (auto y : H_.neighbours(best))
                ++links[y];
        }
    }

    bool place(std::size_t i)
    {
        if (i == order_.size())
            return true;
        Vertex x = order_[i];
        Vertex anchor = kNone;
        for (auto y : H_.neighbours(x))
            if (phi_[y] != kNone) {
                anchor = phi_[y];
                break;
            }
        auto try_vertex = [&](Vertex v) {
            if (used_[v] || (!hp_.empty() && hp_[x] != gp_[v]))
                return false;
            if (++nodes_ > cap_)
                fail(ErrorKind::CapExceeded, "exhaustive search passed " + std::to_string(cap_) + " nodes");
            std::vector<Colour> taken;
            bool ok = true;
            for (auto y : H_.neighbours(x)) {
                if (phi_[y] == kNone)
                    continue;
                auto e = G_.find_edge(v, phi_[y]);
                if (!e) {
                    ok = false;
                    break;
                }
                for (auto c : G_.colours(*e)) {
                    if (colour_used_[c]) {
                        ok = false;
                        break;
                    }
                    colour_used_[c] = 1;
                    taken.push_back(c);
                }
                if (!ok)
                    break;
            }
            if (ok) {
                phi_[x] = v;
                used_[v] = 1;
                if (place(i + 1))
                    return true;
                phi_[x] = kNone;
                used_[v] = 0;
            }
            for (auto c : taken)
                colour_used_[c] = 0;
            return false;
        };
        if (anchor != kNone) {
            for (auto v : G_.neighbours(anchor))
                if (try_vertex(v))
                    return true;
        } else {
            for (Vertex v = 0; v < G_.vertex_count(); ++v)
                if (try_vertex(v))
                    return true;
        }
        return false;
    }

    const ColouredGraph &H_;
    const ColouredGraph &G_;
    const std::vector<int> &hp_;
    const std::vector<int> &gp_;
    std::uint64_t cap_;
    Embedding phi_;
    std::vector<char> used_;
    std::vector<char> colour_used_;
    std::vector<Vertex> order_;
    std::uint64_t nodes_ = 0;
};

} // namespace

SearchResult exhaustive_rainbow_search(const ColouredGraph &H, const ColouredGraph &G, const std::vector<int> &h_part,
                                       const std::vector<int> &g_part, const SearchLimits &limits)
{
    if (h_part.empty() != g_part.empty())
        fail(ErrorKind::Precondition, "cluster constraints need parts for both graphs");
    if (!h_part.empty() && (h_part.size() != H.vertex_count() || g_part.size() != G.vertex_count()))
        fail(ErrorKind::Precondition, "part vectors do not match the vertex counts");
    RainbowSearch search(H, G, h_part, g_part, limits.node_cap);
    SearchResult res;
    res.embedding = search.run();
    res.nodes = search.nodes();
    return res;
}

} // namespace rainbow
