// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/pipeline.hpp"

#include "rainbow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace rainbow {

namespace {

constexpr std::uint64_t kEquitableStream = 0xe91;
constexpr std::uint64_t kRefineStream = 0x2ef;

// count of neighbours of v in each class
struct ClassCounts {
    const ColouredGraph &h;
    std::vector<int> &cls;
    std::size_t nbrs_in(Vertex v, int c) const
    {
        std::size_t k = 0;
        for (auto w : h.neighbours(v))
            k += cls[w] == c;
        return k;
    }
};

// one try: greedy colouring in random order, then move vertices along
// class paths until sizes differ by at most one
bool equitable_try(const ColouredGraph &h, std::size_t k, Rng &rng, std::vector<int> &cls)
{
    const auto n = h.vertex_count();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    cls.assign(n, -1);
    std::vector<std::size_t> size(k, 0);
    const std::size_t cap = (n + k - 1) / k;
    for (auto v : order) {
        std::vector<char> blocked(k, 0);
        for (auto w : h.neighbours(v))
            if (cls[w] >= 0)
                blocked[cls[w]] = 1;
        int best = -1;
        for (std::size_t c = 0; c < k; ++c)
            if (!blocked[c] && (best < 0 || size[c] < size[best]))
                best = int(c);
        if (best < 0)
            return false;
        cls[v] = best;
        ++size[best];
    }
    ClassCounts cc{h, cls};
    const std::size_t max_moves = 4 * n * k + 16;
    for (std::size_t move = 0; move < max_moves; ++move) {
        auto [lo, hi] = std::minmax_element(size.begin(), size.end());
        if (*hi - *lo <= 1 && *hi <= cap)
            return true;
        const int small = int(lo - size.begin());
        // BFS over classes backwards from the smallest: C reaches D when
        // some vertex of C has no neighbour in D
        std::vector<int> next(k, -2);
        std::vector<Vertex> mover(k, 0);
        next[small] = -1;
        std::deque<int> q{small};
        int found = -1;
        while (!q.empty() && found < 0) {
            int d = q.front();
            q.pop_front();
            for (Vertex v = 0; v < n && found < 0; ++v) {
                int c = cls[v];
                if (next[c] != -2 || cc.nbrs_in(v, d) != 0)
                    continue;
                next[c] = d;
                mover[c] = v;
                if (size[c] > size[small] + 1)
                    found = c;
                else
                    q.push_back(c);
            }
        }
        if (found < 0)
            return false;
        // execute from the sink end so every move stays valid
        std::vector<int> path;
        for (int c = found; c != small; c = next[c])
            path.push_back(c);
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            int c = *it;
            Vertex v = mover[c];
            if (cls[v] != c || cc.nbrs_in(v, next[c]) != 0)
                return false;
            cls[v] = next[c];
        }
        --size[found];
        ++size[small];
    }
    return false;
}

} // namespace

std::vector<VertexSet> equitable_partition(const ColouredGraph &h, std::size_t k, std::uint64_t seed)
{
    const auto n = h.vertex_count();
    if (k == 0 || k > n)
        fail(ErrorKind::Precondition, "equitable partition needs 1 <= k <= |V| (k=" + std::to_string(k) +
                                          ", |V|=" + std::to_string(n) + ")");
    if (h.max_degree() >= k)
        fail(ErrorKind::Precondition, "equitable partition needs Delta < k (Delta=" +
                                          std::to_string(h.max_degree()) + ", k=" + std::to_string(k) + ")");
    std::vector<int> cls;
    for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
        Rng rng(derive_seed(seed, kEquitableStream, attempt));
        if (!equitable_try(h, k, rng, cls))
            continue;
        std::vector<VertexSet> parts(k);
        for (Vertex v = 0; v < n; ++v)
            parts[cls[v]].push_back(v);
        // larger classes first so callers get a canonical order
        std::stable_sort(parts.begin(), parts.end(), [](auto &a, auto &b) { return a.size() > b.size(); });
        return parts;
    }
    fail(ErrorKind::RetriesExhausted, "equitable partition restarts exhausted", "equitable_partition");
}

ColouredGraph square_on(const ColouredGraph &h, const VertexSet &S)
{
    std::vector<int> pos(h.vertex_count(), -1);
    for (std::size_t i = 0; i < S.size(); ++i)
        pos[S[i]] = int(i);
    GraphBuilder b(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        auto add = [&](Vertex w) {
            if (pos[w] > int(i) && !b.has_edge(Vertex(i), Vertex(pos[w])))
                b.add_edge(Vertex(i), Vertex(pos[w]));
        };
        for (auto w : h.neighbours(S[i])) {
            add(w);
            for (auto z : h.neighbours(w))
                add(z);
        }
    }
    return b.build();
}

RefinedPartition refine_partition(const BlowUpInstance &inst, double gamma, std::uint64_t seed)
{
    validate_instance(inst);
    const std::size_t Delta = std::max<std::size_t>(1, std::max(inst.params.Delta, inst.H.max_degree()));
    const std::size_t k = Delta * Delta;
    RefinedPartition out;
    const double n = inst.cluster_size();
    out.floor = std::size_t(std::ceil(std::pow(gamma, 4) * n / double(k) - 1e-9));

    for (std::size_t i = 0; i < inst.r(); ++i) {
        auto &Xi = inst.X[i];
        auto sq = square_on(inst.H, Xi);
        const std::size_t parts = std::min(k, Xi.size());
        if (parts == 0)
            continue;
        auto classes = equitable_partition(sq, parts, derive_seed(seed, kRefineStream, i));
        // random split of V_i into the same sizes
        auto Vi = inst.V[i];
        Rng rng(derive_seed(seed, kRefineStream + 1, i));
        rng.shuffle(Vi);
        std::size_t at = 0;
        for (auto &c : classes) {
            VertexSet xs, vs(Vi.begin() + long(at), Vi.begin() + long(at + c.size()));
            for (auto p : c)
                xs.push_back(Xi[p]);
            at += c.size();
            std::sort(xs.begin(), xs.end());
            std::sort(vs.begin(), vs.end());
            out.X.push_back(std::move(xs));
            out.V.push_back(std::move(vs));
            out.parent.push_back(i);
        }
    }

    // pad every pair of refined classes (intra cluster pairs included) to a
    // matching of at least `floor` edges
    GraphBuilder b(inst.H.vertex_count());
    for (auto &e : inst.H.edges())
        b.add_edge(e.u, e.v);
    auto cls = part_index(inst.H.vertex_count(), out.X);
    Rng rng(derive_seed(seed, kRefineStream + 2));
    const auto m = out.X.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = a + 1; c < m; ++c) {
            auto matched = [&](Vertex x, std::size_t other) {
                for (auto w : inst.H.neighbours(x))
                    if (std::size_t(cls[w]) == other)
                        return true;
                for (auto &e : out.padding)
                    if ((e.u == x && std::size_t(cls[e.v]) == other) || (e.v == x && std::size_t(cls[e.u]) == other))
                        return true;
                return false;
            };
            std::size_t have = 0;
            for (auto x : out.X[a])
                have += matched(x, c);
            if (have >= out.floor)
                continue;
            VertexSet fa, fc;
            for (auto x : out.X[a])
                if (!matched(x, c))
                    fa.push_back(x);
            for (auto y : out.X[c])
                if (!matched(y, a))
                    fc.push_back(y);
            rng.shuffle(fa);
            rng.shuffle(fc);
            for (std::size_t q = 0; q < std::min(fa.size(), fc.size()) && have < out.floor; ++q, ++have) {
                out.padding.push_back(make_edge(fa[q], fc[q]));
                b.add_edge(fa[q], fc[q]);
            }
        }
    std::sort(out.padding.begin(), out.padding.end());
    out.H_padded = b.build();
    return out;
}

} // namespace rainbow
