// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rainbow {

Colour ColourTable::intern(std::string_view label)
{
    std::string key(label);
    auto it = ids_.find(key);
    if (it != ids_.end())
        return it->second;
    Colour id = Colour(labels_.size());
    labels_.push_back(key);
    ids_.emplace(std::move(key), id);
    return id;
}

std::optional<Colour> ColourTable::find(std::string_view label) const
{
    auto it = ids_.find(std::string(label));
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

std::string ColourTable::label(Colour c) const
{
    if (c < labels_.size())
        return labels_[c];
    return std::to_string(c);
}

std::size_t ColouredGraph::max_degree() const
{
    std::size_t best = 0;
    for (Vertex v = 0; v < vertex_count(); ++v)
        best = std::max(best, degree(v));
    return best;
}

std::optional<EdgeId> ColouredGraph::find_edge(Vertex u, Vertex v) const
{
    if (u >= vertex_count() || v >= vertex_count())
        return std::nullopt;
    if (degree(u) > degree(v))
        std::swap(u, v);
    auto ns = neighbours(u);
    auto it = std::lower_bound(ns.begin(), ns.end(), v);
    if (it == ns.end() || *it != v)
        return std::nullopt;
    return incident(u)[it - ns.begin()];
}

Colour ColouredGraph::colour_of(EdgeId e) const
{
    auto cs = colours(e);
    if (cs.size() != 1)
        fail(ErrorKind::Precondition, "edge " + std::to_string(edges_[e].u) + "-" + std::to_string(edges_[e].v) +
                                          " carries " + std::to_string(cs.size()) + " colours, expected 1");
    return cs[0];
}

std::size_t ColouredGraph::colour_degree(Vertex v, Colour a) const
{
    std::size_t k = 0;
    for (auto e : incident(v)) {
        auto cs = colours(e);
        if (std::binary_search(cs.begin(), cs.end(), a))
            ++k;
    }
    return k;
}

bool ColouredGraph::single_coloured() const
{
    for (EdgeId e = 0; e < edge_count(); ++e)
        if (colours(e).size() != 1)
            return false;
    return true;
}

bool operator==(const ColouredGraph &a, const ColouredGraph &b)
{
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        if (a.edge(e) != b.edge(e))
            return false;
        auto ca = a.colours(e), cb = b.colours(e);
        if (ca.size() != cb.size())
            return false;
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (a.colour_label(ca[i]) != b.colour_label(cb[i]))
                return false;
    }
    return true;
}

GraphBuilder::GraphBuilder(std::size_t vertex_count) : n_(vertex_count) {}

void GraphBuilder::add_edge(Vertex u, Vertex v, ColourSet colours)
{
    if (u >= n_ || v >= n_)
        fail(ErrorKind::InvalidInput,
             "edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range for " + std::to_string(n_) +
                 " vertices");
    if (u == v)
        fail(ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(u));
    if (!seen_.insert(edge_key(u, v)).second)
        fail(ErrorKind::InvalidInput, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    std::sort(colours.begin(), colours.end());
    colours.erase(std::unique(colours.begin(), colours.end()), colours.end());
    pending_.push_back({make_edge(u, v), std::move(colours)});
}

ColouredGraph GraphBuilder::build() const
{
    ColouredGraph g;
    std::vector<const Pending *> order;
    order.reserve(pending_.size());
    for (auto &p : pending_)
        order.push_back(&p);
    std::sort(order.begin(), order.end(), [](auto *a, auto *b) { return a->e < b->e; });

    std::size_t m = order.size();
    g.edges_.resize(m);
    g.colour_offsets_.assign(m + 1, 0);
    Colour top = Colour(labels_.size());
    for (std::size_t i = 0; i < m; ++i) {
        g.edges_[i] = order[i]->e;
        g.colour_offsets_[i + 1] = g.colour_offsets_[i] + order[i]->colours.size();
        for (auto c : order[i]->colours)
            top = std::max(top, c + 1);
    }
    g.colours_.reserve(g.colour_offsets_[m]);
    for (auto *p : order)
        g.colours_.insert(g.colours_.end(), p->colours.begin(), p->colours.end());

    // adjacency in CSR form; edges are sorted so each list comes out sorted
    std::vector<std::size_t> deg(n_, 0);
    for (auto &e : g.edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    g.offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(2 * m);
    g.adj_edge_.resize(2 * m);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId i = 0; i < m; ++i) {
        auto [u, v] = g.edges_[i];
        g.adj_[fill[u]] = v;
        g.adj_edge_[fill[u]++] = i;
    }
    for (EdgeId i = 0; i < m; ++i) {
        auto [u, v] = g.edges_[i];
        g.adj_[fill[v]] = u;
        g.adj_edge_[fill[v]++] = i;
    }
    for (std::size_t v = 0; v < n_; ++v) {
        // the second pass appended lower neighbours after higher ones; restore order
        auto b = g.offsets_[v], e = g.offsets_[v + 1];
        std::vector<std::pair<Vertex, EdgeId>> tmp;
        tmp.reserve(e - b);
        for (auto k = b; k < e; ++k)
            tmp.emplace_back(g.adj_[k], g.adj_edge_[k]);
        std::sort(tmp.begin(), tmp.end());
        for (auto k = b; k < e; ++k) {
            g.adj_[k] = tmp[k - b].first;
            g.adj_edge_[k] = tmp[k - b].second;
        }
    }

    g.class_offsets_.assign(std::size_t(top) + 1, 0);
    for (auto c : g.colours_)
        ++g.class_offsets_[c + 1];
    for (std::size_t c = 0; c < top; ++c)
        g.class_offsets_[c + 1] += g.class_offsets_[c];
    g.class_edges_.resize(g.colours_.size());
    std::vector<std::size_t> cfill(g.class_offsets_.begin(), g.class_offsets_.end() - 1);
    for (EdgeId i = 0; i < m; ++i)
        for (auto k = g.colour_offsets_[i]; k < g.colour_offsets_[i + 1]; ++k)
            g.class_edges_[cfill[g.colours_[k]]++] = i;

    g.labels_ = labels_;
    return g;
}

// --- text format -----------------------------------------------------------

namespace {

std::vector<std::string_view> tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i >= line.size())
            break;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_uint(std::string_view s, std::uint64_t &out)
{
    if (s.empty() || s.size() > 18)
        return false;
    std::uint64_t x = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            return false;
        x = x * 10 + std::uint64_t(ch - '0');
    }
    out = x;
    return true;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string &msg)
{
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
}

} // namespace

ColouredGraph parse_coloured_graph(std::istream &in, const LoadOptions &opts)
{
    std::string line;
    std::size_t line_no = 0;
    std::optional<GraphBuilder> b;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = tokens(line);
        if (tok.empty() || tok[0][0] == '#')
            continue;
        if (!b) {
            std::uint64_t n;
            if (tok.size() != 2 || tok[0] != "vertices" || !parse_uint(tok[1], n))
                parse_fail(line_no, "expected header 'vertices N'");
            b.emplace(std::size_t(n));
            continue;
        }
        std::uint64_t u, v;
        if (tok.size() < 2 || tok.size() > 3 || !parse_uint(tok[0], u) || !parse_uint(tok[1], v))
            parse_fail(line_no, "expected 'u v colour'");
        if (opts.require_colour && tok.size() != 3)
            parse_fail(line_no, "host edge without a colour");
        ColourSet cs;
        if (tok.size() == 3)
            cs.push_back(b->labels().intern(tok[2]));
        try {
            b->add_edge(Vertex(u), Vertex(v), std::move(cs));
        } catch (const Error &e) {
            fail(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!b)
        parse_fail(line_no, "missing 'vertices N' header");
    return b->build();
}

ColouredGraph load_coloured_graph(const std::string &path, const LoadOptions &opts)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open " + path);
    return parse_coloured_graph(in, opts);
}

void write_coloured_graph(const ColouredGraph &g, std::ostream &out)
{
    out << "vertices " << g.vertex_count() << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto cs = g.colours(e);
        if (cs.size() > 1)
            fail(ErrorKind::Precondition, "edge-list format holds at most one colour per edge");
        out << g.edge(e).u << ' ' << g.edge(e).v;
        if (!cs.empty())
            out << ' ' << g.colour_label(cs[0]);
        out << '\n';
    }
}

std::string to_text(const ColouredGraph &g)
{
    std::ostringstream os;
    write_coloured_graph(g, os);
    return os.str();
}

void write_file_atomic(const std::string &path, const std::string &contents)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::InvalidInput, "cannot write " + tmp);
        out << contents;
        out.flush();
        if (!out)
            fail(ErrorKind::InvalidInput, "write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorKind::InvalidInput, "cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void save_coloured_graph(const ColouredGraph &g, const std::string &path) { write_file_atomic(path, to_text(g)); }

// --- helpers ----------------------------------------------------------------

ColouredGraph relabel(const ColouredGraph &g, const std::vector<Vertex> &perm)
{
    GraphBuilder b(g.vertex_count());
    b.set_labels(g.labels());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto cs = g.colours(e);
        b.add_edge(perm[g.edge(e).u], perm[g.edge(e).v], ColourSet(cs.begin(), cs.end()));
    }
    return b.build();
}

ColouredGraph pad_vertices(const ColouredGraph &g, std::size_t vertex_count)
{
    if (vertex_count < g.vertex_count())
        fail(ErrorKind::Precondition, "cannot pad to fewer vertices");
    GraphBuilder b(vertex_count);
    b.set_labels(g.labels());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto cs = g.colours(e);
        b.add_edge(g.edge(e).u, g.edge(e).v, ColourSet(cs.begin(), cs.end()));
    }
    return b.build();
}

std::vector<int> part_index(std::size_t vertex_count, const std::vector<VertexSet> &parts)
{
    std::vector<int> idx(vertex_count, -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (auto v : parts[i]) {
            if (v >= vertex_count)
                fail(ErrorKind::Precondition, "part vertex " + std::to_string(v) + " out of range");
            if (idx[v] != -1)
                fail(ErrorKind::Precondition, "vertex " + std::to_string(v) + " lies in two parts");
            idx[v] = int(i);
        }
    return idx;
}

std::size_t edges_between(const ColouredGraph &g, const VertexSet &S, const VertexSet &T)
{
    std::vector<char> inT(g.vertex_count(), 0);
    for (auto t : T)
        inT[t] = 1;
    std::size_t k = 0;
    for (auto s : S)
        for (auto w : g.neighbours(s))
            k += inT[w];
    return k;
}

bool is_independent(const ColouredGraph &g, const VertexSet &S)
{
    std::vector<char> in(g.vertex_count(), 0);
    for (auto s : S)
        in[s] = 1;
    for (auto s : S)
        for (auto w : g.neighbours(s))
            if (in[w])
                return false;
    return true;
}

} // namespace rainbow
