// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rainbow/common.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rainbow {

// Interns external colour labels ("5", "red", ...) to dense ids.
class ColourTable {
  public:
    Colour intern(std::string_view label);
    std::optional<Colour> find(std::string_view label) const;
    // ids without a registered label print as their number
    std::string label(Colour c) const;
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Colour> ids_;
};

// Immutable simple graph with an edge set colouring c: E -> 2^C.
// Edges are numbered in lexicographic (min, max) order.
class ColouredGraph {
  public:
    ColouredGraph() = default;

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edges_.size(); }
    // ids in use are < colour_count()
    std::size_t colour_count() const { return class_offsets_.empty() ? 0 : class_offsets_.size() - 1; }

    std::span<const Vertex> neighbours(Vertex v) const
    {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    // edge ids parallel to neighbours(v)
    std::span<const EdgeId> incident(Vertex v) const
    {
        return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const;

    const Edge &edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const { return edges_; }

    std::span<const Colour> colours(EdgeId e) const
    {
        return {colours_.data() + colour_offsets_[e], colours_.data() + colour_offsets_[e + 1]};
    }
    std::span<const EdgeId> colour_class(Colour a) const
    {
        if (a >= colour_count())
            return {};
        return {class_edges_.data() + class_offsets_[a], class_edges_.data() + class_offsets_[a + 1]};
    }
    // e^alpha(G)
    std::size_t colour_size(Colour a) const { return colour_class(a).size(); }

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }
    // the single colour of a host edge; throws if |c(e)| != 1
    Colour colour_of(EdgeId e) const;
    // dg^alpha(v)
    std::size_t colour_degree(Vertex v, Colour a) const;

    bool single_coloured() const;
    bool uncoloured() const { return colours_.empty(); }

    const ColourTable &labels() const { return labels_; }
    std::string colour_label(Colour c) const { return labels_.label(c); }

    friend bool operator==(const ColouredGraph &a, const ColouredGraph &b);

  private:
    friend class GraphBuilder;

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adj_;
    std::vector<EdgeId> adj_edge_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> colour_offsets_;
    std::vector<Colour> colours_;
    std::vector<std::size_t> class_offsets_;
    std::vector<EdgeId> class_edges_;
    ColourTable labels_;
};

class GraphBuilder {
  public:
    explicit GraphBuilder(std::size_t vertex_count);

    // throws InvalidInput on self loops, duplicates and out of range ids
    void add_edge(Vertex u, Vertex v, ColourSet colours = {});
    void add_edge(Vertex u, Vertex v, Colour c) { add_edge(u, v, ColourSet{c}); }
    bool has_edge(Vertex u, Vertex v) const { return seen_.count(edge_key(u, v)) != 0; }
    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return pending_.size(); }

    ColourTable &labels() { return labels_; }
    void set_labels(ColourTable t) { labels_ = std::move(t); }

    ColouredGraph build() const;

  private:
    struct Pending {
        Edge e;
        ColourSet colours;
    };
    std::size_t n_;
    std::vector<Pending> pending_;
    std::unordered_set<std::uint64_t> seen_;
    ColourTable labels_;
};

// --- text format -----------------------------------------------------------

struct LoadOptions {
    // host graphs: every edge line must carry exactly one colour token
    bool require_colour = false;
};

ColouredGraph parse_coloured_graph(std::istream &in, const LoadOptions &opts = {});
ColouredGraph load_coloured_graph(const std::string &path, const LoadOptions &opts = {});
inline ColouredGraph load_host_graph(const std::string &path) { return load_coloured_graph(path, {true}); }
void write_coloured_graph(const ColouredGraph &g, std::ostream &out);
std::string to_text(const ColouredGraph &g);
// writes via a temporary file and rename
void save_coloured_graph(const ColouredGraph &g, const std::string &path);
void write_file_atomic(const std::string &path, const std::string &contents);

// --- small helpers ----------------------------------------------------------

// same edges and colours on a relabelled vertex set: v -> perm[v]
ColouredGraph relabel(const ColouredGraph &g, const std::vector<Vertex> &perm);
// g with extra isolated vertices appended
ColouredGraph pad_vertices(const ColouredGraph &g, std::size_t vertex_count);
// copy of g with every edge coloured by f(edge id)
template <typename F> ColouredGraph recolour(const ColouredGraph &g, F &&f)
{
    GraphBuilder b(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        b.add_edge(g.edge(e).u, g.edge(e).v, f(e));
    return b.build();
}
// subgraph on the same vertex set keeping edges where keep(edge id)
template <typename F> ColouredGraph filter_edges(const ColouredGraph &g, F &&keep)
{
    GraphBuilder b(g.vertex_count());
    b.set_labels(g.labels());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (keep(e)) {
            auto cs = g.colours(e);
            b.add_edge(g.edge(e).u, g.edge(e).v, ColourSet(cs.begin(), cs.end()));
        }
    return b.build();
}

// part index per vertex, -1 where a vertex is in no part; throws on overlap
std::vector<int> part_index(std::size_t vertex_count, const std::vector<VertexSet> &parts);
std::size_t edges_between(const ColouredGraph &g, const VertexSet &S, const VertexSet &T);
bool is_independent(const ColouredGraph &g, const VertexSet &S);

} // namespace rainbow
