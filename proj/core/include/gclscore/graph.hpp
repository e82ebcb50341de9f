#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gclscore {

/// Undirected simple graph. Vertices are dense internal indices 0..n-1;
/// the external string labels live in a side table. Adjacency lists are
/// sorted, symmetric, loop-free and duplicate-free, so sum(deg) == 2*m.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    Graph() = default;

    /// Builds a simple graph from raw (possibly directed, duplicated,
    /// loopy) index pairs. Self-loops are dropped, duplicates and
    /// reciprocal pairs collapse to one undirected edge.
    static Graph from_edges(std::vector<std::string> labels,
                            const std::vector<std::pair<int, int>>& raw_edges);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    bool has_edge(int u, int v) const;

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// All edges as (u, v) with u < v, ordered lexicographically. This is
    /// the canonical edge order used wherever per-edge data is exchanged
    /// (ECG consensus weights, edge-list serialization).
    std::vector<std::pair<int, int>> edges() const;

    bool connected() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Parses whitespace-separated edge-list text: one edge per line, two
/// vertex tokens, '#' starts a comment line. Labels are registered in
/// first-appearance order. directed_hint documents the source convention;
/// parsing symmetrizes either way, so the resulting graph is identical.
/// Throws ParseError (with line number) when a non-comment line does not
/// hold exactly two tokens.
Graph parse_edge_list(std::istream& in, bool directed_hint = false);
Graph parse_edge_list(const std::string& text, bool directed_hint = false);

/// Inverse of parse_edge_list for simple graphs: "label_u label_v" per
/// line in canonical edge order.
void write_edge_list(std::ostream& out, const Graph& g);

/// {"n":…, "m":…, "edges":[[u,v],…]} with internal indices.
std::string graph_json(const Graph& g);

/// Degree of every vertex, aligned with internal indices.
std::vector<int> degree_sequence(const Graph& g);

/// Vertex-induced subgraph on the largest connected component; among
/// equally large components the one containing the smallest internal
/// index wins. Relative vertex order and labels are preserved.
/// Throws std::invalid_argument on the empty graph.
Graph largest_connected_component(const Graph& g);

}  // namespace gclscore
