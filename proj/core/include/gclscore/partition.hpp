#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gclscore {

class Graph;

/// Disjoint clusters covering all vertices. Cluster ids are dense
/// (0..cluster_count-1) and every cluster is non-empty.
struct Partition {
    std::vector<int> assignment;  // per-vertex cluster id
    int cluster_count = 0;

    /// Renumbers arbitrary non-negative labels to dense ids in
    /// first-appearance order (by vertex index) and drops gaps.
    static Partition from_assignment(std::vector<int> raw);

    static Partition singletons(int n);

    std::vector<std::vector<int>> clusters() const;
};

/// Partition file: one "label cluster_id" pair per line, '#' comments.
/// Lines naming vertices absent from the graph are ignored (they may
/// belong to parts of a raw dataset that preprocessing removed); every
/// graph vertex must be assigned exactly once.
Partition parse_partition(std::istream& in, const Graph& g);
Partition parse_partition(const std::string& text, const Graph& g);

void write_partition(std::ostream& out, const Partition& p,
                     const std::vector<std::string>& labels);

}  // namespace gclscore
