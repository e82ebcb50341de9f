#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gclscore {

class Graph;

/// Vertex coordinates in R^k, row i aligned with graph internal index i.
/// All entries finite. Immutable after construction.
class Embedding {
public:
    Embedding() = default;
    Embedding(int dim, std::vector<double> coords);

    int dim() const { return dim_; }
    int size() const { return dim_ == 0 ? 0 : static_cast<int>(coords_.size()) / dim_; }
    const double* row(int v) const { return coords_.data() + static_cast<std::size_t>(v) * dim_; }
    const std::vector<double>& coords() const { return coords_; }

private:
    int dim_ = 0;
    std::vector<double> coords_;  // row-major n*dim
};

struct DistanceExtremes {
    double d_min = 0.0;
    double d_max = 0.0;
};

/// Reads "label c_1 ... c_k" lines (the format node2vec and friends emit),
/// with an optional leading "n k" header; the header is recognized when the
/// first non-comment line holds exactly two integer tokens and the first
/// equals the graph's vertex count. Rows are reordered to graph index
/// order. Lines for labels the graph does not contain are skipped, so a
/// file produced for a raw dataset still loads after preprocessing trimmed
/// the graph. Missing vertices, duplicate rows, dimension mismatches and
/// non-numeric or non-finite coordinates are errors.
Embedding parse_embedding(std::istream& in, const Graph& g);
Embedding parse_embedding(const std::string& text, const Graph& g);

void write_embedding(std::ostream& out, const Embedding& e,
                     const std::vector<std::string>& labels);

/// Euclidean distance between the points of vertices i and j.
double distance(const Embedding& e, int i, int j);

/// Min/max distance over all unordered vertex pairs (full O(n^2) scan).
/// Throws std::invalid_argument when fewer than two points are stored.
DistanceExtremes distance_extremes(const Embedding& e);

}  // namespace gclscore
