#include "gclscore/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gclscore/errors.hpp"
#include "gclscore/graph.hpp"

namespace gclscore {

Embedding::Embedding(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ <= 0) throw std::invalid_argument("embedding dimension must be positive");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("coordinate count is not a multiple of the dimension");
    for (double c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("embedding holds a non-finite coordinate");
}

namespace {

bool comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#';
    }
    return true;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    return toks;
}

bool parse_int(const std::string& s, long& out) {
    try {
        std::size_t pos = 0;
        out = std::stol(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

Embedding parse_embedding(std::istream& in, const Graph& g) {
    const int n = g.vertex_count();
    std::unordered_map<std::string, int> index_of;
    index_of.reserve(n);
    for (int v = 0; v < n; ++v) index_of.emplace(g.label(v), v);

    int dim = -1;          // from header or first data row
    long header_dim = -1;  // validated against rows when present
    bool first_content = true;

    std::vector<double> coords;
    std::vector<char> filled(n, 0);
    int rows = 0;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (comment_or_blank(line)) continue;
        auto toks = tokenize(line);

        if (first_content) {
            first_content = false;
            // "n k" header: two integers with the vertex count first
            long a = 0, b = 0;
            if (toks.size() == 2 && parse_int(toks[0], a) && parse_int(toks[1], b) &&
                a == n && b >= 1) {
                header_dim = b;
                continue;
            }
        }

        if (toks.size() < 2)
            throw ParseError("embedding line " + std::to_string(line_no) +
                                 ": expected a label followed by coordinates",
                             line_no);
        const std::string& label = toks[0];
        const int k = static_cast<int>(toks.size()) - 1;
        if (dim < 0) {
            dim = k;
            if (header_dim >= 0 && header_dim != dim)
                throw ParseError("embedding line " + std::to_string(line_no) + ": row has " +
                                     std::to_string(dim) + " coordinates but header announced " +
                                     std::to_string(header_dim),
                                 line_no);
            coords.assign(static_cast<std::size_t>(n) * dim, 0.0);
        } else if (k != dim) {
            throw ParseError("embedding line " + std::to_string(line_no) +
                                 ": inconsistent dimension (" + std::to_string(k) + " vs " +
                                 std::to_string(dim) + ")",
                             line_no);
        }

        // rows for vertices outside the graph (e.g. trimmed by preprocessing) are skipped
        auto it = index_of.find(label);
        if (it == index_of.end()) continue;
        const int v = it->second;
        if (filled[v])
            throw ParseError("embedding line " + std::to_string(line_no) +
                                 ": duplicate row for vertex " + label,
                             line_no);
        filled[v] = 1;
        ++rows;
        for (int c = 0; c < dim; ++c) {
            double x = 0.0;
            if (!parse_double(toks[c + 1], x) || !std::isfinite(x))
                throw ParseError("embedding line " + std::to_string(line_no) +
                                     ": non-numeric coordinate \"" + toks[c + 1] + "\"",
                                 line_no);
            coords[static_cast<std::size_t>(v) * dim + c] = x;
        }
    }

    if (rows < n)
        for (int v = 0; v < n; ++v)
            if (!filled[v])
                throw std::invalid_argument("vertex " + g.label(v) + " has no embedding");
    if (dim < 0) throw std::invalid_argument("embedding stream holds no coordinate rows");
    return Embedding(dim, std::move(coords));
}

Embedding parse_embedding(const std::string& text, const Graph& g) {
    std::istringstream in(text);
    return parse_embedding(in, g);
}

void write_embedding(std::ostream& out, const Embedding& e,
                     const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != e.size())
        throw std::invalid_argument("label count does not match embedding size");
    out << e.size() << ' ' << e.dim() << '\n';
    char buf[64];
    for (int v = 0; v < e.size(); ++v) {
        out << labels[v];
        const double* row = e.row(v);
        for (int c = 0; c < e.dim(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

double distance(const Embedding& e, int i, int j) {
    const double* a = e.row(i);
    const double* b = e.row(j);
    double sq = 0.0;
    for (int c = 0; c < e.dim(); ++c) {
        const double d = a[c] - b[c];
        sq += d * d;
    }
    return std::sqrt(sq);
}

DistanceExtremes distance_extremes(const Embedding& e) {
    const int n = e.size();
    if (n < 2) throw std::invalid_argument("distance_extremes needs at least two points");
    DistanceExtremes ex{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(e, i, j);
            if (d < ex.d_min) ex.d_min = d;
            if (d > ex.d_max) ex.d_max = d;
        }
    return ex;
}

}  // namespace gclscore
