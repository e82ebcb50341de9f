#include "gclscore/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gclscore/errors.hpp"
#include "json.hpp"

namespace gclscore {

Graph Graph::from_edges(std::vector<std::string> labels,
                        const std::vector<std::pair<int, int>>& raw_edges) {
    Graph g;
    g.labels_ = std::move(labels);
    const int n = static_cast<int>(g.labels_.size());
    g.adjacency_.assign(n, {});
    for (auto [u, v] : raw_edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) continue;  // simple graph: no loops
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    std::size_t m = 0;
    for (auto& adj : g.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        m += adj.size();
    }
    g.edge_count_ = m / 2;
    return g;
}

bool Graph::has_edge(int u, int v) const {
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

bool Graph::connected() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adjacency_[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
    }
    return reached == n;
}

namespace {

bool comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#';
    }
    return true;
}

}  // namespace

Graph parse_edge_list(std::istream& in, bool directed_hint) {
    (void)directed_hint;  // both conventions symmetrize to the same simple graph
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index_of;
    std::vector<std::pair<int, int>> edges;

    auto intern = [&](const std::string& token) {
        auto [it, inserted] = index_of.try_emplace(token, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b) || (ls >> extra))
            throw ParseError("edge list line " + std::to_string(line_no) +
                                 ": expected exactly two vertex tokens, got \"" + line + "\"",
                             line_no);
        edges.emplace_back(intern(a), intern(b));
    }
    return Graph::from_edges(std::move(labels), edges);
}

Graph parse_edge_list(const std::string& text, bool directed_hint) {
    std::istringstream in(text);
    return parse_edge_list(in, directed_hint);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::string graph_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> deg(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
    return deg;
}

Graph largest_connected_component(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("largest_connected_component: empty graph");

    std::vector<int> component(n, -1);
    std::vector<int> comp_size;
    for (int start = 0; start < n; ++start) {
        if (component[start] >= 0) continue;
        const int c = static_cast<int>(comp_size.size());
        int size = 0;
        std::queue<int> q;
        q.push(start);
        component[start] = c;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            ++size;
            for (int v : g.neighbors(u))
                if (component[v] < 0) {
                    component[v] = c;
                    q.push(v);
                }
        }
        comp_size.push_back(size);
    }

    // components are discovered in order of their smallest vertex, so the
    // first maximum implements the smallest-minimum-index tie-break
    int best = 0;
    for (int c = 1; c < static_cast<int>(comp_size.size()); ++c)
        if (comp_size[c] > comp_size[best]) best = c;

    std::vector<int> new_index(n, -1);
    std::vector<std::string> labels;
    labels.reserve(comp_size[best]);
    for (int v = 0; v < n; ++v)
        if (component[v] == best) {
            new_index[v] = static_cast<int>(labels.size());
            labels.push_back(g.label(v));
        }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (component[u] == best && component[v] == best)
            edges.emplace_back(new_index[u], new_index[v]);
    return Graph::from_edges(std::move(labels), edges);
}

}  // namespace gclscore
