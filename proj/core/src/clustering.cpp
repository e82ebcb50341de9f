#include "gclscore/clustering.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gclscore/errors.hpp"
#include "gclscore/random.hpp"

namespace gclscore {

Partition Partition::from_assignment(std::vector<int> raw) {
    Partition p;
    p.assignment.resize(raw.size());
    std::unordered_map<int, int> dense;
    for (std::size_t v = 0; v < raw.size(); ++v) {
        if (raw[v] < 0) throw std::invalid_argument("negative cluster label");
        auto [it, inserted] = dense.try_emplace(raw[v], static_cast<int>(dense.size()));
        p.assignment[v] = it->second;
    }
    p.cluster_count = static_cast<int>(dense.size());
    return p;
}

Partition Partition::singletons(int n) {
    Partition p;
    p.assignment.resize(n);
    std::iota(p.assignment.begin(), p.assignment.end(), 0);
    p.cluster_count = n;
    return p;
}

std::vector<std::vector<int>> Partition::clusters() const {
    std::vector<std::vector<int>> out(cluster_count);
    for (std::size_t v = 0; v < assignment.size(); ++v)
        out[assignment[v]].push_back(static_cast<int>(v));
    return out;
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

Partition parse_partition(std::istream& in, const Graph& g) {
    const int n = g.vertex_count();
    std::unordered_map<std::string, int> index_of;
    index_of.reserve(n);
    for (int v = 0; v < n; ++v) index_of.emplace(g.label(v), v);

    std::vector<int> raw(n, -1);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string label, extra;
        long cluster = 0;
        if (!(ls >> label >> cluster) || (ls >> extra))
            throw ParseError("partition line " + std::to_string(line_no) +
                                 ": expected \"label cluster_id\"",
                             line_no);
        auto it = index_of.find(label);
        if (it == index_of.end()) continue;
        if (raw[it->second] >= 0)
            throw ParseError("partition line " + std::to_string(line_no) +
                                 ": duplicate assignment for vertex " + label,
                             line_no);
        if (cluster < 0)
            throw ParseError("partition line " + std::to_string(line_no) +
                                 ": negative cluster id",
                             line_no);
        raw[it->second] = static_cast<int>(cluster);
    }
    for (int v = 0; v < n; ++v)
        if (raw[v] < 0)
            throw std::invalid_argument("vertex " + g.label(v) + " has no cluster assignment");
    return Partition::from_assignment(std::move(raw));
}

Partition parse_partition(const std::string& text, const Graph& g) {
    std::istringstream in(text);
    return parse_partition(in, g);
}

void write_partition(std::ostream& out, const Partition& p,
                     const std::vector<std::string>& labels) {
    if (labels.size() != p.assignment.size())
        throw std::invalid_argument("label count does not match partition size");
    for (std::size_t v = 0; v < labels.size(); ++v)
        out << labels[v] << ' ' << p.assignment[v] << '\n';
}

namespace {

// Aggregated weighted graph for the Louvain levels. adj holds both
// directions of every inter-vertex edge; loop2[i] is twice the collapsed
// internal weight of super-vertex i, so strength[i] = sum(adj) + loop2[i]
// and two_m = sum(strength).
struct LevelGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> loop2;
    std::vector<double> strength;
    double two_m = 0.0;

    void finalize() {
        strength.assign(n, 0.0);
        for (int v = 0; v < n; ++v) {
            double s = loop2[v];
            for (auto [u, w] : adj[v]) s += w;
            strength[v] = s;
        }
        two_m = std::accumulate(strength.begin(), strength.end(), 0.0);
    }
};

LevelGraph level_from_graph(const Graph& g, const std::vector<double>* edge_weights) {
    LevelGraph lg;
    lg.n = g.vertex_count();
    lg.adj.assign(lg.n, {});
    lg.loop2.assign(lg.n, 0.0);
    std::size_t e = 0;
    for (auto [u, v] : g.edges()) {
        const double w = edge_weights ? (*edge_weights)[e] : 1.0;
        lg.adj[u].emplace_back(v, w);
        lg.adj[v].emplace_back(u, w);
        ++e;
    }
    lg.finalize();
    return lg;
}

// One pass of local moving: vertices visited in a seeded order, repeated
// until a full sweep moves nothing. Among equal gains the lowest cluster
// id wins, which makes the pass a pure function of (graph, seed).
// Returns true when at least one vertex changed cluster.
bool local_moving(const LevelGraph& lg, std::vector<int>& comm, Rng& rng) {
    const int n = lg.n;
    std::vector<double> comm_tot(n, 0.0);
    for (int v = 0; v < n; ++v) comm_tot[comm[v]] += lg.strength[v];

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<double> weight_to(n, 0.0);  // scratch: community -> edge weight from v
    std::vector<int> touched;

    bool any_move = false;
    bool moved = true;
    int sweeps = 0;
    const int max_sweeps = 10 * n + 10;  // exact-tie cycling guard
    while (moved && sweeps < max_sweeps) {
        moved = false;
        ++sweeps;
        for (int v : order) {
            const int old_c = comm[v];
            touched.clear();
            for (auto [u, w] : lg.adj[v]) {
                const int c = comm[u];
                if (weight_to[c] == 0.0) touched.push_back(c);
                weight_to[c] += w;
            }
            if (weight_to[old_c] == 0.0) touched.push_back(old_c);

            comm_tot[old_c] -= lg.strength[v];

            // gain of joining c, up to the constant 1/m factor:
            // weight_to[c] - strength_v * tot_c / two_m
            int best_c = old_c;
            double best_gain = weight_to[old_c] - lg.strength[v] * comm_tot[old_c] / lg.two_m;
            std::sort(touched.begin(), touched.end());
            for (int c : touched) {
                if (c == old_c) continue;
                const double gain = weight_to[c] - lg.strength[v] * comm_tot[c] / lg.two_m;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                } else if (gain == best_gain && c < best_c) {
                    best_c = c;
                }
            }

            comm_tot[best_c] += lg.strength[v];
            if (best_c != old_c) {
                comm[v] = best_c;
                moved = true;
                any_move = true;
            }
            for (int c : touched) weight_to[c] = 0.0;
        }
    }
    return any_move;
}

// Renumber communities densely in order of their smallest member.
int compress(std::vector<int>& comm) {
    std::unordered_map<int, int> dense;
    for (int& c : comm) {
        auto [it, inserted] = dense.try_emplace(c, static_cast<int>(dense.size()));
        c = it->second;
    }
    return static_cast<int>(dense.size());
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& comm, int n_comm) {
    LevelGraph out;
    out.n = n_comm;
    out.adj.assign(n_comm, {});
    out.loop2.assign(n_comm, 0.0);
    std::vector<std::unordered_map<int, double>> acc(n_comm);
    for (int v = 0; v < lg.n; ++v) {
        out.loop2[comm[v]] += lg.loop2[v];
        for (auto [u, w] : lg.adj[v]) {
            const int cv = comm[v], cu = comm[u];
            if (cv == cu) {
                out.loop2[cv] += w;  // both directions arrive here: contributes 2w total
            } else {
                acc[cv][cu] += w;
            }
        }
    }
    for (int c = 0; c < n_comm; ++c) {
        auto& list = out.adj[c];
        list.assign(acc[c].begin(), acc[c].end());
        std::sort(list.begin(), list.end());  // deterministic iteration order
    }
    out.finalize();
    return out;
}

Partition louvain_impl(const Graph& g, const std::vector<double>* edge_weights,
                       std::uint64_t seed) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("louvain: graph has no edges to cluster");
    LevelGraph lg = level_from_graph(g, edge_weights);

    // assignment of original vertices through all levels so far
    std::vector<int> flat(g.vertex_count());
    std::iota(flat.begin(), flat.end(), 0);

    for (int level = 0;; ++level) {
        Rng rng(derive_seed(seed, seed_stream::kLouvainLevel, level));
        std::vector<int> comm(lg.n);
        std::iota(comm.begin(), comm.end(), 0);
        const bool improved = local_moving(lg, comm, rng);
        if (!improved) break;
        const int n_comm = compress(comm);
        for (int& c : flat) c = comm[c];
        if (n_comm == lg.n) break;
        lg = aggregate(lg, comm, n_comm);
        if (n_comm == 1) break;
    }
    return Partition::from_assignment(std::move(flat));
}

}  // namespace

Partition louvain(const Graph& g, std::uint64_t seed) { return louvain_impl(g, nullptr, seed); }

Partition louvain_weighted(const Graph& g, const std::vector<double>& edge_weights,
                           std::uint64_t seed) {
    if (edge_weights.size() != g.edge_count())
        throw std::invalid_argument("louvain_weighted: one weight per edge required");
    return louvain_impl(g, &edge_weights, seed);
}

Partition louvain_one_level(const Graph& g, std::uint64_t seed) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("louvain: graph has no edges to cluster");
    LevelGraph lg = level_from_graph(g, nullptr);
    Rng rng(derive_seed(seed, seed_stream::kLouvainLevel, 0));
    std::vector<int> comm(lg.n);
    std::iota(comm.begin(), comm.end(), 0);
    local_moving(lg, comm, rng);
    return Partition::from_assignment(std::move(comm));
}

std::vector<double> ecg_vote_weights(const Graph& g, int ensemble_size, std::uint64_t seed,
                                     double w_min) {
    if (ensemble_size < 1) throw std::invalid_argument("ecg: ensemble_size must be >= 1");
    const auto edges = g.edges();
    std::vector<int> votes(edges.size(), 0);
    for (int pass = 0; pass < ensemble_size; ++pass) {
        Partition p = louvain_one_level(g, derive_seed(seed, seed_stream::kEcgPass, pass));
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (p.assignment[edges[e].first] == p.assignment[edges[e].second]) ++votes[e];
    }
    std::vector<double> weights(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
        weights[e] = std::max(w_min, static_cast<double>(votes[e]) / ensemble_size);
    return weights;
}

Partition ecg(const Graph& g, int ensemble_size, std::uint64_t seed) {
    const auto weights = ecg_vote_weights(g, ensemble_size, seed);
    return louvain_weighted(g, weights, derive_seed(seed, seed_stream::kEcgFinal));
}

double modularity(const Graph& g, const Partition& p) {
    if (p.assignment.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("modularity: partition does not cover the vertex set");
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    std::vector<long long> internal(p.cluster_count, 0);
    std::vector<long long> volume(p.cluster_count, 0);
    for (int v = 0; v < g.vertex_count(); ++v) volume[p.assignment[v]] += g.degree(v);
    for (auto [u, v] : g.edges())
        if (p.assignment[u] == p.assignment[v]) ++internal[p.assignment[u]];
    double q = 0.0;
    for (int c = 0; c < p.cluster_count; ++c) {
        const double vol = static_cast<double>(volume[c]) / (2.0 * m);
        q += static_cast<double>(internal[c]) / m - vol * vol;
    }
    return q;
}

std::vector<double> community_strength(const Graph& g, const Partition& p) {
    if (p.assignment.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("community_strength: partition does not cover the vertex set");
    std::vector<long long> internal(p.cluster_count, 0);
    std::vector<long long> external(p.cluster_count, 0);
    for (auto [u, v] : g.edges()) {
        const int cu = p.assignment[u], cv = p.assignment[v];
        if (cu == cv) {
            ++internal[cu];
        } else {
            ++external[cu];
            ++external[cv];
        }
    }
    std::vector<double> ratio(p.cluster_count, 0.0);
    for (int c = 0; c < p.cluster_count; ++c) {
        const long long denom = 2 * internal[c] + external[c];
        ratio[c] = denom == 0 ? 0.0 : 2.0 * static_cast<double>(internal[c]) / static_cast<double>(denom);
    }
    return ratio;
}

}  // namespace gclscore
