#pragma once

// Shared helpers and independent oracles for the test suites. Oracles here
// deliberately avoid the library's own code paths.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef GCLSCORE_CLI_PATH
#include <sys/wait.h>
#include <unistd.h>
#endif

#include "gclscore/clustering.hpp"
#include "gclscore/graph.hpp"

namespace testsupport {

#ifndef GCLSCORE_TEST_DATA_DIR
#error "GCLSCORE_TEST_DATA_DIR must point at tests/data"
#endif

inline std::string data_path(const std::string& name) {
    return std::string(GCLSCORE_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline gclscore::Graph load_karate() {
    std::ifstream in(data_path("karate.edges"));
    return gclscore::parse_edge_list(in);
}

inline gclscore::Partition load_karate_factions(const gclscore::Graph& g) {
    std::ifstream in(data_path("karate_factions.partition"));
    return gclscore::parse_partition(in, g);
}

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline gclscore::Graph two_triangles_bridge() {
    return gclscore::parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n");
}

inline gclscore::Graph complete_graph(int n) {
    std::ostringstream ss;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) ss << i << ' ' << j << '\n';
    return gclscore::parse_edge_list(ss.str());
}

inline gclscore::Graph star_graph(int leaves) {
    std::ostringstream ss;
    for (int i = 1; i <= leaves; ++i) ss << "0 " << i << '\n';
    return gclscore::parse_edge_list(ss.str());
}

// Oracle: modularity straight from the definition, independent of the
// library implementation.
inline double modularity_oracle(const gclscore::Graph& g, const std::vector<int>& comm) {
    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j : g.neighbors(i))
            if (comm[i] == comm[j])
                q += 1.0 - static_cast<double>(g.degree(i)) * g.degree(j) / (2.0 * m);
    // non-adjacent same-cluster pairs contribute only the null-model term
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = 0; j < g.vertex_count(); ++j) {
            if (i == j || comm[i] != comm[j] || g.has_edge(i, j)) continue;
            q -= static_cast<double>(g.degree(i)) * g.degree(j) / (2.0 * m);
        }
    // diagonal terms of the null model
    for (int i = 0; i < g.vertex_count(); ++i)
        q -= static_cast<double>(g.degree(i)) * g.degree(i) / (2.0 * m);
    return q / (2.0 * m);
}

// Enumerates every set partition of {0..n-1} via restricted growth
// strings and returns the maximum-modularity assignment. Exponential;
// keep n <= 8.
inline std::pair<std::vector<int>, double> best_partition_bruteforce(const gclscore::Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> rgs(n, 0), best;
    double best_q = -1e9;
    while (true) {
        const double q = modularity_oracle(g, rgs);
        if (q > best_q) {
            best_q = q;
            best = rgs;
        }
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int max_prefix = 0;
            for (int k = 0; k < i; ++k) max_prefix = std::max(max_prefix, rgs[k]);
            if (rgs[i] <= max_prefix) break;
        }
        if (i == 0) break;
        ++rgs[i];
        for (int k = i + 1; k < n; ++k) rgs[k] = 0;
    }
    return {best, best_q};
}

// Rand index: fraction of vertex pairs on which two partitions agree
// (together in both, or apart in both).
inline double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    long long agree = 0, pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ++pairs;
            if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
        }
    return pairs == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(pairs);
}

// True when the two assignments induce the same grouping regardless of ids.
inline bool same_grouping(const std::vector<int>& a, const std::vector<int>& b) {
    return rand_index(a, b) == 1.0;
}

#ifdef GCLSCORE_CLI_PATH

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

// Runs the built CLI with the given argument string.
inline CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GCLSCORE_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// Fresh scratch directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("gclscore_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    out << contents;
}

#endif  // GCLSCORE_CLI_PATH

}  // namespace testsupport
