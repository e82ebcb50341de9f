// gclscore command line: score and rank vertex embeddings of a graph by
// fitting a degree-preserving geometric random-graph model and comparing
// observed vs expected cluster-block edge proportions across a grid of
// distance-decay strengths.
//
// Exit codes: 0 ok, 2 input error, 3 infeasible degree sequence,
// 4 non-convergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gclscore/clustering.hpp"
#include "gclscore/divergence.hpp"
#include "gclscore/embedding.hpp"
#include "gclscore/errors.hpp"
#include "gclscore/gcl.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/partition.hpp"
#include "gclscore/random.hpp"
#include "gclscore/synth.hpp"

namespace fs = std::filesystem;
using namespace gclscore;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNonConvergence = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, path);
}

Graph load_graph(const std::string& path) {
    Graph raw = parse_edge_list(slurp(path));
    if (raw.vertex_count() == 0) throw InputError("graph file " + path + " holds no vertices");
    Graph g = largest_connected_component(raw);
    if (g.vertex_count() < raw.vertex_count())
        std::cerr << "note: kept the largest connected component of " << path << " ("
                  << g.vertex_count() << " of " << raw.vertex_count() << " vertices, "
                  << g.edge_count() << " edges)\n";
    return g;
}

Embedding load_embedding(const std::string& path, const Graph& g) {
    return parse_embedding(slurp(path), g);
}

struct GridOptions {
    double alpha_min = 0.0;
    double alpha_max = 10.0;
    double alpha_step = 0.25;

    std::vector<double> build() const {
        if (alpha_min < 0.0 || alpha_max < alpha_min || alpha_step <= 0.0)
            throw InputError("alpha grid requires 0 <= alpha-min <= alpha-max and alpha-step > 0");
        std::vector<double> grid;
        for (int k = 0;; ++k) {
            const double a = alpha_min + k * alpha_step;
            if (a > alpha_max + 1e-12) break;
            grid.push_back(a);
        }
        return grid;
    }
};

struct ClusteringOptions {
    std::string method = "ecg";  // ecg | louvain | file
    std::string partition_path;
    int ensemble_size = 16;

    Partition resolve(const Graph& g, std::uint64_t seed) const {
        std::string m = method;
        if (m == "file" || (!partition_path.empty() && m == "ecg" && implicit_file)) m = "file";
        if (m == "file") {
            if (partition_path.empty())
                throw InputError("--clustering file requires --partition <path>");
            return parse_partition(slurp(partition_path), g);
        }
        if (m == "louvain") return louvain(g, derive_seed(seed, seed_stream::kClustering));
        if (m == "ecg") return ecg(g, ensemble_size, derive_seed(seed, seed_stream::kClustering));
        throw InputError("unknown clustering method \"" + m + "\"");
    }

    bool implicit_file = false;  // --partition given without --clustering
};

void add_grid_options(CLI::App* cmd, GridOptions& grid) {
    cmd->add_option("--alpha-min", grid.alpha_min, "Smallest decay strength on the grid");
    cmd->add_option("--alpha-max", grid.alpha_max, "Largest decay strength on the grid");
    cmd->add_option("--alpha-step", grid.alpha_step, "Grid spacing");
}

void add_fit_options(CLI::App* cmd, FitParams& fit) {
    cmd->add_option("--eps", fit.eps, "Fixed-point step damping in (0,1)");
    cmd->add_option("--delta", fit.delta, "Convergence target for the degree residual");
    cmd->add_option("--max-iter", fit.max_iter, "Iteration budget per fit");
}

void add_clustering_options(CLI::App* cmd, ClusteringOptions& c) {
    cmd->add_option("--clustering", c.method, "Partition source: ecg, louvain or file")
        ->check(CLI::IsMember({"ecg", "louvain", "file"}));
    cmd->add_option("--partition", c.partition_path, "Partition file (label cluster_id per line)");
    cmd->add_option("--ensemble-size", c.ensemble_size, "ECG ensemble size")
        ->check(CLI::PositiveNumber);
}

// Distinct output stems for possibly colliding input paths.
std::vector<std::string> unique_stems(const std::vector<std::string>& paths) {
    std::vector<std::string> stems;
    std::map<std::string, int> used;
    for (const auto& p : paths) {
        std::string stem = fs::path(p).stem().string();
        if (stem.empty()) stem = "embedding";
        const int n = used[stem]++;
        if (n > 0) stem += "_" + std::to_string(n + 1);
        stems.push_back(stem);
    }
    return stems;
}

std::string curve_csv(const ScoreReport& report) {
    std::ostringstream out;
    out << "alpha,delta,jsd_internal,jsd_external,fit_iters\n";
    for (const auto& pt : report.curve) {
        if (!pt.converged) continue;
        out << fmt(pt.alpha) << ',' << fmt(pt.delta) << ',' << fmt(pt.jsd_internal) << ','
            << fmt(pt.jsd_external) << ',' << pt.fit.iterations << '\n';
    }
    return out.str();
}

std::string ranking_csv(const RankOutcome& outcome, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "rank,embedding,best_alpha,divergence\n";
    int rank = 1;
    for (const auto& entry : outcome.ranking)
        out << rank++ << ',' << names[entry.input_index] << ','
            << fmt(entry.report.best_alpha) << ',' << fmt(entry.report.best_divergence) << '\n';
    return out.str();
}

// ---- subcommand payloads -------------------------------------------------

struct ScoreArgs {
    std::string graph_path;
    std::vector<std::string> embedding_paths;
    GridOptions grid;
    ClusteringOptions clustering;
    FitParams fit;
    double internal_weight = 0.5;
    int threads = 1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string compare;  // rank only: ecg | louvain | partition file path
};

int run_score_like(const ScoreArgs& args, bool ranked) {
    Graph g = load_graph(args.graph_path);
    std::vector<Embedding> embeddings;
    for (const auto& p : args.embedding_paths) embeddings.push_back(load_embedding(p, g));

    ScoreParams params;
    params.fit = args.fit;
    params.internal_weight = args.internal_weight;
    params.threads = args.threads;
    const auto grid = args.grid.build();

    Partition partition = args.clustering.resolve(g, args.seed);
    std::cerr << "partition: " << partition.cluster_count
              << " clusters, modularity=" << fmt(modularity(g, partition)) << "\n";

    const auto stems = unique_stems(args.embedding_paths);
    RankOutcome outcome = rank_embeddings(g, partition, embeddings, grid, params);
    for (const auto& [index, message] : outcome.failures)
        std::cerr << "failed: " << args.embedding_paths[index] << ": " << message << "\n";

    for (const auto& entry : outcome.ranking) {
        const auto& name = args.embedding_paths[entry.input_index];
        const fs::path json_path = fs::path(args.out_dir) / (stems[entry.input_index] + ".score.json");
        const fs::path csv_path = fs::path(args.out_dir) / (stems[entry.input_index] + ".curve.csv");
        write_file_atomic(json_path, score_report_json(entry.report, name) + "\n");
        write_file_atomic(csv_path, curve_csv(entry.report));
        std::cout << name << ": best_alpha=" << fmt(entry.report.best_alpha)
                  << " divergence=" << fmt(entry.report.best_divergence) << " -> "
                  << json_path.string() << "\n";
    }
    if (!outcome.failures.empty() && outcome.ranking.empty())
        throw NonConvergenceError("every embedding failed to score", 0, {});

    if (ranked) {
        const fs::path csv_path = fs::path(args.out_dir) / "ranking.csv";
        write_file_atomic(csv_path, ranking_csv(outcome, args.embedding_paths));
        std::cout << "ranking -> " << csv_path.string() << "\n";

        if (!args.compare.empty()) {
            ClusteringOptions other;
            if (args.compare == "ecg" || args.compare == "louvain") {
                other.method = args.compare;
                other.ensemble_size = args.clustering.ensemble_size;
            } else {
                other.method = "file";
                other.partition_path = args.compare;
            }
            Partition partition2 = other.resolve(g, args.seed);
            RankOutcome outcome2 = rank_embeddings(g, partition2, embeddings, grid, params);
            const fs::path csv2 = fs::path(args.out_dir) / "ranking_compare.csv";
            write_file_atomic(csv2, ranking_csv(outcome2, args.embedding_paths));
            std::cout << "compare ranking -> " << csv2.string() << "\n";

            std::vector<std::string> order_a, order_b;
            for (const auto& e : outcome.ranking) order_a.push_back(args.embedding_paths[e.input_index]);
            for (const auto& e : outcome2.ranking) order_b.push_back(args.embedding_paths[e.input_index]);
            std::cout << "kendall_tau=" << fmt(kendall_tau(order_a, order_b)) << "\n";
        }
    }
    return kExitOk;
}

struct ClusterArgs {
    std::string graph_path;
    ClusteringOptions clustering;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

int run_cluster(const ClusterArgs& args) {
    Graph g = load_graph(args.graph_path);
    Partition p = args.clustering.resolve(g, args.seed);
    const fs::path out =
        fs::path(args.out_dir) / (fs::path(args.graph_path).stem().string() + ".partition");
    std::ostringstream body;
    write_partition(body, p, g.labels());
    write_file_atomic(out, body.str());
    std::cout << "clusters=" << p.cluster_count << " modularity=" << fmt(modularity(g, p))
              << " -> " << out.string() << "\n";
    return kExitOk;
}

struct FitArgs {
    std::string graph_path;
    std::string embedding_path;
    double alpha = 0.0;
    FitParams fit;
    std::string out_dir = ".";
};

int run_fit(const FitArgs& args) {
    Graph g = load_graph(args.graph_path);
    Embedding e = load_embedding(args.embedding_path, g);
    auto [model, report] = fit_weights(degree_sequence(g), e, args.alpha, args.fit);
    if (report.capped_pairs > 0)
        std::cerr << "note: " << report.capped_pairs << " pair probabilities were capped at 1\n";
    const fs::path out =
        fs::path(args.out_dir) / (fs::path(args.embedding_path).stem().string() + ".model.json");
    write_file_atomic(out, model_json(model) + "\n");
    std::cout << "alpha=" << fmt(args.alpha) << " iters=" << report.iterations
              << " residual=" << fmt(report.final_residual) << " -> " << out.string() << "\n";
    return kExitOk;
}

struct GenerateArgs {
    std::string graph_path;
    std::string embedding_path;
    std::string alpha = "0";  // number or "best"
    GridOptions grid;
    ClusteringOptions clustering;
    FitParams fit;
    double internal_weight = 0.5;
    int threads = 1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

int run_generate(const GenerateArgs& args) {
    Graph g = load_graph(args.graph_path);
    Embedding e = load_embedding(args.embedding_path, g);

    double alpha = 0.0;
    if (args.alpha == "best") {
        ScoreParams params;
        params.fit = args.fit;
        params.internal_weight = args.internal_weight;
        params.threads = args.threads;
        Partition partition = args.clustering.resolve(g, args.seed);
        ScoreReport report = divergence_score(g, partition, e, args.grid.build(), params);
        alpha = report.best_alpha;
        std::cout << "best_alpha=" << fmt(alpha) << " divergence="
                  << fmt(report.best_divergence) << "\n";
    } else {
        try {
            std::size_t pos = 0;
            alpha = std::stod(args.alpha, &pos);
            if (pos != args.alpha.size()) throw std::invalid_argument(args.alpha);
        } catch (...) {
            throw InputError("--alpha expects a number or \"best\", got \"" + args.alpha + "\"");
        }
    }

    auto [model, report] = fit_weights(degree_sequence(g), e, alpha, args.fit);
    Graph sample = sample_graph(model, args.seed, g.labels());

    const std::string stem = fs::path(args.graph_path).stem().string();
    const fs::path edges_path = fs::path(args.out_dir) / (stem + ".sample.edges");
    const fs::path meta_path = fs::path(args.out_dir) / (stem + ".sample.json");
    std::ostringstream body;
    write_edge_list(body, sample);
    write_file_atomic(edges_path, body.str());

    nlohmann::json meta;
    meta["graph"] = args.graph_path;
    meta["embedding"] = args.embedding_path;
    meta["alpha"] = alpha;
    meta["seed"] = args.seed;
    meta["edge_count"] = sample.edge_count();
    meta["source_edge_count"] = g.edge_count();
    meta["fit_residual"] = report.final_residual;
    write_file_atomic(meta_path, meta.dump() + "\n");

    std::cout << "sampled " << sample.edge_count() << " edges at alpha=" << fmt(alpha) << " -> "
              << edges_path.string() << "\n";
    return kExitOk;
}

struct SynthArgs {
    int n = 60;
    int clusters = 3;
    double p_in = 0.3;
    double p_out = 0.03;
    int dim = 2;
    double separation = 10.0;
    double spread = 1.0;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

int run_synth(const SynthArgs& args) {
    PlantedSpec spec{args.n, args.clusters, args.p_in, args.p_out, args.seed};
    auto [g, truth] = planted_partition(spec);
    Embedding emb = structured_embedding(truth, args.dim, args.separation, args.spread, args.seed);

    const fs::path edges_path = fs::path(args.out_dir) / "synth.edges";
    const fs::path part_path = fs::path(args.out_dir) / "synth.partition";
    const fs::path emb_path = fs::path(args.out_dir) / "synth.emb";

    std::ostringstream eb, pb, mb;
    write_edge_list(eb, g);
    write_partition(pb, truth, g.labels());
    write_embedding(mb, emb, g.labels());
    write_file_atomic(edges_path, eb.str());
    write_file_atomic(part_path, pb.str());
    write_file_atomic(emb_path, mb.str());

    std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count() << " clusters="
              << truth.cluster_count << "\n"
              << edges_path.string() << "\n"
              << part_path.string() << "\n"
              << emb_path.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedding quality scoring via a geometry-aware degree-preserving random graph model"};
    app.require_subcommand(1);

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Score one or more embeddings of a graph");
    score->add_option("--graph", score_args.graph_path, "Edge-list file")->required();
    score->add_option("--embedding", score_args.embedding_paths, "Embedding file (repeatable)")
        ->required();
    add_clustering_options(score, score_args.clustering);
    add_grid_options(score, score_args.grid);
    add_fit_options(score, score_args.fit);
    score->add_option("--internal-weight", score_args.internal_weight,
                      "Weight of the internal-block divergence term");
    score->add_option("--threads", score_args.threads, "Concurrent per-alpha fits")
        ->check(CLI::PositiveNumber);
    score->add_option("--seed", score_args.seed, "Master seed");
    score->add_option("--out-dir", score_args.out_dir, "Output directory");

    ScoreArgs rank_args;
    auto* rank = app.add_subcommand("rank", "Rank several embeddings of the same graph");
    rank->add_option("--graph", rank_args.graph_path, "Edge-list file")->required();
    rank->add_option("--embedding", rank_args.embedding_paths, "Embedding file (repeatable)")
        ->required();
    add_clustering_options(rank, rank_args.clustering);
    add_grid_options(rank, rank_args.grid);
    add_fit_options(rank, rank_args.fit);
    rank->add_option("--internal-weight", rank_args.internal_weight,
                     "Weight of the internal-block divergence term");
    rank->add_option("--threads", rank_args.threads, "Concurrent per-alpha fits")
        ->check(CLI::PositiveNumber);
    rank->add_option("--seed", rank_args.seed, "Master seed");
    rank->add_option("--out-dir", rank_args.out_dir, "Output directory");
    rank->add_option("--compare", rank_args.compare,
                     "Second partition source (ecg, louvain or a partition file); "
                     "emits a second ranking and the Kendall tau between the two");

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "Write a stable partition of the graph");
    cluster->add_option("--graph", cluster_args.graph_path, "Edge-list file")->required();
    add_clustering_options(cluster, cluster_args.clustering);
    cluster->add_option("--seed", cluster_args.seed, "Master seed");
    cluster->add_option("--out-dir", cluster_args.out_dir, "Output directory");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit model weights at one decay strength");
    fit->add_option("--graph", fit_args.graph_path, "Edge-list file")->required();
    fit->add_option("--embedding", fit_args.embedding_path, "Embedding file")->required();
    fit->add_option("--alpha", fit_args.alpha, "Decay strength")->required();
    add_fit_options(fit, fit_args.fit);
    fit->add_option("--out-dir", fit_args.out_dir, "Output directory");

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "Sample a random graph from the fitted model");
    gen->add_option("--graph", gen_args.graph_path, "Edge-list file")->required();
    gen->add_option("--embedding", gen_args.embedding_path, "Embedding file")->required();
    gen->add_option("--alpha", gen_args.alpha, "Decay strength, or \"best\" to search the grid");
    add_clustering_options(gen, gen_args.clustering);
    add_grid_options(gen, gen_args.grid);
    add_fit_options(gen, gen_args.fit);
    gen->add_option("--internal-weight", gen_args.internal_weight,
                    "Weight of the internal-block divergence term");
    gen->add_option("--threads", gen_args.threads, "Concurrent per-alpha fits")
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed, "Master seed (drives the sampling)");
    gen->add_option("--out-dir", gen_args.out_dir, "Output directory");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Emit a planted-partition instance with embeddings");
    synth->add_option("--n", synth_args.n, "Vertices")->check(CLI::PositiveNumber);
    synth->add_option("--l", synth_args.clusters, "Clusters")->check(CLI::PositiveNumber);
    synth->add_option("--p-in", synth_args.p_in, "Within-cluster edge probability");
    synth->add_option("--p-out", synth_args.p_out, "Cross-cluster edge probability");
    synth->add_option("--dim", synth_args.dim, "Embedding dimension");
    synth->add_option("--separation", synth_args.separation, "Cluster center spacing");
    synth->add_option("--spread", synth_args.spread, "Within-cluster point spread");
    synth->add_option("--seed", synth_args.seed, "Master seed");
    synth->add_option("--out-dir", synth_args.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (score->parsed()) {
            score_args.clustering.implicit_file = !score_args.clustering.partition_path.empty() &&
                                                  score->count("--clustering") == 0;
            return run_score_like(score_args, false);
        }
        if (rank->parsed()) {
            rank_args.clustering.implicit_file = !rank_args.clustering.partition_path.empty() &&
                                                 rank->count("--clustering") == 0;
            return run_score_like(rank_args, true);
        }
        if (cluster->parsed()) {
            cluster_args.clustering.implicit_file =
                !cluster_args.clustering.partition_path.empty() &&
                cluster->count("--clustering") == 0;
            return run_cluster(cluster_args);
        }
        if (fit->parsed()) return run_fit(fit_args);
        if (gen->parsed()) {
            gen_args.clustering.implicit_file = !gen_args.clustering.partition_path.empty() &&
                                                gen->count("--clustering") == 0;
            return run_generate(gen_args);
        }
        if (synth->parsed()) return run_synth(synth_args);
        std::cerr << "no subcommand given\n";
        return kExitInput;
    } catch (const InfeasibleDegreeSequence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
