#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gclscore/block_vectors.hpp"
#include "gclscore/embedding.hpp"
#include "gclscore/gcl.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/partition.hpp"

namespace gclscore {

/// Observed edge proportions per cluster block: edge counts divided by
/// |E|. Characterizes the partition from the graph's side alone — no
/// embedding involved. Throws std::invalid_argument on an edgeless graph
/// or a partition that does not cover the vertex set.
BlockVectors observed_block_proportions(const Graph& g, const Partition& p);

/// Jensen-Shannon divergence, base-2 logarithm, 0*log0 := 0:
///   jsd(p, q) = (KL(p||m) + KL(q||m)) / 2,  m = (p+q)/2,
/// in [0, 1], zero iff p == q, 1 for disjoint supports. Inputs must be
/// equal-length probability vectors (entries >= 0, sum within 1e-9 of 1).
double jsd(const std::vector<double>& p, const std::vector<double>& q);

struct DeltaComponents {
    double delta = 0.0;
    double jsd_internal = 0.0;
    double jsd_external = 0.0;
};

/// Weighted average of the internal and external block divergences:
///   internal_weight * JSD(c_hat', b_hat') + (1-internal_weight) * JSD(c_bar', b_bar')
/// where each half-vector is renormalized to a probability vector first
/// (the halves only sum to 1 jointly). A half present on neither side
/// (notably the external half when l == 1) contributes 0; present on
/// exactly one side counts as maximal divergence 1.
DeltaComponents delta_alpha_components(const BlockVectors& observed,
                                       const BlockVectors& expected,
                                       double internal_weight = 0.5);
double delta_alpha(const BlockVectors& observed, const BlockVectors& expected,
                   double internal_weight = 0.5);

struct ScoreParams {
    FitParams fit{};
    double internal_weight = 0.5;
    int threads = 1;  // per-alpha fits are independent; >1 runs them concurrently
};

struct CurvePoint {
    double alpha = 0.0;
    bool converged = false;
    double delta = 0.0;
    double jsd_internal = 0.0;
    double jsd_external = 0.0;
    FitReport fit{};
    std::string error;  // set when the fit at this alpha failed
};

struct ScoreReport {
    double best_alpha = 0.0;
    double best_divergence = 0.0;
    std::vector<CurvePoint> curve;  // one point per grid alpha, ascending
};

/// The whole scoring pipeline for one embedding against a fixed partition:
/// fit the model at every grid alpha, compare expected vs observed block
/// proportions, and take the minimizing alpha (ties toward the smaller
/// one — the weaker geometric assumption). Lower scores mean the geometry
/// explains the observed community structure better. Per-alpha fit
/// failures are recorded on the curve; only if every alpha fails does the
/// call throw. An infeasible degree sequence is rejected up front.
/// The partition is an input so that one clustering run serves any number
/// of embeddings of the same graph.
ScoreReport divergence_score(const Graph& g, const Partition& p, const Embedding& e,
                             const std::vector<double>& alpha_grid,
                             const ScoreParams& params = {});

struct RankEntry {
    std::size_t input_index = 0;
    ScoreReport report;
};

struct RankOutcome {
    std::vector<RankEntry> ranking;  // ascending divergence; ties keep input order
    std::vector<std::pair<std::size_t, std::string>> failures;
};

/// Scores every embedding against the same partition and orders them,
/// best (lowest divergence) first. Embeddings whose every grid point
/// fails are reported in failures; the ranking covers the survivors.
RankOutcome rank_embeddings(const Graph& g, const Partition& p,
                            const std::vector<Embedding>& embeddings,
                            const std::vector<double>& alpha_grid,
                            const ScoreParams& params = {});

/// Kendall rank correlation (tau-a) between two orderings of the same id
/// set: (concordant - discordant) / (n(n-1)/2), in [-1, 1]. Ids must be
/// unique within each order and the sets must match.
double kendall_tau(const std::vector<std::string>& order_a,
                   const std::vector<std::string>& order_b);
double kendall_tau(const std::vector<int>& order_a, const std::vector<int>& order_b);

/// ScoreReport JSON: {"embedding":…, "best_alpha":…, "divergence":…,
/// "curve":[{"alpha":…, "delta":…, "jsd_internal":…, "jsd_external":…,
/// "fit_iters":…}, …]}; failed grid points carry "error" instead of values.
std::string score_report_json(const ScoreReport& report, const std::string& embedding_name);

}  // namespace gclscore
