#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gclscore/block_vectors.hpp"
#include "gclscore/embedding.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/partition.hpp"

namespace gclscore {

inline constexpr double kDefaultGFloor = 1e-7;

/// Normalized distance decay. For d in [d_min, d_max],
///   g(d) = (1 - (d - d_min)/(d_max - d_min))^alpha
/// clipped below at g_floor; g(d_min) = 1, and alpha = 0 gives g == 1
/// everywhere (0^0 := 1), which ignores the geometry entirely. A
/// degenerate embedding (d_max == d_min) also yields g == 1. The form is
/// invariant under scaling and translation of the distances. Throws
/// std::invalid_argument when d lies outside [d_min, d_max] or alpha < 0.
double g_alpha(double d, const DistanceExtremes& ex, double alpha,
               double g_floor = kDefaultGFloor);

struct FeasibilityResult {
    bool feasible = false;
    int witness_vertex = -1;  // argmax degree; the offender when infeasible
};

/// A positive weight vector with x_i * sum_{j!=i} x_j g(d_ij) = w_i exists
/// (and is unique) exactly when sum(w) > 2*max(w); among connected graphs
/// only stars violate it. Requires n >= 3 and min degree >= 1; n <= 2 is
/// rejected as degenerate (the two-vertex system has either no solution
/// or infinitely many).
FeasibilityResult feasibility_check(const std::vector<int>& degrees);

/// Pairwise decay bases 1 - (d_ij - d_min)/(d_max - d_min), precomputed
/// once per embedding and shared by every per-alpha fit. All entries 1
/// when the embedding is degenerate.
class PairDecay {
public:
    static PairDecay from_embedding(const Embedding& e);

    int size() const { return n_; }
    const DistanceExtremes& extremes() const { return extremes_; }
    double base(int i, int j) const { return base_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Dense matrix of g values for one alpha: base^alpha clipped below at
    /// g_floor, zero diagonal.
    std::vector<double> decay_matrix(double alpha, double g_floor) const;

private:
    int n_ = 0;
    DistanceExtremes extremes_;
    std::vector<double> base_;  // n*n, symmetric, diagonal unused
};

struct FitParams {
    double eps = 0.1;       // step damping, must lie in (0,1)
    double delta = 1e-3;    // convergence target for max_i |w_i - s_i|
    long max_iter = 100000;
    double g_floor = kDefaultGFloor;
};

struct FitReport {
    long iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    int capped_pairs = 0;  // pairs whose raw x_i x_j g exceeded 1
};

/// Fitted model: pair (i, j) is an edge with probability
/// min(1, x_i x_j g(d_ij)). Weights are strictly positive and tuned so
/// the expected degree of every vertex matches its target within the fit
/// tolerance. No self-loops. Immutable and cheap to share; models fitted
/// from the same PairDecay share the base matrix.
struct GclModel {
    double alpha = 0.0;
    std::vector<double> weights;
    double g_floor = kDefaultGFloor;
    double fit_residual = 0.0;
    std::shared_ptr<const PairDecay> decay;

    int size() const { return static_cast<int>(weights.size()); }
    const DistanceExtremes& extremes() const { return decay->extremes(); }
};

struct FitOutcome {
    GclModel model;
    FitReport report;
};

/// Tunes the weights by damped fixed-point iteration from t0 = (1,...,1)
/// (or the supplied positive start): every step computes all expected
/// degrees s_i = t_i * sum_{j!=i} t_j g(d_ij) from the previous vector
/// (Jacobi update, the deterministic contract), then moves each weight by
///   t_i <- t_i * (1 + eps * (w_i / s_i - 1)),
/// stopping once max_i |w_i - s_i| < delta.
/// Throws InfeasibleDegreeSequence before iterating when the degree
/// vector fails feasibility_check, and NonConvergenceError (carrying the
/// residual trace) when max_iter runs out or the residual grows for 100
/// consecutive steps.
FitOutcome fit_weights(const std::vector<int>& degrees, const Embedding& e,
                       double alpha, const FitParams& params = {},
                       std::span<const double> initial = {});

FitOutcome fit_weights(const std::vector<int>& degrees,
                       std::shared_ptr<const PairDecay> decay, double alpha,
                       const FitParams& params = {},
                       std::span<const double> initial = {});

/// min(1, x_i x_j g(d_ij)); i == j is an error (the model has no loops).
double edge_probability(const GclModel& m, int i, int j);

/// Expected edge mass per cluster block, normalized by the total expected
/// edge mass T = sum over all unordered pairs of p_uv (not by |E|), so the
/// entries sum to 1 exactly. Depends only on (w, embedding, alpha) and the
/// partition, never on the observed edges.
BlockVectors expected_block_proportions(const GclModel& m, const Partition& p);

/// Draws one graph: each unordered pair independently with probability
/// p_ij, pairs visited in canonical order, so output is a pure function
/// of (model, seed). Labels default to decimal indices.
Graph sample_graph(const GclModel& m, std::uint64_t seed,
                   std::vector<std::string> labels = {});

/// {"alpha":…, "d_min":…, "d_max":…, "weights":[…], "residual":…}
std::string model_json(const GclModel& m);

}  // namespace gclscore
