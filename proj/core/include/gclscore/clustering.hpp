#pragma once

#include <cstdint>
#include <vector>

#include "gclscore/graph.hpp"
#include "gclscore/partition.hpp"

namespace gclscore {

/// Multi-level greedy modularity clustering. Deterministic for a fixed
/// seed: the seed drives the vertex visiting order, and among equal
/// modularity gains the lowest cluster index wins.
/// Throws std::invalid_argument on an edgeless graph.
Partition louvain(const Graph& g, std::uint64_t seed);

/// Same algorithm over per-edge weights aligned with g.edges(). This is
/// the consensus stage of ECG; input graphs themselves are unweighted.
Partition louvain_weighted(const Graph& g, const std::vector<double>& edge_weights,
                           std::uint64_t seed);

/// First level only: local moving on the original graph until no vertex
/// improves, no aggregation. One ECG ensemble vote.
Partition louvain_one_level(const Graph& g, std::uint64_t seed);

/// Consensus edge weights: the fraction of ensemble_size independent
/// one-level passes (seeds derived from seed) that place the edge's
/// endpoints in the same cluster, floored at w_min so bridge edges keep
/// positive weight. Aligned with g.edges().
std::vector<double> ecg_vote_weights(const Graph& g, int ensemble_size,
                                     std::uint64_t seed, double w_min = 0.05);

/// Ensemble clustering: full Louvain over the consensus-reweighted graph.
Partition ecg(const Graph& g, int ensemble_size, std::uint64_t seed);

/// Newman modularity Q = sum_c (e_c/m - (vol_c/2m)^2), in [-0.5, 1).
double modularity(const Graph& g, const Partition& p);

/// Per-cluster ratio of internal degree to total degree:
/// 2*internal / (2*internal + external incident edges), in [0,1].
/// A cluster above 0.5 keeps most of its edge ends inside.
std::vector<double> community_strength(const Graph& g, const Partition& p);

}  // namespace gclscore
