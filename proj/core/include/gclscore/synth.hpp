#pragma once

#include <cstdint>
#include <utility>

#include "gclscore/embedding.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/partition.hpp"

namespace gclscore {

/// Planted-partition instance: near-equal clusters, within-cluster pairs
/// wired with p_in, cross-cluster pairs with p_out. A controllable
/// community-strength dial for tests and demos.
struct PlantedSpec {
    int n = 0;
    int clusters = 1;
    double p_in = 0.0;
    double p_out = 0.0;
    std::uint64_t seed = 0;
};

/// Generates the graph together with its ground-truth partition.
/// Deterministic per seed; disconnected draws are retried with derived
/// seeds up to 20 times before giving up with std::runtime_error.
/// Spec invariants (0 <= p_out < p_in <= 1, n >= clusters >= 1) are
/// validated with std::invalid_argument.
std::pair<Graph, Partition> planted_partition(const PlantedSpec& spec);

/// "Good" oracle embedding: cluster centers on a separation-spaced grid
/// (dim >= 2), vertices scattered around their center with the given
/// Gaussian spread. spread = 0 collapses clusters to points; separation = 0
/// collapses everything to one cloud.
Embedding structured_embedding(const Partition& p, int dim, double separation,
                               double spread, std::uint64_t seed);

/// "Bad" oracle embedding: i.i.d. uniform coordinates in [0,1]^dim.
Embedding random_embedding(int n, int dim, std::uint64_t seed);

}  // namespace gclscore
