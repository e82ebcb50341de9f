#include "gclscore/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gclscore/random.hpp"

namespace gclscore {

std::pair<Graph, Partition> planted_partition(const PlantedSpec& spec) {
    if (spec.n < 1 || spec.clusters < 1 || spec.n < spec.clusters)
        throw std::invalid_argument("planted_partition: need n >= clusters >= 1");
    if (!(spec.p_out >= 0.0 && spec.p_out < spec.p_in && spec.p_in <= 1.0))
        throw std::invalid_argument("planted_partition: need 0 <= p_out < p_in <= 1");

    // near-equal sizes: the first n % clusters clusters get one extra vertex
    std::vector<int> assignment(spec.n);
    {
        const int base = spec.n / spec.clusters;
        const int extra = spec.n % spec.clusters;
        int v = 0;
        for (int c = 0; c < spec.clusters; ++c) {
            const int size = base + (c < extra ? 1 : 0);
            for (int k = 0; k < size; ++k) assignment[v++] = c;
        }
    }

    std::vector<std::string> labels;
    labels.reserve(spec.n);
    for (int v = 0; v < spec.n; ++v) labels.push_back(std::to_string(v));

    for (int attempt = 0; attempt < 20; ++attempt) {
        Rng rng(derive_seed(spec.seed, seed_stream::kPlantedAttempt, attempt));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < spec.n; ++i)
            for (int j = i + 1; j < spec.n; ++j) {
                const double p = assignment[i] == assignment[j] ? spec.p_in : spec.p_out;
                if (rng.uniform01() < p) edges.emplace_back(i, j);
            }
        Graph g = Graph::from_edges(labels, edges);
        if (g.connected())
            return {std::move(g), Partition::from_assignment(assignment)};
    }
    throw std::runtime_error(
        "planted_partition: no connected draw in 20 attempts; raise p_in/p_out or n");
}

Embedding structured_embedding(const Partition& p, int dim, double separation, double spread,
                               std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("structured_embedding: dim must be >= 2");
    const int n = static_cast<int>(p.assignment.size());
    const int l = p.cluster_count;

    // cluster centers on a square grid in the first two coordinates,
    // adjacent grid points exactly `separation` apart
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(l))));
    std::vector<double> centers(static_cast<std::size_t>(l) * dim, 0.0);
    for (int c = 0; c < l; ++c) {
        centers[static_cast<std::size_t>(c) * dim + 0] = separation * (c % side);
        centers[static_cast<std::size_t>(c) * dim + 1] = separation * (c / side);
    }

    Rng rng(derive_seed(seed, seed_stream::kStructuredEmbedding));
    std::vector<double> coords(static_cast<std::size_t>(n) * dim);
    for (int v = 0; v < n; ++v) {
        const double* center = centers.data() + static_cast<std::size_t>(p.assignment[v]) * dim;
        for (int c = 0; c < dim; ++c)
            coords[static_cast<std::size_t>(v) * dim + c] = center[c] + spread * rng.gaussian();
    }
    return Embedding(dim, std::move(coords));
}

Embedding random_embedding(int n, int dim, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_embedding: n must be positive");
    if (dim < 1) throw std::invalid_argument("random_embedding: dim must be >= 1");
    Rng rng(derive_seed(seed, seed_stream::kRandomEmbedding));
    std::vector<double> coords(static_cast<std::size_t>(n) * dim);
    for (double& c : coords) c = rng.uniform01();
    return Embedding(dim, std::move(coords));
}

}  // namespace gclscore
