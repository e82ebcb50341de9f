#include "gclscore/gcl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gclscore/errors.hpp"
#include "gclscore/random.hpp"
#include "json.hpp"

namespace gclscore {

namespace {

// Single definition of the decay value given the normalized base
// 1 - (d - d_min)/(d_max - d_min) in [0, 1]. Swap point for other decay
// families. alpha = 0 means geometry is ignored (0^0 := 1).
double decay_from_base(double base, double alpha, double g_floor) {
    if (alpha == 0.0) return 1.0;
    return std::max(std::pow(base, alpha), g_floor);
}

}  // namespace

double g_alpha(double d, const DistanceExtremes& ex, double alpha, double g_floor) {
    if (alpha < 0.0) throw std::invalid_argument("g_alpha: alpha must be non-negative");
    const double range = ex.d_max - ex.d_min;
    if (range <= 0.0) return 1.0;  // degenerate embedding: all pairwise distances equal
    const double slack = 1e-9 * range;
    if (d < ex.d_min - slack || d > ex.d_max + slack)
        throw std::invalid_argument("g_alpha: distance outside [d_min, d_max]");
    const double base = std::clamp(1.0 - (d - ex.d_min) / range, 0.0, 1.0);
    return decay_from_base(base, alpha, g_floor);
}

FeasibilityResult feasibility_check(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    if (n <= 2)
        throw std::invalid_argument(
            "feasibility_check: need at least 3 vertices (with 2 the weight system is "
            "degenerate: no solution, or an infinite family)");
    long long sum = 0;
    int max_v = 0;
    for (int v = 0; v < n; ++v) {
        if (degrees[v] < 1)
            throw std::invalid_argument("feasibility_check: vertex " + std::to_string(v) +
                                        " has degree 0; input must be connected");
        sum += degrees[v];
        if (degrees[v] > degrees[max_v]) max_v = v;
    }
    FeasibilityResult r;
    r.witness_vertex = max_v;
    r.feasible = sum > 2LL * degrees[max_v];
    return r;
}

PairDecay PairDecay::from_embedding(const Embedding& e) {
    PairDecay pd;
    pd.n_ = e.size();
    if (pd.n_ < 2) throw std::invalid_argument("PairDecay: need at least two embedded points");
    pd.extremes_ = distance_extremes(e);
    pd.base_.assign(static_cast<std::size_t>(pd.n_) * pd.n_, 1.0);
    const double range = pd.extremes_.d_max - pd.extremes_.d_min;
    if (range > 0.0) {
        for (int i = 0; i < pd.n_; ++i)
            for (int j = i + 1; j < pd.n_; ++j) {
                const double b =
                    std::clamp(1.0 - (distance(e, i, j) - pd.extremes_.d_min) / range, 0.0, 1.0);
                pd.base_[static_cast<std::size_t>(i) * pd.n_ + j] = b;
                pd.base_[static_cast<std::size_t>(j) * pd.n_ + i] = b;
            }
    }
    return pd;
}

std::vector<double> PairDecay::decay_matrix(double alpha, double g_floor) const {
    std::vector<double> m(base_.size());
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = decay_from_base(base_[i * n + j], alpha, g_floor);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
        m[i * n + i] = 0.0;  // no loops
    }
    return m;
}

FitOutcome fit_weights(const std::vector<int>& degrees, const Embedding& e, double alpha,
                       const FitParams& params, std::span<const double> initial) {
    return fit_weights(degrees, std::make_shared<const PairDecay>(PairDecay::from_embedding(e)),
                       alpha, params, initial);
}

FitOutcome fit_weights(const std::vector<int>& degrees, std::shared_ptr<const PairDecay> decay,
                       double alpha, const FitParams& params, std::span<const double> initial) {
    const int n = static_cast<int>(degrees.size());
    if (!decay || decay->size() != n)
        throw std::invalid_argument("fit_weights: decay matrix size does not match degrees");
    if (alpha < 0.0) throw std::invalid_argument("fit_weights: alpha must be non-negative");
    if (!(params.eps > 0.0 && params.eps < 1.0))
        throw std::invalid_argument("fit_weights: eps must lie in (0, 1)");
    if (!(params.delta > 0.0)) throw std::invalid_argument("fit_weights: delta must be positive");

    // gate before any iteration: stars and n <= 2 never reach the loop
    const FeasibilityResult feas = feasibility_check(degrees);
    if (!feas.feasible)
        throw InfeasibleDegreeSequence(
            "degree sequence infeasible: degree of vertex " + std::to_string(feas.witness_vertex) +
                " (" + std::to_string(degrees[feas.witness_vertex]) +
                ") is at least the sum of all other degrees; no positive weight solution exists",
            feas.witness_vertex);

    std::vector<double> t(n, 1.0);
    if (!initial.empty()) {
        if (static_cast<int>(initial.size()) != n)
            throw std::invalid_argument("fit_weights: initial vector size mismatch");
        for (double x : initial)
            if (!(x > 0.0)) throw std::invalid_argument("fit_weights: initial weights must be positive");
        t.assign(initial.begin(), initial.end());
    }

    const std::vector<double> g = decay->decay_matrix(alpha, params.g_floor);
    std::vector<double> s(n, 0.0);
    std::vector<double> trace;
    trace.reserve(256);

    double prev_residual = std::numeric_limits<double>::infinity();
    int growth_streak = 0;

    for (long iter = 0; iter <= params.max_iter; ++iter) {
        // expected degrees from the current vector (Jacobi: s fully computed
        // before any weight moves)
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            const double* row = g.data() + static_cast<std::size_t>(i) * n;
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += row[j] * t[j];
            s[i] = t[i] * acc;
            residual = std::max(residual, std::abs(degrees[i] - s[i]));
        }
        trace.push_back(residual);

        if (residual < params.delta) {
            GclModel model;
            model.alpha = alpha;
            model.weights = std::move(t);
            model.g_floor = params.g_floor;
            model.fit_residual = residual;
            model.decay = std::move(decay);

            FitReport report;
            report.iterations = iter;
            report.final_residual = residual;
            report.converged = true;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (model.weights[i] * model.weights[j] * g[static_cast<std::size_t>(i) * n + j] >
                        1.0)
                        ++report.capped_pairs;
            return {std::move(model), std::move(report)};
        }

        growth_streak = residual > prev_residual ? growth_streak + 1 : 0;
        prev_residual = residual;
        if (growth_streak >= 100) {
            if (trace.size() > 128) trace.erase(trace.begin(), trace.end() - 128);
            throw NonConvergenceError(
                "weight iteration diverged: residual grew for 100 consecutive steps (last " +
                    std::to_string(residual) + ")",
                iter, std::move(trace));
        }

        for (int i = 0; i < n; ++i) t[i] += params.eps * t[i] * (degrees[i] / s[i] - 1.0);
    }

    const double last = trace.empty() ? 0.0 : trace.back();
    if (trace.size() > 128) trace.erase(trace.begin(), trace.end() - 128);
    throw NonConvergenceError("weight iteration did not reach delta=" +
                                  std::to_string(params.delta) + " within " +
                                  std::to_string(params.max_iter) +
                                  " iterations (residual " + std::to_string(last) + ")",
                              params.max_iter, std::move(trace));
}

double edge_probability(const GclModel& m, int i, int j) {
    if (i == j) throw std::invalid_argument("edge_probability: the model has no self-loops");
    const double g = decay_from_base(m.decay->base(i, j), m.alpha, m.g_floor);
    return std::min(1.0, m.weights[i] * m.weights[j] * g);
}

BlockVectors expected_block_proportions(const GclModel& m, const Partition& p) {
    const int n = m.size();
    if (p.assignment.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("expected_block_proportions: partition size mismatch");
    if (p.cluster_count <= 0)
        throw std::invalid_argument("expected_block_proportions: empty partition");

    const int l = p.cluster_count;
    std::vector<long double> internal(l, 0.0L);
    std::vector<long double> external(static_cast<std::size_t>(l) * (l - 1) / 2, 0.0L);
    long double total = 0.0L;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double pij = edge_probability(m, i, j);
            total += pij;
            const int ci = p.assignment[i], cj = p.assignment[j];
            if (ci == cj)
                internal[ci] += pij;
            else
                external[block_pair_index(ci, cj, l)] += pij;
        }
    if (!(total > 0.0L))
        throw std::invalid_argument("expected_block_proportions: zero total edge mass");

    BlockVectors bv;
    bv.internal.resize(internal.size());
    bv.external.resize(external.size());
    for (std::size_t i = 0; i < internal.size(); ++i)
        bv.internal[i] = static_cast<double>(internal[i] / total);
    for (std::size_t i = 0; i < external.size(); ++i)
        bv.external[i] = static_cast<double>(external[i] / total);
    return bv;
}

Graph sample_graph(const GclModel& m, std::uint64_t seed, std::vector<std::string> labels) {
    const int n = m.size();
    if (labels.empty()) {
        labels.reserve(n);
        for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    } else if (static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("sample_graph: label count does not match model size");
    }
    Rng rng(derive_seed(seed, seed_stream::kSampling));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < edge_probability(m, i, j)) edges.emplace_back(i, j);
    return Graph::from_edges(std::move(labels), edges);
}

std::string model_json(const GclModel& m) {
    nlohmann::json j;
    j["alpha"] = m.alpha;
    j["d_min"] = m.extremes().d_min;
    j["d_max"] = m.extremes().d_max;
    j["weights"] = m.weights;
    j["residual"] = m.fit_residual;
    return j.dump();
}

double BlockVectors::total() const {
    long double t = 0.0L;
    for (double v : internal) t += v;
    for (double v : external) t += v;
    return static_cast<double>(t);
}

}  // namespace gclscore
