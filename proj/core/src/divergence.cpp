#include "gclscore/divergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "gclscore/errors.hpp"
#include "json.hpp"

namespace gclscore {

BlockVectors observed_block_proportions(const Graph& g, const Partition& p) {
    if (p.assignment.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("observed_block_proportions: partition size mismatch");
    if (p.cluster_count <= 0)
        throw std::invalid_argument("observed_block_proportions: empty partition");
    if (g.edge_count() == 0)
        throw std::invalid_argument("observed_block_proportions: graph has no edges");

    const int l = p.cluster_count;
    std::vector<long long> internal(l, 0);
    std::vector<long long> external(static_cast<std::size_t>(l) * (l - 1) / 2, 0);
    for (auto [u, v] : g.edges()) {
        const int cu = p.assignment[u], cv = p.assignment[v];
        if (cu == cv)
            ++internal[cu];
        else
            ++external[block_pair_index(cu, cv, l)];
    }
    const double m = static_cast<double>(g.edge_count());
    BlockVectors bv;
    bv.internal.resize(internal.size());
    bv.external.resize(external.size());
    for (std::size_t i = 0; i < internal.size(); ++i)
        bv.internal[i] = static_cast<double>(internal[i]) / m;
    for (std::size_t i = 0; i < external.size(); ++i)
        bv.external[i] = static_cast<double>(external[i]) / m;
    return bv;
}

double jsd(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("jsd: length mismatch");
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw std::invalid_argument("jsd: negative entry");
        sp += p[i];
        sq += q[i];
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
        throw std::invalid_argument("jsd: inputs must each sum to 1");

    // (KL(p||m) + KL(q||m)) / 2 with m = (p+q)/2, base-2 logs, 0*log0 = 0
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) acc += 0.5 * p[i] * std::log2(p[i] / m);
        if (q[i] > 0.0) acc += 0.5 * q[i] * std::log2(q[i] / m);
    }
    return std::clamp(acc, 0.0, 1.0);
}

namespace {

// Renormalizes a half-vector to a probability vector; empty or zero-mass
// vectors have no distribution and are signalled with false.
bool renormalize(const std::vector<double>& v, std::vector<double>& out) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (!(sum > 0.0)) return false;
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / sum;
    return true;
}

// JSD of one renormalized half pair. No mass on either side: the halves
// agree trivially (0); mass on exactly one side: maximal disagreement (1).
double half_divergence(const std::vector<double>& observed, const std::vector<double>& expected) {
    std::vector<double> a, b;
    const bool have_a = renormalize(observed, a);
    const bool have_b = renormalize(expected, b);
    if (!have_a && !have_b) return 0.0;
    if (have_a != have_b) return 1.0;
    return jsd(a, b);
}

}  // namespace

DeltaComponents delta_alpha_components(const BlockVectors& observed, const BlockVectors& expected,
                                       double internal_weight) {
    if (observed.internal.size() != expected.internal.size() ||
        observed.external.size() != expected.external.size())
        throw std::invalid_argument("delta_alpha: block vectors disagree on cluster count");
    if (internal_weight < 0.0 || internal_weight > 1.0)
        throw std::invalid_argument("delta_alpha: internal_weight must lie in [0, 1]");

    DeltaComponents dc;
    dc.jsd_internal = half_divergence(observed.internal, expected.internal);
    dc.jsd_external = half_divergence(observed.external, expected.external);
    dc.delta = internal_weight * dc.jsd_internal + (1.0 - internal_weight) * dc.jsd_external;
    return dc;
}

double delta_alpha(const BlockVectors& observed, const BlockVectors& expected,
                   double internal_weight) {
    return delta_alpha_components(observed, expected, internal_weight).delta;
}

ScoreReport divergence_score(const Graph& g, const Partition& p, const Embedding& e,
                             const std::vector<double>& alpha_grid, const ScoreParams& params) {
    if (alpha_grid.empty()) throw std::invalid_argument("divergence_score: empty alpha grid");
    for (std::size_t i = 0; i + 1 < alpha_grid.size(); ++i)
        if (!(alpha_grid[i] < alpha_grid[i + 1]))
            throw std::invalid_argument("divergence_score: alpha grid must be strictly increasing");
    if (e.size() != g.vertex_count())
        throw std::invalid_argument("divergence_score: embedding size does not match graph");

    const auto degrees = degree_sequence(g);
    const FeasibilityResult feas = feasibility_check(degrees);
    if (!feas.feasible)
        throw InfeasibleDegreeSequence(
            "degree sequence infeasible: degree of vertex " + std::to_string(feas.witness_vertex) +
                " is at least the sum of all other degrees",
            feas.witness_vertex);

    const BlockVectors observed = observed_block_proportions(g, p);
    auto decay = std::make_shared<const PairDecay>(PairDecay::from_embedding(e));

    ScoreReport report;
    report.curve.resize(alpha_grid.size());

    auto eval_point = [&](std::size_t idx) {
        CurvePoint& pt = report.curve[idx];
        pt.alpha = alpha_grid[idx];
        try {
            FitOutcome fit = fit_weights(degrees, decay, pt.alpha, params.fit);
            const BlockVectors expected = expected_block_proportions(fit.model, p);
            const DeltaComponents dc =
                delta_alpha_components(observed, expected, params.internal_weight);
            pt.converged = true;
            pt.delta = dc.delta;
            pt.jsd_internal = dc.jsd_internal;
            pt.jsd_external = dc.jsd_external;
            pt.fit = fit.report;
        } catch (const NonConvergenceError& err) {
            pt.converged = false;
            pt.error = err.what();
        }
    };

    const int threads = std::max(1, params.threads);
    if (threads == 1 || alpha_grid.size() == 1) {
        for (std::size_t i = 0; i < alpha_grid.size(); ++i) eval_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < alpha_grid.size(); i = next.fetch_add(1))
                eval_point(i);
        };
        std::vector<std::thread> pool;
        const std::size_t n_workers =
            std::min<std::size_t>(threads, alpha_grid.size());
        pool.reserve(n_workers);
        for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // argmin over converged points; exact ties resolve to the smaller alpha
    // because the curve is scanned in ascending order
    const CurvePoint* best = nullptr;
    for (const CurvePoint& pt : report.curve)
        if (pt.converged && (best == nullptr || pt.delta < best->delta)) best = &pt;
    if (best == nullptr) {
        std::string detail = report.curve.front().error;
        throw NonConvergenceError("no alpha on the grid produced a converged fit (first failure: " +
                                      detail + ")",
                                  0, {});
    }
    report.best_alpha = best->alpha;
    report.best_divergence = best->delta;
    return report;
}

RankOutcome rank_embeddings(const Graph& g, const Partition& p,
                            const std::vector<Embedding>& embeddings,
                            const std::vector<double>& alpha_grid, const ScoreParams& params) {
    if (embeddings.empty()) throw std::invalid_argument("rank_embeddings: no embeddings given");
    RankOutcome out;
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        try {
            out.ranking.push_back({i, divergence_score(g, p, embeddings[i], alpha_grid, params)});
        } catch (const NonConvergenceError& err) {
            out.failures.emplace_back(i, err.what());
        }
    }
    std::stable_sort(out.ranking.begin(), out.ranking.end(),
                     [](const RankEntry& a, const RankEntry& b) {
                         return a.report.best_divergence < b.report.best_divergence;
                     });
    return out;
}

namespace {

template <typename Id>
double kendall_tau_impl(const std::vector<Id>& order_a, const std::vector<Id>& order_b) {
    if (order_a.size() != order_b.size())
        throw std::invalid_argument("kendall_tau: orders have different lengths");
    const std::size_t n = order_a.size();
    std::unordered_map<Id, std::size_t> pos_b;
    pos_b.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!pos_b.emplace(order_b[i], i).second)
            throw std::invalid_argument("kendall_tau: duplicate id in second order");
    std::unordered_set<Id> seen_a;
    seen_a.reserve(n);
    std::vector<std::size_t> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen_a.insert(order_a[i]).second)
            throw std::invalid_argument("kendall_tau: duplicate id in first order");
        auto it = pos_b.find(order_a[i]);
        if (it == pos_b.end())
            throw std::invalid_argument("kendall_tau: id sets do not match");
        ranks[i] = it->second;
    }
    if (n < 2) return 1.0;  // zero pairs; identical trivial orders

    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            (ranks[i] < ranks[j] ? concordant : discordant)++;
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

}  // namespace

double kendall_tau(const std::vector<std::string>& order_a, const std::vector<std::string>& order_b) {
    return kendall_tau_impl(order_a, order_b);
}

double kendall_tau(const std::vector<int>& order_a, const std::vector<int>& order_b) {
    return kendall_tau_impl(order_a, order_b);
}

std::string score_report_json(const ScoreReport& report, const std::string& embedding_name) {
    nlohmann::json j;
    j["embedding"] = embedding_name;
    j["best_alpha"] = report.best_alpha;
    j["divergence"] = report.best_divergence;
    auto curve = nlohmann::json::array();
    for (const CurvePoint& pt : report.curve) {
        nlohmann::json jp;
        jp["alpha"] = pt.alpha;
        if (pt.converged) {
            jp["delta"] = pt.delta;
            jp["jsd_internal"] = pt.jsd_internal;
            jp["jsd_external"] = pt.jsd_external;
            jp["fit_iters"] = pt.fit.iterations;
        } else {
            jp["error"] = pt.error;
        }
        curve.push_back(std::move(jp));
    }
    j["curve"] = std::move(curve);
    return j.dump();
}

}  // namespace gclscore
