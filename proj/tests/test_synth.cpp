#include <cmath>

#include "doctest.h"
#include "gclscore/embedding.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/synth.hpp"
#include "support.hpp"

using namespace gclscore;

TEST_CASE("planted_partition") {
    SUBCASE("spec validation") {
        CHECK_THROWS_AS(planted_partition({.n = 10, .clusters = 2, .p_in = 0.2, .p_out = 0.5, .seed = 1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(planted_partition({.n = 3, .clusters = 5, .p_in = 0.5, .p_out = 0.1, .seed = 1}),
                        std::invalid_argument);
        CHECK_THROWS_AS(planted_partition({.n = 10, .clusters = 2, .p_in = 1.2, .p_out = 0.1, .seed = 1}),
                        std::invalid_argument);
    }
    SUBCASE("ground truth has exactly the requested non-empty clusters") {
        auto [g, p] = planted_partition({.n = 23, .clusters = 4, .p_in = 0.7, .p_out = 0.2, .seed = 3});
        CHECK(p.cluster_count == 4);
        auto sizes = p.clusters();
        int total = 0;
        for (const auto& c : sizes) {
            CHECK_FALSE(c.empty());
            CHECK(static_cast<int>(c.size()) >= 23 / 4);
            CHECK(static_cast<int>(c.size()) <= 23 / 4 + 1);
            total += static_cast<int>(c.size());
        }
        CHECK(total == 23);
        CHECK(g.connected());
    }
    SUBCASE("single cluster degenerates to a plain random graph") {
        auto [g, p] = planted_partition({.n = 40, .clusters = 1, .p_in = 0.3, .p_out = 0.0, .seed = 7});
        CHECK(p.cluster_count == 1);
        // edge count near the binomial mean 0.3 * C(40,2) = 234
        CHECK(g.edge_count() > 160);
        CHECK(g.edge_count() < 310);
    }
    SUBCASE("two perfect cliques can never connect and are rejected") {
        CHECK_THROWS_AS(planted_partition({.n = 12, .clusters = 2, .p_in = 1.0, .p_out = 0.0, .seed = 5}),
                        std::runtime_error);
    }
    SUBCASE("bit-identical reruns") {
        auto [g1, p1] = planted_partition({.n = 30, .clusters = 3, .p_in = 0.5, .p_out = 0.05, .seed = 11});
        auto [g2, p2] = planted_partition({.n = 30, .clusters = 3, .p_in = 0.5, .p_out = 0.05, .seed = 11});
        CHECK(g1.edges() == g2.edges());
        CHECK(p1.assignment == p2.assignment);
        auto [g3, p3] = planted_partition({.n = 30, .clusters = 3, .p_in = 0.5, .p_out = 0.05, .seed = 12});
        CHECK(g1.edges() != g3.edges());
    }
    SUBCASE("internal edge share stays high over 20 seeds") {
        // expectation: 570 within-pairs * 0.4 vs 1200 cross-pairs * 0.02
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto [g, p] =
                planted_partition({.n = 60, .clusters = 3, .p_in = 0.4, .p_out = 0.02, .seed = seed});
            long long internal = 0;
            for (auto [u, v] : g.edges())
                if (p.assignment[u] == p.assignment[v]) ++internal;
            const double share = static_cast<double>(internal) / static_cast<double>(g.edge_count());
            CHECK(share >= 0.8);
        }
    }
}

TEST_CASE("structured_embedding") {
    auto [g, p] = planted_partition({.n = 40, .clusters = 2, .p_in = 0.5, .p_out = 0.1, .seed = 2});
    SUBCASE("spread zero collapses clusters onto separated centers") {
        Embedding e = structured_embedding(p, 2, 10.0, 0.0, 1);
        for (int i = 0; i < 40; ++i)
            for (int j = i + 1; j < 40; ++j) {
                const double d = distance(e, i, j);
                if (p.assignment[i] == p.assignment[j])
                    CHECK(d == 0.0);
                else
                    CHECK(d >= 10.0 - 1e-9);
            }
    }
    SUBCASE("well-separated clusters: every cross distance beats every intra distance") {
        Embedding e = structured_embedding(p, 2, 10.0, 1.0, 3);
        double max_intra = 0.0, min_cross = 1e300;
        for (int i = 0; i < 40; ++i)
            for (int j = i + 1; j < 40; ++j) {
                const double d = distance(e, i, j);
                if (p.assignment[i] == p.assignment[j])
                    max_intra = std::max(max_intra, d);
                else
                    min_cross = std::min(min_cross, d);
            }
        CHECK(min_cross > max_intra);
    }
    SUBCASE("separation zero is one cloud") {
        Embedding e = structured_embedding(p, 2, 0.0, 1.0, 4);
        // centers coincide; nothing says clusters stay apart
        CHECK(e.size() == 40);
        CHECK(e.dim() == 2);
    }
    SUBCASE("deterministic per seed, dim validated") {
        Embedding a = structured_embedding(p, 3, 5.0, 1.0, 9);
        Embedding b = structured_embedding(p, 3, 5.0, 1.0, 9);
        CHECK(a.coords() == b.coords());
        CHECK_THROWS_AS(structured_embedding(p, 1, 5.0, 1.0, 9), std::invalid_argument);
    }
}

TEST_CASE("random_embedding") {
    Embedding e = random_embedding(100, 2, 5);
    SUBCASE("coordinates live in the unit cube") {
        for (double c : e.coords()) {
            CHECK(c >= 0.0);
            CHECK(c < 1.0);
        }
    }
    SUBCASE("different seeds differ, equal seeds agree") {
        CHECK(random_embedding(100, 2, 5).coords() == e.coords());
        CHECK(random_embedding(100, 2, 6).coords() != e.coords());
    }
    SUBCASE("mean pairwise distance matches the unit-square constant") {
        // E[dist] for two uniform points in the unit square is about 0.5214
        double sum = 0.0;
        long long pairs = 0;
        for (int i = 0; i < 100; ++i)
            for (int j = i + 1; j < 100; ++j) {
                sum += distance(e, i, j);
                ++pairs;
            }
        CHECK(sum / static_cast<double>(pairs) == doctest::Approx(0.5214).epsilon(0.1));
    }
}
