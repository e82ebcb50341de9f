#include <set>

#include "doctest.h"
#include "gclscore/clustering.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/random.hpp"
#include "gclscore/synth.hpp"
#include "support.hpp"

using namespace gclscore;

TEST_CASE("brute-force oracle: two triangles joined by a bridge split into the triangles") {
    Graph g = testsupport::two_triangles_bridge();
    auto [best, best_q] = testsupport::best_partition_bruteforce(g);
    // the optimum groups exactly {0,1,2} and {3,4,5}
    CHECK(testsupport::same_grouping(best, {0, 0, 0, 1, 1, 1}));
    CHECK(best_q == doctest::Approx(5.0 / 14.0));

    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Partition p = louvain(g, seed);
        CHECK(p.cluster_count == 2);
        CHECK(testsupport::same_grouping(p.assignment, best));
        CHECK(modularity(g, p) == doctest::Approx(best_q));
    }
}

TEST_CASE("louvain finds no split in a complete graph") {
    Partition p = louvain(testsupport::complete_graph(5), 1);
    CHECK(p.cluster_count == 1);
}

TEST_CASE("louvain on karate reaches modularity >= 0.35 for any seed") {
    Graph g = testsupport::load_karate();
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Partition p = louvain(g, seed);
        CHECK(modularity(g, p) >= 0.35);
        CHECK(modularity(g, p) == doctest::Approx(testsupport::modularity_oracle(g, p.assignment)));
    }
}

TEST_CASE("louvain is deterministic per seed and rejects edgeless graphs") {
    Graph g = testsupport::load_karate();
    Partition a = louvain(g, 42);
    Partition b = louvain(g, 42);
    CHECK(a.assignment == b.assignment);
    CHECK_THROWS_AS(louvain(parse_edge_list("a a\n"), 1), std::invalid_argument);
}

TEST_CASE("louvain beats the singleton baseline") {
    auto [g, truth] = planted_partition({.n = 40, .clusters = 4, .p_in = 0.5, .p_out = 0.05, .seed = 9});
    const double singleton_q = modularity(g, Partition::singletons(g.vertex_count()));
    CHECK(singleton_q <= 0.0);
    CHECK(modularity(g, louvain(g, 3)) >= singleton_q);
}

TEST_CASE("ecg consensus") {
    Graph g = testsupport::two_triangles_bridge();
    SUBCASE("unanimous structure survives the ensemble") {
        Partition p = ecg(g, 16, 7);
        CHECK(p.cluster_count == 2);
        CHECK(testsupport::same_grouping(p.assignment, {0, 0, 0, 1, 1, 1}));
    }
    SUBCASE("ensemble of one equals weighted louvain over the single vote") {
        const std::uint64_t seed = 11;
        auto weights = ecg_vote_weights(g, 1, seed);
        Partition direct = louvain_weighted(g, weights, derive_seed(seed, seed_stream::kEcgFinal));
        Partition viaecg = ecg(g, 1, seed);
        CHECK(viaecg.assignment == direct.assignment);
    }
    SUBCASE("vote weights are floored for bridges") {
        auto weights = ecg_vote_weights(g, 16, 7);
        REQUIRE(weights.size() == g.edge_count());
        for (double w : weights) {
            CHECK(w >= 0.05);
            CHECK(w <= 1.0);
        }
        // the bridge 2-3 straddles the triangles: never voted together
        const auto edges = g.edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e] == std::pair<int, int>{2, 3}) CHECK(weights[e] == doctest::Approx(0.05));
    }
}

TEST_CASE("ecg is stable across master seeds on karate") {
    Graph g = testsupport::load_karate();
    std::vector<Partition> runs;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) runs.push_back(ecg(g, 16, seed));
    double min_ri = 1.0;
    for (std::size_t a = 0; a < runs.size(); ++a)
        for (std::size_t b = a + 1; b < runs.size(); ++b)
            min_ri = std::min(min_ri,
                              testsupport::rand_index(runs[a].assignment, runs[b].assignment));
    CHECK(min_ri >= 0.9);
}

TEST_CASE("ecg output is a valid partition") {
    auto [g, truth] = planted_partition({.n = 50, .clusters = 5, .p_in = 0.5, .p_out = 0.05, .seed = 4});
    Partition p = ecg(g, 8, 2);
    CHECK(p.cluster_count <= g.vertex_count());
    CHECK(p.cluster_count >= 1);
    std::set<int> used(p.assignment.begin(), p.assignment.end());
    CHECK(static_cast<int>(used.size()) == p.cluster_count);  // every cluster non-empty
    CHECK(*used.begin() == 0);
    CHECK(*used.rbegin() == p.cluster_count - 1);
    Partition again = ecg(g, 8, 2);
    CHECK(again.assignment == p.assignment);
}

TEST_CASE("modularity closed forms") {
    CHECK(modularity(testsupport::complete_graph(5), Partition::from_assignment({0, 0, 0, 0, 0})) ==
          doctest::Approx(0.0));
    Graph two = parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    CHECK(modularity(two, Partition::from_assignment({0, 0, 0, 1, 1, 1})) == doctest::Approx(0.5));
}

TEST_CASE("community_strength") {
    Graph two = parse_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    auto strengths = community_strength(two, Partition::from_assignment({0, 0, 0, 1, 1, 1}));
    REQUIRE(strengths.size() == 2);
    CHECK(strengths[0] == doctest::Approx(1.0));
    CHECK(strengths[1] == doctest::Approx(1.0));

    // single vertex with 3 external edges keeps nothing internal
    Graph star = testsupport::star_graph(3);
    auto s = community_strength(star, Partition::from_assignment({0, 1, 1, 1}));
    CHECK(s[0] == doctest::Approx(0.0));

    Graph bridge = testsupport::two_triangles_bridge();
    auto b = community_strength(bridge, Partition::from_assignment({0, 0, 0, 1, 1, 1}));
    CHECK(b[0] == doctest::Approx(6.0 / 7.0));
    CHECK(b[1] == doctest::Approx(6.0 / 7.0));
}

TEST_CASE("partition file round-trip and errors") {
    Graph g = testsupport::load_karate();
    Partition p = testsupport::load_karate_factions(g);
    CHECK(p.cluster_count == 2);

    std::ostringstream out;
    write_partition(out, p, g.labels());
    Partition back = parse_partition(out.str(), g);
    CHECK(back.assignment == p.assignment);

    CHECK_THROWS_AS(parse_partition("1 0\n2 1\n", g), std::invalid_argument);  // 32 missing
    CHECK_THROWS_AS(parse_partition("not-a-pair\n", g), gclscore::ParseError);
}
