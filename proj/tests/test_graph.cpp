#include <sstream>

#include "doctest.h"
#include "gclscore/errors.hpp"
#include "gclscore/graph.hpp"
#include "gclscore/random.hpp"
#include "support.hpp"

using namespace gclscore;

TEST_CASE("parse_edge_list builds simple undirected graphs") {
    SUBCASE("triangle") {
        Graph g = parse_edge_list("1 2\n2 3\n3 1");
        CHECK(g.vertex_count() == 3);
        CHECK(g.edge_count() == 3);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(1, 0));
    }
    SUBCASE("duplicates, reciprocals and self-loops collapse") {
        Graph g = parse_edge_list("a b\nb a\na a");
        CHECK(g.vertex_count() == 2);
        CHECK(g.edge_count() == 1);
        CHECK(g.label(0) == "a");
        CHECK(g.label(1) == "b");
    }
    SUBCASE("comments, blank lines and tabs") {
        Graph g = parse_edge_list("# header\n\nx\ty\n  # indented comment\ny z\n");
        CHECK(g.vertex_count() == 3);
        CHECK(g.edge_count() == 2);
    }
    SUBCASE("labels keep first-appearance order") {
        Graph g = parse_edge_list("z y\nx z\n");
        CHECK(g.label(0) == "z");
        CHECK(g.label(1) == "y");
        CHECK(g.label(2) == "x");
    }
    SUBCASE("malformed line reports its number") {
        CHECK_THROWS_AS(parse_edge_list("1 2\n1 2 3\n"), ParseError);
        try {
            parse_edge_list("1 2\n\n1 2 3\n");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_edge_list("lonely\n"), ParseError);
    }
    SUBCASE("directed hint parses to the same graph") {
        Graph a = parse_edge_list("1 2\n2 1\n2 3\n", false);
        Graph b = parse_edge_list("1 2\n2 1\n2 3\n", true);
        CHECK(a.edge_count() == b.edge_count());
        CHECK(a.edges() == b.edges());
    }
}

TEST_CASE("karate dataset parses to 34 vertices and 78 edges") {
    Graph g = testsupport::load_karate();
    CHECK(g.vertex_count() == 34);
    CHECK(g.edge_count() == 78);
    // the instructor, vertex "1", knows 16 members
    REQUIRE(g.label(0) == "1");
    CHECK(g.degree(0) == 16);
}

TEST_CASE("degree_sequence") {
    CHECK(degree_sequence(parse_edge_list("1 2\n2 3\n3 1")) == std::vector<int>{2, 2, 2});
    CHECK(degree_sequence(testsupport::star_graph(4)) == std::vector<int>{4, 1, 1, 1, 1});
}

TEST_CASE("handshake identity on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(40));
        std::ostringstream ss;
        for (int e = 0; e < 3 * n; ++e)
            ss << rng.below(n) << ' ' << rng.below(n) << '\n';
        Graph g = parse_edge_list(ss.str());
        long long sum = 0;
        for (int d : degree_sequence(g)) sum += d;
        CHECK(sum == 2 * static_cast<long long>(g.edge_count()));
    }
}

TEST_CASE("edge list round-trips") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(30));
        std::ostringstream ss;
        for (int e = 0; e < 2 * n; ++e)
            ss << "v" << rng.below(n) << " v" << rng.below(n) << '\n';
        Graph g = parse_edge_list(ss.str());
        if (g.edge_count() == 0) continue;
        std::ostringstream out;
        write_edge_list(out, g);
        Graph h = parse_edge_list(out.str());
        REQUIRE(h.vertex_count() == g.vertex_count());
        CHECK(h.edges() == g.edges());
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(h.label(v) == g.label(v));
    }
}

TEST_CASE("graph_json schema") {
    Graph g = parse_edge_list("a b\nb c\n");
    CHECK(graph_json(g) == R"({"edges":[[0,1],[1,2]],"m":2,"n":3})");
}

TEST_CASE("largest_connected_component") {
    SUBCASE("triangle plus isolated vertex") {
        // the isolated vertex only appears in a dropped self-loop line
        Graph g = parse_edge_list("1 2\n2 3\n3 1\nloner loner\n");
        REQUIRE(g.vertex_count() == 4);
        Graph lcc = largest_connected_component(g);
        CHECK(lcc.vertex_count() == 3);
        CHECK(lcc.edge_count() == 3);
    }
    SUBCASE("tie breaks toward the component holding the smallest index") {
        Graph g = parse_edge_list("a b\nb c\nc a\nx y\ny z\nz x\n");
        Graph lcc = largest_connected_component(g);
        REQUIRE(lcc.vertex_count() == 3);
        CHECK(lcc.label(0) == "a");
    }
    SUBCASE("output is connected") {
        Rng rng(21);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 4 + static_cast<int>(rng.below(40));
            std::ostringstream ss;
            for (int e = 0; e < n; ++e)
                ss << rng.below(n) << ' ' << rng.below(n) << '\n';
            Graph g = parse_edge_list(ss.str());
            if (g.vertex_count() == 0) continue;
            CHECK(largest_connected_component(g).connected());
        }
    }
    SUBCASE("empty graph is rejected") {
        CHECK_THROWS_AS(largest_connected_component(Graph{}), std::invalid_argument);
    }
}
