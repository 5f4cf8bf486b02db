#include <doctest.h>

#include "ribe/common.hpp"
#include "ribe/graph.hpp"

using namespace ribe;

TEST_CASE("gen_tree vertex counts") {
    CHECK(gen_tree(3, 1).num_vertices() == 4);
    CHECK(gen_tree(3, 2).num_vertices() == 10);
    CHECK(gen_tree(4, 2).num_vertices() == 17);
    CHECK_THROWS_AS(gen_tree(2, 3), Error);
}

TEST_CASE("gen_tree degrees") {
    Graph t = gen_tree(3, 3);
    CHECK(t.degree(0) == 3);
    for (int v = 1; v < t.num_vertices(); ++v) {
        int d = t.degree(v);
        CHECK((d == 3 || d == 1));
    }
    CHECK(girth(t) == kInfiniteGirth);
}

TEST_CASE("gen_laakso structure") {
    Graph g0 = gen_laakso(0);
    CHECK(g0.num_vertices() == 2);
    CHECK(g0.num_edges() == 1);

    Graph g1 = gen_laakso(1);
    CHECK(g1.num_vertices() == 6);
    CHECK(g1.num_edges() == 6);

    CHECK(gen_laakso(2).num_edges() == 36);
}

TEST_CASE("gen_laakso endpoint distance is 4^k") {
    for (int k = 0; k <= 3; ++k) {
        Graph g = gen_laakso(k);
        std::vector<int> dist = bfs_distances(g, 0);
        int expect = 1;
        for (int i = 0; i < k; ++i) expect *= 4;
        CHECK(dist[1] == expect);
    }
}

TEST_CASE("gen_laakso arc orientation spans every edge") {
    std::vector<std::pair<int, int>> arcs;
    Graph g = gen_laakso(2, &arcs);
    CHECK(static_cast<int>(arcs.size()) == g.num_edges());
    for (auto [u, v] : arcs) CHECK(g.has_edge(u, v));
}

TEST_CASE("gen_named fixtures") {
    Graph p = gen_named("petersen");
    CHECK(p.num_vertices() == 10);
    CHECK(p.num_edges() == 15);
    CHECK(girth(p) == 5);

    Graph h = gen_named("heawood");
    CHECK(h.num_vertices() == 14);
    CHECK(girth(h) == 6);

    Graph t = gen_named("tutte_coxeter");
    CHECK(t.num_vertices() == 30);
    CHECK(girth(t) == 8);

    CHECK(girth(gen_named("cycle(5)")) == 5);
    CHECK(girth(gen_named("cycle(7)")) == 7);
    CHECK(gen_named("torus(4,4)").num_vertices() == 16);
    CHECK_THROWS_AS(gen_named("zauberwald"), Error);
}

TEST_CASE("cages are 3-regular") {
    for (const char* name : {"petersen", "heawood", "tutte_coxeter"}) {
        int deg = 0;
        CHECK(gen_named(name).is_regular(&deg));
        CHECK(deg == 3);
    }
}

TEST_CASE("gen_random_regular meets degree and girth constraints") {
    Graph g = gen_random_regular(10, 3, 5, 42);
    int deg = 0;
    CHECK(g.is_regular(&deg));
    CHECK(deg == 3);
    CHECK(girth(g) >= 5);
    CHECK(g.is_connected());
}

TEST_CASE("gen_random_regular is reproducible per seed") {
    Graph a = gen_random_regular(20, 4, 4, 7);
    Graph b = gen_random_regular(20, 4, 4, 7);
    REQUIRE(a.num_edges() == b.num_edges());
    for (int e = 0; e < a.num_edges(); ++e) {
        CHECK(a.edges()[e].u == b.edges()[e].u);
        CHECK(a.edges()[e].v == b.edges()[e].v);
    }
}

TEST_CASE("gen_random_regular small cases") {
    // only one simple 3-regular graph on 4 vertices
    Graph k4 = gen_random_regular(4, 3, 3, 1);
    CHECK(k4.num_edges() == 6);
    CHECK(girth(k4) == 3);
    // girth filter >= 4 on 6 vertices forces K_{3,3}
    Graph k33 = gen_random_regular(6, 3, 4, 1);
    CHECK(k33.num_edges() == 9);
    CHECK(girth(k33) == 4);
}

TEST_CASE("graph file round trip") {
    Graph g = gen_named("petersen");
    save_graph("test_graph_rt.txt", g);
    Graph h = load_graph("test_graph_rt.txt");
    REQUIRE(h.num_vertices() == g.num_vertices());
    REQUIRE(h.num_edges() == g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        CHECK(h.edges()[e].u == g.edges()[e].u);
        CHECK(h.edges()[e].v == g.edges()[e].v);
    }
}
