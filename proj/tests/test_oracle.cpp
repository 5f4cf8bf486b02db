#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "ribe/common.hpp"
#include "ribe/oracle.hpp"

using namespace ribe;

TEST_CASE("lca index matches the naive walk") {
    for (std::uint64_t seed : {1, 6}) {
        HstTree t = ribe_test::random_hst(200, seed);
        LcaIndex idx = build_lca(t);
        SplitMix64 rng(seed);
        for (int q = 0; q < 5000; ++q) {
            int a = t.leaf_of(static_cast<int>(rng.next_below(200)));
            int b = t.leaf_of(static_cast<int>(rng.next_below(200)));
            int probes = 0;
            CHECK(idx.lca_probed(a, b, probes) == t.naive_lca(a, b));
            CHECK(probes <= 8);
        }
    }
}

TEST_CASE("lca of a two-leaf tree is the root") {
    HstTree t = hst_from_ultrametric(FiniteMetric(2, {1.0}));
    LcaIndex idx = build_lca(t);
    CHECK(idx.lca(t.leaf_of(0), t.leaf_of(1)) == t.root());
}

TEST_CASE("oracle levels partition the points") {
    FiniteMetric m = ribe_test::random_euclidean(96, 3, 12);
    OracleStructure o = build_oracle(m, 0.5, 12);
    std::vector<int> count(96, 0);
    std::size_t total = 0;
    for (const auto& lvl : o.levels) {
        total += lvl.subset.size();
        for (int x : lvl.subset) ++count[x];
    }
    CHECK(total == 96);
    for (int c : count) CHECK(c == 1);
    for (int x = 0; x < 96; ++x) {
        REQUIRE(o.level_of[x] >= 0);
        const auto& lvl = o.levels[o.level_of[x]];
        CHECK(std::find(lvl.subset.begin(), lvl.subset.end(), x) != lvl.subset.end());
    }
}

TEST_CASE("tiny oracles") {
    FiniteMetric one(1, {});
    OracleStructure o1 = build_oracle(one, 0.5, 1);
    CHECK(o1.levels.size() == 1);
    CHECK(o1.levels[0].subset == std::vector<int>{0});

    FiniteMetric two(2, {5.0});
    OracleStructure o2 = build_oracle(two, 0.25, 1);
    double e = query_distance(o2, 0, 1);
    CHECK(e >= 5.0);
    CHECK(e <= o2.certified_distortion * 5.0);
    CHECK(query_distance(o2, 1, 1) == 0.0);
}

TEST_CASE("exhaustive sandwich and symmetry") {
    for (std::uint64_t seed : {4, 9}) {
        FiniteMetric m = ribe_test::random_euclidean(80, 4, seed);
        OracleStructure o = build_oracle(m, 0.5, seed);
        for (int i = 0; i < 80; ++i)
            for (int j = i + 1; j < 80; ++j) {
                double e = query_distance(o, i, j);
                CHECK(e == query_distance(o, j, i));
                CHECK(e >= m(i, j) * (1 - 1e-12));
                CHECK(e <= o.certified_distortion * m(i, j) * (1 + 1e-12));
            }
    }
}

TEST_CASE("query probe budget") {
    FiniteMetric m = ribe_test::random_euclidean(64, 3, 7);
    OracleStructure o = build_oracle(m, 0.5, 7);
    for (int i = 0; i < 64; ++i)
        for (int j = i + 1; j < 64; ++j) {
            int probes = 0;
            query_distance_probed(o, i, j, probes);
            CHECK(probes <= 24);  // lca portion <= 8 plus fixed bookkeeping
        }
}

TEST_CASE("oracle dump determinism and round trip") {
    FiniteMetric m = ribe_test::random_euclidean(48, 3, 5);
    OracleStructure o = build_oracle(m, 0.5, 5);
    RankingStructure r = build_ranking(o, m);
    std::stringstream a, b;
    write_oracle(a, o, r);
    write_oracle(b, build_oracle(m, 0.5, 5), r);
    CHECK(a.str() == b.str());

    std::stringstream in(a.str());
    OracleStructure o2;
    RankingStructure r2;
    read_oracle(in, o2, r2);
    for (int i = 0; i < 48; ++i)
        for (int j = i + 1; j < 48; ++j)
            CHECK(query_distance(o2, i, j) == query_distance(o, i, j));
    for (int x = 0; x < 48; ++x)
        for (int i = 1; i <= 48; ++i) CHECK(rank_query(r2, x, i) == rank_query(r, x, i));

    std::stringstream out2;
    write_oracle(out2, o2, r2);
    CHECK(out2.str() == a.str());
}

TEST_CASE("ranking basics") {
    FiniteMetric m(3, {1.0, 10.0, 10.0});
    OracleStructure o = build_oracle(m, 0.5, 3);
    RankingStructure r = build_ranking(o, m);
    for (int x = 0; x < 3; ++x) {
        CHECK(rank_query(r, x, 1) == x);
        CHECK(rank_inverse(r, x, x) == 1);
        for (int i = 1; i <= 3; ++i) CHECK(rank_inverse(r, x, rank_query(r, x, i)) == i);
    }
    CHECK_THROWS_AS(rank_query(r, 0, 0), Error);
    CHECK_THROWS_AS(rank_query(r, 0, 4), Error);
    // factor-F monotonicity on the hand metric
    for (int x = 0; x < 3; ++x)
        for (int i = 1; i < 3; ++i)
            for (int j = i + 1; j <= 3; ++j)
                CHECK(m(x, rank_query(r, x, i)) <= r.factor * m(x, rank_query(r, x, j)) + 1e-12);
}

TEST_CASE("order arrays are permutations") {
    FiniteMetric m = ribe_test::random_euclidean(32, 2, 8);
    OracleStructure o = build_oracle(m, 0.25, 8);
    RankingStructure r = build_ranking(o, m);
    CHECK(r.factor == doctest::Approx(6.0 * 128.0 / 0.25));
    for (int x = 0; x < 32; ++x) {
        std::vector<char> seen(32, 0);
        for (int i = 1; i <= 32; ++i) seen[rank_query(r, x, i)] = 1;
        for (char c : seen) CHECK(c == 1);
    }
}
