#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "ribe/common.hpp"
#include "ribe/skeleton.hpp"

using namespace ribe;

TEST_CASE("trivial skeletons") {
    FiniteMetric one(1, {});
    SkeletonResult s1 = extract_skeleton(one, 0.5, 1);
    REQUIRE(s1.subset.size() == 1);
    CHECK(s1.subset[0] == 0);

    FiniteMetric two(2, {3.0});
    SkeletonResult s2 = extract_skeleton(two, 0.25, 1);
    CHECK(s2.subset.size() == 2);
    CHECK(ultra_distance(s2.tree, 0, 1) == 3.0);
    CHECK(s2.measured_max_ratio == doctest::Approx(1.0));
}

TEST_CASE("epsilon domain") {
    FiniteMetric two(2, {1.0});
    CHECK_THROWS_AS(extract_skeleton(two, 0.0, 1), Error);
    CHECK_THROWS_AS(extract_skeleton(two, 1.0, 1), Error);
}

TEST_CASE("domination and certified distortion on S-pairs") {
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        FiniteMetric m = ribe_test::random_euclidean(64, 4, seed);
        SkeletonResult s = extract_skeleton(m, 0.5, seed);
        std::vector<char> in_s(64, 0);
        for (int x : s.subset) in_s[x] = 1;
        CHECK(!s.subset.empty());
        for (int i = 0; i < 64; ++i)
            for (int j = i + 1; j < 64; ++j) {
                double rho = ultra_distance(s.tree, i, j);
                CHECK(rho >= m(i, j) - 1e-9 * m(i, j));
                if (in_s[i] || in_s[j]) CHECK(rho <= s.certified_distortion * m(i, j) * (1 + 1e-9));
            }
        CHECK(s.measured_max_ratio <= s.certified_distortion);
    }
}

TEST_CASE("per-seed determinism") {
    FiniteMetric m = ribe_test::random_euclidean(40, 3, 6);
    SkeletonResult a = extract_skeleton(m, 0.5, 17);
    SkeletonResult b = extract_skeleton(m, 0.5, 17);
    CHECK(a.subset == b.subset);
    for (int i = 0; i < 40; ++i)
        for (int j = i + 1; j < 40; ++j)
            CHECK(ultra_distance(a.tree, i, j) == ultra_distance(b.tree, i, j));
}

TEST_CASE("skeleton file round trip") {
    FiniteMetric m = ribe_test::random_euclidean(25, 3, 2);
    SkeletonResult s = extract_skeleton(m, 0.5, 9);
    std::stringstream ss;
    write_skeleton(ss, s);
    SkeletonResult r = read_skeleton(ss);
    CHECK(r.subset == s.subset);
    CHECK(r.epsilon == s.epsilon);
    CHECK(r.seed == s.seed);
    CHECK(r.certified_distortion == s.certified_distortion);
    for (int i = 0; i < 25; ++i)
        for (int j = i + 1; j < 25; ++j)
            CHECK(ultra_distance(r.tree, i, j) == ultra_distance(s.tree, i, j));
}

TEST_CASE("extend_ultrametric hand example") {
    // S = {0,1}, d(0,1) = 2, extra point at distance 1 from both
    FiniteMetric m(3, {2.0, 1.0, 1.0});
    FiniteMetric rho0(2, {2.0});
    FiniteMetric rho = extend_ultrametric(m, {0, 1}, rho0, 1.0);
    CHECK(rho(0, 1) == 2.0);
    CHECK(rho(2, 0) == 2.0);
    CHECK(rho(2, 1) == 2.0);
}

TEST_CASE("extend_ultrametric with S = all points returns rho0") {
    FiniteMetric u = ribe_test::random_ultrametric(20, 4);
    std::vector<int> all(20);
    for (int i = 0; i < 20; ++i) all[i] = i;
    FiniteMetric rho = extend_ultrametric(u, all, u, 2.0);
    for (int i = 0; i < 20; ++i)
        for (int j = i + 1; j < 20; ++j) CHECK(rho(i, j) == u(i, j));
}

TEST_CASE("extend_ultrametric rejects bad rho0") {
    FiniteMetric m(3, {2.0, 1.0, 1.0});
    // not an ultrametric on S = {0,1,2}: 1,1,2 violates nothing; use sandwich break
    FiniteMetric too_small(2, {0.5});
    CHECK_THROWS_AS(extend_ultrametric(m, {0, 1}, too_small, 1.0), Error);
}

TEST_CASE("extension properties on skeleton instances") {
    for (std::uint64_t seed : {3, 8}) {
        FiniteMetric m = ribe_test::random_euclidean(48, 3, seed);
        SkeletonResult s = extract_skeleton(m, 0.5, seed);
        FiniteMetric rho0 = induced_metric(s.tree).restrict(s.subset);
        double D = s.certified_distortion;
        FiniteMetric rho = extend_ultrametric(m, s.subset, rho0, D);
        int n = m.size();
        std::vector<int> rank_in_s(n, -1);
        for (std::size_t k = 0; k < s.subset.size(); ++k) rank_in_s[s.subset[k]] = static_cast<int>(k);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                CHECK(rho(i, j) >= m(i, j) / 3.0 - 1e-9);
                if (rank_in_s[i] >= 0 || rank_in_s[j] >= 0)
                    CHECK(rho(i, j) <= 2.0 * D * m(i, j) * (1 + 1e-9));
                if (rank_in_s[i] >= 0 && rank_in_s[j] >= 0)
                    CHECK(rho(i, j) == rho0(rank_in_s[i], rank_in_s[j]));
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    CHECK(rho(i, j) <= std::max(rho(i, k), rho(j, k)) * (1 + 1e-12));
        // unchecked variant computes the same map
        FiniteMetric fast = extend_ultrametric_unchecked(m, s.subset, rho0, D);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(fast(i, j) == rho(i, j));
    }
}
