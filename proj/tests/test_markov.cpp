#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "ribe/common.hpp"
#include "ribe/markov.hpp"

using namespace ribe;

namespace {

std::vector<int> identity_map(int n) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) f[i] = i;
    return f;
}

MarkovChain random_reversible(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) W(i, j) = W(j, i) = 0.05 + rng.next_double();
    Eigen::VectorXd row = W.rowwise().sum();
    Eigen::SparseMatrix<double, Eigen::RowMajor> A(n, n);
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) trip.emplace_back(i, j, W(i, j) / row(i));
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd pi = row / row.sum();
    return make_chain(A, pi, pi, true);
}

}

TEST_CASE("make_chain validation") {
    Eigen::SparseMatrix<double, Eigen::RowMajor> A(2, 2);
    A.insert(0, 1) = 1.0;
    A.insert(1, 0) = 1.0;
    Eigen::VectorXd pi(2);
    pi << 0.5, 0.5;
    CHECK_NOTHROW(make_chain(A, pi, pi, true));
    Eigen::VectorXd bad(2);
    bad << 0.9, 0.1;
    CHECK_THROWS_AS(make_chain(A, bad, bad, true), Error);
}

TEST_CASE("stationary_walk distributions") {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    MarkovChain c = stationary_walk(path);
    CHECK(c.pi(0) == doctest::Approx(0.25));
    CHECK(c.pi(1) == doctest::Approx(0.5));
    CHECK(c.pi(2) == doctest::Approx(0.25));

    MarkovChain p = stationary_walk(gen_named("petersen"));
    for (int i = 0; i < 10; ++i) CHECK(p.pi(i) == doctest::Approx(0.1));
    CHECK(p.reversible);
}

TEST_CASE("subset_walk") {
    Graph g = gen_named("cycle(6)");
    std::vector<int> all{0, 1, 2, 3, 4, 5};
    MarkovChain w = subset_walk(g, all, 3);  // antipodal matching
    for (int i = 0; i < 6; ++i) {
        CHECK(w.pi(i) == doctest::Approx(1.0 / 6.0));
        CHECK(w.A.coeff(i, (i + 3) % 6) == doctest::Approx(1.0));
    }
    MarkovChain s = subset_walk(g, all, 1);
    MarkovChain ref = stationary_walk(g);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(s.A.coeff(i, j) == doctest::Approx(ref.A.coeff(i, j)));
    CHECK_THROWS_AS(subset_walk(g, {0, 1}, 3), Error);
}

TEST_CASE("smallest_admissible_m") {
    int m = smallest_admissible_m(10, 1000, 900);
    if (m != -1) {
        CHECK(m % 6 == 0);
        CHECK(m > 0);
    }
    CHECK(smallest_admissible_m(3, 1000000, 1, 12) == -1);
}

TEST_CASE("markov_type_ratio basics") {
    MarkovChain c = random_reversible(6, 3);
    FiniteMetric m = ribe_test::random_euclidean(6, 3, 3);
    CHECK(markov_type_ratio(c, m, identity_map(6), 2.0, 1) == doctest::Approx(1.0));

    // two-state flip chain: A^2 = I
    Eigen::SparseMatrix<double, Eigen::RowMajor> A(2, 2);
    A.insert(0, 1) = 1.0;
    A.insert(1, 0) = 1.0;
    Eigen::VectorXd pi(2);
    pi << 0.5, 0.5;
    MarkovChain flip = make_chain(A, pi, pi, true);
    FiniteMetric two(2, {1.0});
    CHECK(markov_type_ratio(flip, two, identity_map(2), 2.0, 2) == doctest::Approx(0.0));
}

TEST_CASE("Euclidean images have Markov type 2 with constant 1") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        MarkovChain c = random_reversible(n, seed);
        FiniteMetric m = ribe_test::random_euclidean(n, 5, seed + 100);
        for (int t = 1; t <= 20; ++t)
            CHECK(markov_type_ratio(c, m, identity_map(n), 2.0, t) <= 1.0 + 1e-9);
    }
}

TEST_CASE("distortion_lower_bound") {
    Graph c4 = gen_named("cycle(4)");
    MarkovChain c = stationary_walk(c4);
    FiniteMetric m = metric_from_graph(c4);
    double b = distortion_lower_bound(c, m, 2.0, 1.0, 2);
    CHECK(b >= 1.0);
    // scale invariance
    std::vector<double> scaled = m.raw();
    for (double& d : scaled) d *= 7.0;
    FiniteMetric ms = FiniteMetric::trusted(4, scaled);
    CHECK(distortion_lower_bound(c, ms, 2.0, 1.0, 2) == doctest::Approx(b));
}

TEST_CASE("drift_profile closed forms") {
    Graph q2(4);  // 2-cube as a 4-cycle in hypercube labeling 00,01,10,11
    q2.add_edge(0, 1);
    q2.add_edge(0, 2);
    q2.add_edge(1, 3);
    q2.add_edge(2, 3);
    MarkovChain c = stationary_walk(q2);
    FiniteMetric m = gen_hypercube(2);
    auto prof = drift_profile(c, m, 4);
    CHECK(prof[0] == 0.0);
    int n = 2;
    for (int t = 1; t <= 4; ++t) {
        double expect = 2.0 * (n / 2.0) * (1.0 - std::pow(1.0 - 2.0 / n, t));
        CHECK(prof[t] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("outward tree chain") {
    std::vector<int> parent;
    MarkovChain c = outward_tree_chain(3, 2, &parent);
    REQUIRE(c.states() == 10);
    CHECK(parent[0] == -1);
    // Pr[Z_2 = given depth-2 leaf] = 1/3 * 1/2
    Eigen::VectorXd q = c.start.transpose() * c.A * c.A;
    for (int v = 0; v < 10; ++v)
        if (parent[v] != -1 && parent[parent[v]] != -1) CHECK(q(v) == doctest::Approx(1.0 / 6.0));
    // rows sum to 1
    for (int i = 0; i < c.states(); ++i) {
        double s = 0;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(c.A, i); it; ++it)
            s += it.value();
        CHECK(s == doctest::Approx(1.0));
    }
}

TEST_CASE("laakso chain reaches the right end") {
    MarkovChain c = laakso_chain(1);
    CHECK(c.states() == 6);
    Eigen::VectorXd q = c.start;
    for (int t = 0; t < 4; ++t) q = (q.transpose() * c.A).transpose();
    CHECK(q(1) == doctest::Approx(1.0));  // vertex 1 is the rightmost
}

TEST_CASE("convexity functional on a tree agrees with the generic path") {
    std::vector<int> parent;
    MarkovChain c = outward_tree_chain(4, 3, &parent);
    ConvexityResult fast = markov_convexity_tree(c, parent, 3);
    FiniteMetric m = metric_from_graph(gen_tree(4, 3));
    ConvexityResult slow = markov_convexity_functional(c, m, identity_map(c.states()), 2.0, 3);
    CHECK(fast.lhs == doctest::Approx(slow.lhs).epsilon(1e-12));
    CHECK(fast.rhs == doctest::Approx(slow.rhs).epsilon(1e-12));
    CHECK(fast.pi_lower == doctest::Approx(slow.pi_lower).epsilon(1e-12));
}

TEST_CASE("convexity degenerate cases") {
    std::vector<int> parent;
    MarkovChain c = outward_tree_chain(3, 2, &parent);
    FiniteMetric m = metric_from_graph(gen_tree(3, 2));
    std::vector<int> constant(c.states(), 0);
    CHECK_THROWS_AS(markov_convexity_functional(c, m, constant, 2.0, 2), Error);
}

TEST_CASE("doubling T never decreases the convexity lhs") {
    std::vector<int> parent;
    MarkovChain c = outward_tree_chain(3, 4, &parent);
    ConvexityResult a = markov_convexity_tree(c, parent, 2);
    ConvexityResult b = markov_convexity_tree(c, parent, 4);
    CHECK(b.lhs >= a.lhs - 1e-12);
}

TEST_CASE("chain file round trip") {
    MarkovChain c = stationary_walk(gen_named("petersen"));
    std::stringstream ss;
    write_chain(ss, c);
    MarkovChain r = read_chain(ss);
    REQUIRE(r.states() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(r.pi(i) == doctest::Approx(c.pi(i)).epsilon(1e-12));
        for (int j = 0; j < 10; ++j)
            CHECK(r.A.coeff(i, j) == doctest::Approx(c.A.coeff(i, j)).epsilon(1e-12));
    }
    CHECK(r.reversible);
}
