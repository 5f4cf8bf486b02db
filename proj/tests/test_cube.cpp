#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ribe/common.hpp"
#include "ribe/cube.hpp"

using namespace ribe;

namespace {

CubeFunction random_cube(int n, int d, std::uint64_t seed) {
    CubeFunction f;
    f.n = n;
    f.d = d;
    SplitMix64 rng(seed);
    f.values.assign(1u << n, std::vector<double>(d));
    for (auto& v : f.values)
        for (auto& c : v) c = 2.0 * rng.next_double() - 1.0;
    return f;
}

CubeFunction character(int n, unsigned A) {
    CubeFunction f;
    f.n = n;
    f.d = 1;
    f.values.assign(1u << n, {0.0});
    for (unsigned e = 0; e < (1u << n); ++e)
        f.values[e][0] = __builtin_popcount(A & e) % 2 ? -1.0 : 1.0;
    return f;
}

double max_dev(const CubeFunction& a, const CubeFunction& b) {
    double m = 0;
    for (std::size_t e = 0; e < a.values.size(); ++e)
        for (int c = 0; c < a.d; ++c) m = std::max(m, std::abs(a.values[e][c] - b.values[e][c]));
    return m;
}

}

TEST_CASE("walsh transform of simple functions") {
    CubeFunction constant;
    constant.n = 3;
    constant.d = 1;
    constant.values.assign(8, {2.5});
    CubeFunction spec = walsh_transform(constant);
    CHECK(spec.values[0][0] == doctest::Approx(2.5));
    for (int A = 1; A < 8; ++A) CHECK(spec.values[A][0] == doctest::Approx(0.0));

    CubeFunction w1 = character(3, 1u);
    CubeFunction s1 = walsh_transform(w1);
    for (int A = 0; A < 8; ++A)
        CHECK(s1.values[A][0] == doctest::Approx(A == 1 ? 1.0 : 0.0));
}

TEST_CASE("walsh round trip against the naive transform") {
    for (int n : {4, 8}) {
        CubeFunction f = random_cube(n, 2, n);
        CubeFunction spec = walsh_transform(f);
        // naive O(4^n) transform as oracle
        for (unsigned A = 0; A < (1u << n); ++A)
            for (int c = 0; c < 2; ++c) {
                double s = 0;
                for (unsigned e = 0; e < (1u << n); ++e)
                    s += (__builtin_popcount(A & e) % 2 ? -1.0 : 1.0) * f.values[e][c];
                CHECK(spec.values[A][c] == doctest::Approx(s / (1u << n)).epsilon(1e-10));
            }
        CHECK(max_dev(inverse_walsh(spec), f) < 1e-10);
    }
}

TEST_CASE("partial derivatives") {
    CubeFunction w5 = character(4, 5u);  // A = {1,3}
    CHECK(max_dev(partial_derivative(w5, 1), w5) < 1e-12);
    CubeFunction z = partial_derivative(w5, 2);
    for (auto& v : z.values) CHECK(v[0] == doctest::Approx(0.0));

    CubeFunction f = random_cube(6, 3, 9);
    for (int j = 1; j <= 6; ++j)
        CHECK(max_dev(partial_derivative(f, j), partial_derivative_fourier(f, j)) < 1e-12);
    CHECK_THROWS_AS(partial_derivative(f, 0), Error);
    CHECK_THROWS_AS(partial_derivative(f, 7), Error);
}

TEST_CASE("heat semigroup") {
    CubeFunction f = random_cube(7, 2, 4);
    CHECK(max_dev(heat_semigroup(f, 0.0), f) < 1e-12);
    CHECK_THROWS_AS(heat_semigroup(f, -1.0), Error);

    CubeFunction w = character(5, 11u);  // |A| = 3
    CubeFunction hw = heat_semigroup(w, 0.7);
    for (std::size_t e = 0; e < w.values.size(); ++e)
        CHECK(hw.values[e][0] == doctest::Approx(std::exp(-2.1) * w.values[e][0]));

    // kernel route, semigroup law, contraction, lower bound
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(max_dev(heat_semigroup(f, t), heat_semigroup_kernel(f, t)) < 1e-10);
        double before = 0, after = 0;
        CubeFunction h = heat_semigroup(f, t);
        for (std::size_t e = 0; e < f.values.size(); ++e) {
            before += f.norm(f.values[e]);
            after += h.norm(h.values[e]);
        }
        CHECK(after <= before + 1e-10);
        CHECK(after >= std::exp(-f.n * t) * before - 1e-10);
    }
    CHECK(max_dev(heat_semigroup(heat_semigroup(f, 0.3), 0.5), heat_semigroup(f, 0.8)) < 1e-12);
}

TEST_CASE("heat identity") {
    // e^{-tD}(W_[n] e^{-tD} f) = e^{-tn} W_[n] f
    int n = 6;
    CubeFunction f = random_cube(n, 1, 13);
    double t = 0.4;
    unsigned full = (1u << n) - 1;
    CubeFunction inner = heat_semigroup(f, t);
    for (unsigned e = 0; e <= full; ++e)
        inner.values[e][0] *= __builtin_popcount(full & e) % 2 ? -1.0 : 1.0;
    CubeFunction lhs = heat_semigroup(inner, t);
    CubeFunction rhs = f;
    for (unsigned e = 0; e <= full; ++e)
        rhs.values[e][0] *= std::exp(-t * n) * (__builtin_popcount(full & e) % 2 ? -1.0 : 1.0);
    CHECK(max_dev(lhs, rhs) < 1e-12);
}

TEST_CASE("pisier ratio") {
    CubeFunction constant;
    constant.n = 4;
    constant.d = 1;
    constant.values.assign(16, {3.0});
    PisierReport c = pisier_ratio(constant, 2.0);
    CHECK(c.lhs == doctest::Approx(0.0));
    CHECK(c.ratio == doctest::Approx(0.0));

    PisierReport w = pisier_ratio(character(4, 1u), 2.0);
    CHECK(w.lhs == doctest::Approx(1.0));
    CHECK(w.rhs == doctest::Approx(1.0));
    CHECK(w.ratio == doctest::Approx(1.0));

    for (std::uint64_t seed : {1, 2, 3}) {
        PisierReport r = pisier_ratio(random_cube(6, 1, seed), 1.0);
        CHECK(r.ratio <= 10.0);
    }
}

TEST_CASE("type constants") {
    // linear function into Euclidean space: Enflo type 2 constant exactly 1
    int n = 5;
    CubeFunction lin;
    lin.n = n;
    lin.d = n;
    lin.values.assign(1u << n, std::vector<double>(n));
    for (unsigned e = 0; e < (1u << n); ++e)
        for (int b = 0; b < n; ++b) lin.values[e][b] = (e >> b & 1) ? -0.7 : 0.7;
    CHECK(metric_type_constant(lin, 2.0, TypeVariant::enflo) == doctest::Approx(1.0).epsilon(1e-10));

    // identity cube into its own l1 metric: diagonal 2n, edges 2
    FiniteMetric q = gen_hypercube(n);
    std::vector<int> id(1u << n);
    for (int i = 0; i < (1 << n); ++i) id[i] = i;
    CHECK(metric_type_constant(n, id, q, 2.0, TypeVariant::enflo) ==
          doctest::Approx(std::sqrt(static_cast<double>(n))));

    // plain variant at p = 1 never exceeds 1
    for (std::uint64_t seed : {4, 7}) {
        CubeFunction f = random_cube(5, 2, seed);
        CHECK(metric_type_constant(f, 1.0, TypeVariant::plain) <= 1.0 + 1e-9);
    }

    // bmw at p = 2 matches enflo at p = 2 (the n-factor degenerates)
    CubeFunction f = random_cube(4, 2, 20);
    CHECK(metric_type_constant(f, 2.0, TypeVariant::bmw) ==
          doctest::Approx(metric_type_constant(f, 2.0, TypeVariant::enflo)).epsilon(1e-9));
}

TEST_CASE("cotype constants") {
    // constant map
    FiniteMetric two = FiniteMetric::trusted(2, {1.0});
    std::vector<int> constant(4, 0);
    CHECK(metric_cotype_constant(1, 4, constant, two, 2.0) == doctest::Approx(0.0));

    // identity Z_4 -> C_4 with q = 2: LHS = 16, RHS' = 8, C = sqrt(16*3/(16*8))
    FiniteMetric c4 = metric_from_graph(gen_named("cycle(4)"));
    std::vector<int> id{0, 1, 2, 3};
    CHECK(metric_cotype_constant(1, 4, id, c4, 2.0) ==
          doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("cube distortion lower bound formula") {
    CHECK(cube_distortion_lower(4, 2.0, 1.0) == doctest::Approx(2.0));
    CHECK(cube_distortion_lower(9, 2.0, 1.0) == doctest::Approx(3.0));
    CHECK(cube_distortion_lower(7, 1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("cube file round trip") {
    CubeFunction f = random_cube(5, 3, 17);
    std::stringstream ss;
    write_cube(ss, f);
    CubeFunction r = read_cube(ss);
    CHECK(r.n == f.n);
    CHECK(r.d == f.d);
    CHECK(max_dev(r, f) < 1e-12);
    std::istringstream bad("3 1\n0.5 0.5");
    CHECK_THROWS_AS(read_cube(bad), Error);
}
