#include <doctest.h>

#include <cmath>

#include "ribe/common.hpp"
#include "ribe/lamplighter.hpp"

using namespace ribe;

TEST_CASE("lamplighter distance basics") {
    LampConfig e;
    CHECK(lamplighter_distance(e, e) == 0);

    LampConfig a;
    a.adjust(0, 1);
    CHECK(lamplighter_distance(e, a) == 1);

    LampConfig b;
    b.pos = 5;
    CHECK(lamplighter_distance(e, b) == 5);

    LampConfig c;
    c.adjust(2, 3);
    c.pos = -1;
    // visit site 2 (cost 2+3 lamps... lamps cost 3, travel 0->2->-1 = 2+3)
    CHECK(lamplighter_distance(e, c) == 3 + 2 + 3);
}

TEST_CASE("formula equals BFS word distance on the radius-5 ball") {
    auto ball = lamplighter_ball(5);
    LampConfig e;
    for (const auto& [cfg, d] : ball) CHECK(lamplighter_distance(e, cfg) == d);
}

TEST_CASE("symmetry and triangle inequality on the radius-3 ball") {
    auto ball = lamplighter_ball(3);
    std::vector<LampConfig> pts;
    for (const auto& [cfg, d] : ball) pts.push_back(cfg);
    int n = static_cast<int>(pts.size());
    std::vector<std::vector<long long>> D(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D[i][j] = lamplighter_distance(pts[i], pts[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(D[i][j] == D[j][i]);
            for (int k = 0; k < n; ++k) CHECK(D[i][j] <= D[i][k] + D[k][j]);
        }
}

TEST_CASE("drift starts at exactly 1 and is deterministic per seed") {
    DriftProfile a = lamplighter_drift(20, 200, 11);
    DriftProfile b = lamplighter_drift(20, 200, 11);
    CHECK(a.mean[1] == 1.0);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    for (int t = 2; t <= 20; ++t) {
        CHECK(a.mean[t] > 0.0);
        CHECK(a.mean[t] == doctest::Approx(a.lamp_mean[t] + a.travel_mean[t]).epsilon(1e-12));
    }
}

TEST_CASE("loglog slope on a pure power law") {
    DriftProfile p;
    p.mean.assign(101, 0.0);
    for (int t = 1; t <= 100; ++t) p.mean[t] = 2.0 * std::pow(t, 0.75);
    p.stderr_.assign(101, 0.0);
    CHECK(drift_loglog_slope(p, 10, 100) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK_THROWS_AS(drift_loglog_slope(p, 50, 10), Error);
}
