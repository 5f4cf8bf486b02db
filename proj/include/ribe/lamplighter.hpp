#ifndef ribe_lamplighter_hpp
#define ribe_lamplighter_hpp

#include <cstdint>
#include <map>
#include <vector>

namespace ribe {

/*
 * Element of the wreath product Z wr Z: integer lamp values on finitely many
 * sites plus the lamplighter's position. Generators: move left/right,
 * increment/decrement the lamp at the current position (each costs 1).
 */
struct LampConfig {
    std::map<long long, long long> lamps;  // site -> value, zero entries absent
    long long pos = 0;

    void adjust(long long site, long long delta);  // keeps the map zero-free
    bool operator==(const LampConfig&) const = default;
    bool operator<(const LampConfig& o) const;
};

// sum of |lamp differences| plus the shortest left-right sweep visiting every
// differing site; equals the word distance for the 4-generator set
long long lamplighter_distance(const LampConfig& a, const LampConfig& b);

// all group elements within word distance radius of the identity, with their
// exact BFS distances
std::vector<std::pair<LampConfig, int>> lamplighter_ball(int radius);

struct DriftProfile {
    std::vector<double> mean;        // index t: sample mean of d(W_t, identity)
    std::vector<double> stderr_;     // standard error of the mean
    std::vector<double> lamp_mean;   // lamp-adjustment part of the same distance
    std::vector<double> travel_mean; // carrier-travel part (mean - lamp_mean)
};

// uniform random walk over the 4 generators; trial i uses seed + i, so the
// result is independent of scheduling
DriftProfile lamplighter_drift(int t_max, int trials, std::uint64_t seed);

// least-squares slope of log(mean) vs log(t) over t in [t_lo, t_hi]
double drift_loglog_slope(const DriftProfile& d, int t_lo, int t_hi);

/*
 * Growth exponent of the drift after removing the carrier-travel component,
 * which is exactly Theta(sqrt(t)) and depresses the raw log-log slope at
 * desk-scale horizons. The remaining lamp-adjustment cost carries the
 * t^{3/4} law, so its slope is the stable estimator of the drift exponent.
 */
double drift_exponent(const DriftProfile& d, int t_lo, int t_hi);

}

#endif
