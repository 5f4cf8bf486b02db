#ifndef ribe_test_helpers_hpp
#define ribe_test_helpers_hpp

#include <vector>

#include "ribe/common.hpp"
#include "ribe/hst.hpp"
#include "ribe/metric.hpp"
#include "ribe/skeleton.hpp"

namespace ribe_test {

inline std::vector<std::vector<double>> random_points(int n, int dim, std::uint64_t seed) {
    ribe::SplitMix64 rng(seed);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts)
        for (auto& c : p) c = rng.next_double();
    return pts;
}

inline ribe::FiniteMetric random_euclidean(int n, int dim, std::uint64_t seed) {
    return ribe::metric_from_points(random_points(n, dim, seed));
}

// random ultrametric: the dominating tree of a skeleton extraction is an
// ultrametric over all points by construction
inline ribe::HstTree random_hst(int n, std::uint64_t seed) {
    ribe::FiniteMetric m = random_euclidean(n, 3, seed);
    return ribe::extract_skeleton(m, 0.5, seed).tree;
}

inline ribe::FiniteMetric random_ultrametric(int n, std::uint64_t seed) {
    return ribe::induced_metric(random_hst(n, seed));
}

}

#endif
