#ifndef ribe_skeleton_hpp
#define ribe_skeleton_hpp

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ribe/hst.hpp"
#include "ribe/metric.hpp"

namespace ribe {

/*
 * Ultrametric skeleton of a finite metric: a dominating HST over all points
 * together with a padded subset S on which the tree distorts distances by at
 * most the certified factor.
 */
struct SkeletonResult {
    std::vector<int> subset;      // S, sorted point ids
    HstTree tree;                 // over ALL input points
    double certified_distortion;  // 128 / epsilon
    double measured_max_ratio;    // max rho/d over pairs with an endpoint in S
    double epsilon;
    std::uint64_t seed;
};

// hierarchical random partition at scales diam * 8^-l; S collects the points
// whose (epsilon/16) * Delta_l ball stays inside their cluster at every scale
SkeletonResult extract_skeleton(const FiniteMetric& m, double epsilon, std::uint64_t seed);

// Extension of an ultrametric rho0 on S to the whole space:
//   pi(x) = nearest point of S (ties to min id), a(x) = 2 D d(x, pi(x)),
//   rho(x,y) = max(rho0(pi(x), pi(y)), a(x), a(y)).
// Preconditions (checked): rho0 is an ultrametric with d <= rho0 <= D d on S.
FiniteMetric extend_ultrametric(const FiniteMetric& m, const std::vector<int>& subset,
                                const FiniteMetric& rho0, double D);

// same construction without the precondition checks; the ranking structure
// extends skeleton trees that are ultrametric by construction but whose
// distortion is certified only on pairs meeting S
FiniteMetric extend_ultrametric_unchecked(const FiniteMetric& m, const std::vector<int>& subset,
                                          const FiniteMetric& rho0, double D);

// HST serialization plus "S: id id ..." and "epsilon seed certified_distortion"
void write_skeleton(std::ostream& out, const SkeletonResult& s);
SkeletonResult read_skeleton(std::istream& in);

}

#endif
