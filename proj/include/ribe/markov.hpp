#ifndef ribe_markov_hpp
#define ribe_markov_hpp

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ribe/graph.hpp"
#include "ribe/metric.hpp"

namespace ribe {

/*
 * Finite Markov chain with its stationary vector and a start distribution
 * (equal to pi for stationary chains, a point mass for walks with a fixed
 * origin). All expectations in this module are exact matrix arithmetic.
 */
struct MarkovChain {
    Eigen::SparseMatrix<double, Eigen::RowMajor> A;  // row-stochastic
    Eigen::VectorXd pi;                              // stationary: pi A = pi
    Eigen::VectorXd start;                           // distribution of Z_0
    bool reversible = false;

    int states() const { return static_cast<int>(A.rows()); }
};

// validates row sums (1e-12), stationarity (1e-10) and, when flagged,
// detailed balance (1e-10)
MarkovChain make_chain(Eigen::SparseMatrix<double, Eigen::RowMajor> A, Eigen::VectorXd pi,
                       Eigen::VectorXd start, bool reversible);

// simple random walk, pi(v) = deg(v) / 2|E|, reversible, start = pi
MarkovChain stationary_walk(const Graph& g);

// walk on S along distance-m pairs of g; degree-weighted stationary start;
// zero-degree states get an absorbing self-loop and zero mass
MarkovChain subset_walk(const Graph& g, const std::vector<int>& S, int m);

// smallest m divisible by 6 with |S|/n >= (2m+2)/(k-1)^{m/2} and
// |S|/n >= 16/(k (k-1)^{m/3}); -1 when no m <= m_cap works
int smallest_admissible_m(int k, int n, int subset_size, int m_cap = 120);

// ( sum_ij pi_i (A^t)_ij d(f i, f j)^p ) / ( t * sum_ij pi_i A_ij d(f i, f j)^p )
double markov_type_ratio(const MarkovChain& c, const FiniteMetric& m, const std::vector<int>& f,
                         double p, int t);

// max over t <= t_max of (ratio(t)/M^p)^{1/p}; lower-bounds the distortion of
// any embedding of the chain's state metric into a space of Markov type p
// with constant M. States are metric points. Returns 0 for a 1-point metric.
double distortion_lower_bound(const MarkovChain& c, const FiniteMetric& m, double p, double M,
                              int t_max);

// exact E[d(Z_t, Z_0)] for t = 0..t_max, Z_0 distributed per c.start
std::vector<double> drift_profile(const MarkovChain& c, const FiniteMetric& m, int t_max);

struct ConvexityResult {
    double lhs;       // sum_s sum_t E[d(f Z_t, f Ztilde_t(t-2^s))^p] / 2^{sp}
    double rhs;       // sum_t E[d(f Z_t, f Z_{t-1})^p]
    double pi_lower;  // (lhs/rhs)^{1/p}
};

// forked-walk functional over t in {0..T}; the fork expectation is the exact
// double sum over rows of A^{2^s}
ConvexityResult markov_convexity_functional(const MarkovChain& c, const FiniteMetric& m,
                                            const std::vector<int>& f, double p, int T);

// same functional, p = 2, states = vertices of a rooted tree with unit edges
// (parent[root] = -1); the pair sums collapse by subtree aggregation, which
// keeps T_16^3 (196k vertices) exact and fast
ConvexityResult markov_convexity_tree(const MarkovChain& c, const std::vector<int>& parent, int T);

// outward walk on T_n^k: root -> uniform child (k of them), internal ->
// uniform child (k-1), leaves absorbing; start = root. parent_out receives
// the tree structure when non-null.
MarkovChain outward_tree_chain(int k, int n, std::vector<int>* parent_out = nullptr);

// left-to-right walk on gen_laakso(k): deterministic along the orientation,
// 1/2-1/2 at binary branch points, rightmost vertex absorbing; start = leftmost
MarkovChain laakso_chain(int k);

// "m" line, m rows of m probabilities, then the stationary row
void write_chain(std::ostream& out, const MarkovChain& c);
MarkovChain read_chain(std::istream& in);

}

#endif
