#ifndef ribe_hst_hpp
#define ribe_hst_hpp

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ribe/metric.hpp"

namespace ribe {

/*
 * Hierarchically separated tree: rooted tree with strictly decreasing
 * diameter labels, leaves in bijection with point ids. The induced distance
 * between two points is the diameter label of their leaves' least common
 * ancestor, which is an ultrametric.
 */
class HstTree {
public:
    struct Node {
        int parent = -1;      // -1 for root
        double diameter = 0;  // 0 for leaves
        std::vector<int> children;
        int leaf_point = -1;  // point id for leaves, -1 otherwise
    };

    HstTree() = default;
    HstTree(std::vector<Node> nodes, int root, std::vector<int> leaf_of);

    int root() const { return root_; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_points() const { return static_cast<int>(leaf_of_.size()); }
    const Node& node(int id) const { return nodes_[id]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int leaf_of(int point) const;  // node id of the leaf carrying this point

    int naive_lca(int node_a, int node_b) const;  // upward walk
    double diameter() const { return nodes_[root_].diameter; }

private:
    void validate() const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::vector<int> leaf_of_;  // point id -> leaf node id
};

// equivalence-class construction; throws NotUltrametric with a witnessing
// triple if m fails the ultra-triangle inequality (1e-9 relative tolerance)
HstTree hst_from_ultrametric(const FiniteMetric& m);

// diameter of the lca of the two leaves; 0 when x == y
double ultra_distance(const HstTree& t, int x, int y);

// metric induced on the points by the tree (the round-trip companion of
// hst_from_ultrametric)
FiniteMetric induced_metric(const HstTree& t);

// isometric embedding into the sphere of radius diam/sqrt(2)
Embedding hilbert_embed(const HstTree& t);

// DFS leaf order; for x before y in the order, the max induced distance over
// the order-interval [x,y] equals the induced distance of x and y
std::vector<int> linear_order(const HstTree& t);

struct HolderSurjection {
    std::vector<double> phi;                      // cumulative measure per point
    std::vector<std::array<double, 2>> images;    // Peano image per point
    double holder_constant;                       // K with mu(A) <= K diam(A)^2
};

// f = P o phi with phi the cumulative measure along linear_order and P the
// 2D Hilbert curve; mu must be a probability vector over points
HolderSurjection holder_surjection(const HstTree& t, const std::vector<double>& mu,
                                   int curve_order = 16);

// 2D Hilbert curve point for parameter s in [0,1] at the given order;
// starts at (0,0) and ends at (1,0) in the order->infinity limit
std::array<double, 2> hilbert_curve_point(double s, int curve_order = 16);

// "nodes leaves" line then per node "id parent diameter leaf_point"
void write_hst(std::ostream& out, const HstTree& t);
HstTree read_hst(std::istream& in);

}

#endif
