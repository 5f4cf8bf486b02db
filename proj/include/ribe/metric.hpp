#ifndef ribe_metric_hpp
#define ribe_metric_hpp

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ribe/graph.hpp"

namespace ribe {

/*
 * Finite metric space: n points, upper-triangular distance storage.
 * Immutable after construction; construction validates symmetry-by-storage,
 * positivity off the diagonal and the triangle inequality with relative
 * tolerance 1e-9.
 */
class FiniteMetric {
public:
    FiniteMetric() = default;
    // dist holds n(n-1)/2 entries in row-major upper-triangular order
    FiniteMetric(int n, std::vector<double> dist);

    // bypasses the O(n^3) triangle check; only for distances that are a
    // metric by construction (graph metrics, Euclidean clouds, restrictions)
    static FiniteMetric trusted(int n, std::vector<double> dist);

    int size() const { return n_; }

    double operator()(int i, int j) const {
        if (i == j) return 0.0;
        if (i > j) std::swap(i, j);
        return dist_[index(i, j)];
    }

    double max_distance() const;
    double min_positive_distance() const;
    const std::vector<double>& raw() const { return dist_; }

    // restriction to a subset of points, in the given order
    FiniteMetric restrict(const std::vector<int>& points) const;

private:
    std::size_t index(int i, int j) const {
        // i < j
        return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }
    void validate() const;

    int n_ = 0;
    std::vector<double> dist_;
};

// all-pairs shortest paths; exact integer accumulation for unit/integer
// weights, Dijkstra otherwise. Parallelized over sources.
FiniteMetric metric_from_graph(const Graph& g);

// serial Floyd-Warshall reference; used by tests and the kernel benchmark
FiniteMetric metric_from_graph_serial(const Graph& g);

// metric on 2^n points, dist = l1 distance between +-1 vectors = 2 * Hamming
FiniteMetric gen_hypercube(int n);

// Euclidean metric on a point cloud
FiniteMetric metric_from_points(const std::vector<std::vector<double>>& points);

struct DistortionReport {
    double expansion;
    double contraction;
    double distortion;
};

// f maps src point ids to dst point ids; must be injective
DistortionReport distortion_of_map(const FiniteMetric& src, const FiniteMetric& dst,
                                   const std::vector<int>& f);

struct Embedding {
    std::vector<std::vector<double>> images;  // one vector per domain point

    double distance(int i, int j) const;  // Euclidean
};

DistortionReport distortion_of_embedding(const FiniteMetric& src, const Embedding& emb);

// "n" line then n(n-1)/2 whitespace-separated reals
void write_metric(std::ostream& out, const FiniteMetric& m);
FiniteMetric read_metric(std::istream& in);
void save_metric(const std::string& path, const FiniteMetric& m);
FiniteMetric load_metric(const std::string& path);

}

#endif
