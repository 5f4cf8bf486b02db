#ifndef ribe_graph_hpp
#define ribe_graph_hpp

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace ribe {

struct Edge {
    int u;
    int v;
    double weight = 1.0;
};

/*
 * Undirected graph. No self-loops, no duplicate edges.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    void add_edge(int u, int v, double weight = 1.0);
    bool has_edge(int u, int v) const;
    bool is_connected() const;
    bool is_regular(int* degree_out = nullptr) const;
    bool unit_weights() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// sentinel for "no cycle" (forests)
inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// exact shortest cycle length via per-vertex BFS; kInfiniteGirth for forests
int girth(const Graph& g);

// BFS distances from a single source (unit weights); -1 for unreachable
std::vector<int> bfs_distances(const Graph& g, int source);

// complete k-regular tree of depth n: root has k children, every internal
// vertex has k-1 children, so each non-leaf has exactly k adjacent vertices.
// Vertices numbered in BFS order, root = 0.
Graph gen_tree(int k, int n);

// Laakso graphs: G_0 is a single edge; each edge u-v of G_{k-1} is replaced by
// u-a-{b1,b2}-c-v with two parallel two-edge paths a-b1-c and a-b2-c.
// arcs, when requested, lists every edge as an ordered (left, right) pair;
// vertex 0 is the leftmost vertex and vertex 1 the rightmost.
Graph gen_laakso(int k, std::vector<std::pair<int, int>>* arcs = nullptr);

// petersen, heawood, tutte_coxeter, cycle(m), torus(m,n)
Graph gen_named(const std::string& name);

Graph gen_cycle(int m);
Graph gen_torus(int m, int n);

// seeded configuration-model sampling with rejection on self-loops,
// multi-edges and girth; deterministic per seed
Graph gen_random_regular(int n, int k, int girth_min, std::uint64_t seed,
                         int attempt_budget = 100000);

// "n m" line then m lines "u v [w]"
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}

#endif
