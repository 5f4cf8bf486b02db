#include "ribe/graph.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace ribe {

void Graph::add_edge(int u, int v, double weight) {
    if (u == v) throw invalid_parameter("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw invalid_parameter("edge endpoint out of range");
    if (has_edge(u, v))
        throw invalid_parameter("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    if (weight <= 0.0) throw invalid_parameter("nonpositive edge weight");
    edges_.push_back({u, v, weight});
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj_[degree(u) <= degree(v) ? u : v];
    int other = degree(u) <= degree(v) ? v : u;
    return std::find(a.begin(), a.end(), other) != a.end();
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj_[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push_back(w);
            }
    }
    return count == n_;
}

bool Graph::is_regular(int* degree_out) const {
    if (n_ == 0) return true;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        if (degree(v) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

bool Graph::unit_weights() const {
    for (const auto& e : edges_)
        if (e.weight != 1.0) return false;
    return true;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.num_vertices(), -1);
    dist[source] = 0;
    std::deque<int> q{source};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

int girth(const Graph& g) {
    if (g.num_edges() < 1) throw invalid_parameter("girth of an edgeless graph");
    int best = kInfiniteGirth;
    int n = g.num_vertices();
    std::vector<int> dist(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        dist[root] = 0;
        std::deque<int> q{root};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            if (2 * dist[u] >= best) continue;
            for (int w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if (w != parent[u]) {
                    // non-tree edge closes a cycle through the BFS tree
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

Graph gen_tree(int k, int n) {
    if (k < 3) throw invalid_parameter("gen_tree requires branching k >= 3");
    if (n < 1) throw invalid_parameter("gen_tree requires depth n >= 1");
    // count vertices: 1 + k + k(k-1) + ... + k(k-1)^{n-1}
    long long total = 1, level = k;
    for (int d = 1; d <= n; ++d) {
        total += level;
        level *= (k - 1);
    }
    Graph g(static_cast<int>(total));
    int next = 1;
    std::vector<int> frontier{0};
    for (int depth = 1; depth <= n; ++depth) {
        std::vector<int> next_frontier;
        for (int v : frontier) {
            int children = (depth == 1) ? k : k - 1;
            for (int c = 0; c < children; ++c) {
                g.add_edge(v, next);
                next_frontier.push_back(next++);
            }
        }
        frontier = std::move(next_frontier);
    }
    return g;
}

Graph gen_laakso(int k, std::vector<std::pair<int, int>>* arcs) {
    if (k < 0) throw invalid_parameter("gen_laakso requires k >= 0");
    // track edges as ordered (left, right) pairs to keep the left-to-right
    // orientation used by the Laakso walk
    std::vector<std::pair<int, int>> edges{{0, 1}};
    int nverts = 2;
    for (int it = 0; it < k; ++it) {
        std::vector<std::pair<int, int>> next;
        next.reserve(edges.size() * 6);
        for (auto [u, v] : edges) {
            int a = nverts++;
            int b1 = nverts++;
            int b2 = nverts++;
            int c = nverts++;
            next.push_back({u, a});
            next.push_back({a, b1});
            next.push_back({a, b2});
            next.push_back({b1, c});
            next.push_back({b2, c});
            next.push_back({c, v});
        }
        edges = std::move(next);
    }
    Graph g(nverts);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (arcs) *arcs = std::move(edges);
    return g;
}

namespace {

// Hamiltonian cycle on n vertices plus LCF-notation chords
Graph from_lcf(int n, const std::vector<int>& pattern, int repeats) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    int idx = 0;
    for (int r = 0; r < repeats; ++r)
        for (int off : pattern) {
            int j = ((idx + off) % n + n) % n;
            if (!g.has_edge(idx, j)) g.add_edge(idx, j);
            ++idx;
        }
    return g;
}

}

Graph gen_cycle(int m) {
    if (m < 3) throw invalid_parameter("cycle needs m >= 3");
    Graph g(m);
    for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
    return g;
}

Graph gen_torus(int m, int n) {
    if (m < 3 || n < 3) throw invalid_parameter("torus needs m,n >= 3");
    Graph g(m * n);
    auto id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            g.add_edge(id(i, j), id((i + 1) % m, j));
            g.add_edge(id(i, j), id(i, (j + 1) % n));
        }
    return g;
}

Graph gen_named(const std::string& name) {
    if (name == "petersen") {
        Graph g(10);
        for (int i = 0; i < 5; ++i) {
            g.add_edge(i, (i + 1) % 5);           // outer pentagon
            g.add_edge(5 + i, 5 + (i + 2) % 5);   // inner pentagram
            g.add_edge(i, 5 + i);                 // spokes
        }
        return g;
    }
    if (name == "heawood") return from_lcf(14, {5, -5}, 7);
    if (name == "tutte_coxeter") return from_lcf(30, {-13, -9, 7, -7, 9, 13}, 5);
    if (name.rfind("cycle(", 0) == 0 && name.back() == ')')
        return gen_cycle(std::stoi(name.substr(6, name.size() - 7)));
    if (name.rfind("torus(", 0) == 0 && name.back() == ')') {
        std::string args = name.substr(6, name.size() - 7);
        auto comma = args.find(',');
        if (comma == std::string::npos) throw unknown_name(name);
        return gen_torus(std::stoi(args.substr(0, comma)), std::stoi(args.substr(comma + 1)));
    }
    throw unknown_name(name);
}

Graph gen_random_regular(int n, int k, int girth_min, std::uint64_t seed, int attempt_budget) {
    if (k < 3) throw invalid_parameter("gen_random_regular requires k >= 3");
    if ((static_cast<long long>(n) * k) % 2 != 0)
        throw invalid_parameter("n*k must be even");
    SplitMix64 rng(seed);
    std::vector<int> stubs(static_cast<std::size_t>(n) * k);
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < k; ++s) stubs[static_cast<std::size_t>(v) * k + s] = v;

    for (int attempt = 0; attempt < attempt_budget; ++attempt) {
        // Fisher-Yates on the stub list, then pair consecutive stubs
        for (std::size_t i = stubs.size() - 1; i > 0; --i) {
            std::size_t j = rng.next_below(i + 1);
            std::swap(stubs[i], stubs[j]);
        }
        Graph g(n);
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || g.has_edge(u, v))
                ok = false;
            else
                g.add_edge(u, v);
        }
        if (!ok) continue;
        if (girth_min > 3 && girth(g) < girth_min) continue;
        return g;
    }
    throw generation_timeout("no admissible " + std::to_string(k) + "-regular graph on " +
                             std::to_string(n) + " vertices within attempt budget");
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (e.weight != 1.0) out << ' ' << e.weight;
        out << '\n';
    }
}

Graph read_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("graph file: missing header line 1");
    std::istringstream head(line);
    int n, m;
    if (!(head >> n >> m)) throw parse_error("graph file: bad header at line 1");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw parse_error("graph file: missing edge at line " + std::to_string(i + 2));
        std::istringstream ls(line);
        int u, v;
        double w = 1.0;
        if (!(ls >> u >> v)) throw parse_error("graph file: bad edge at line " + std::to_string(i + 2));
        ls >> w;
        g.add_edge(u, v, w);
    }
    return g;
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    write_graph(f, g);
}

Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    return read_graph(f);
}

}
