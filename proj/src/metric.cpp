#include "ribe/metric.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace ribe {

FiniteMetric::FiniteMetric(int n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {
    std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (dist_.size() != expected)
        throw invalid_parameter("metric storage size mismatch: got " +
                                std::to_string(dist_.size()) + ", expected " +
                                std::to_string(expected));
    validate();
}

FiniteMetric FiniteMetric::trusted(int n, std::vector<double> dist) {
    FiniteMetric m;
    m.n_ = n;
    m.dist_ = std::move(dist);
    std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (m.dist_.size() != expected)
        throw invalid_parameter("metric storage size mismatch");
    return m;
}

void FiniteMetric::validate() const {
    double maxd = 0.0;
    for (double d : dist_) {
        if (!(d > 0.0) || !std::isfinite(d))
            throw invalid_parameter("distances must be positive finite reals");
        maxd = std::max(maxd, d);
    }
    double tol = 1e-9 * maxd;
    for (int i = 0; i < n_; ++i)
        for (int k = i + 1; k < n_; ++k) {
            double dik = (*this)(i, k);
            for (int j = 0; j < n_; ++j) {
                if (j == i || j == k) continue;
                if (dik > (*this)(i, j) + (*this)(j, k) + tol)
                    throw invalid_parameter("triangle inequality violated on (" +
                                            std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ")");
            }
        }
}

double FiniteMetric::max_distance() const {
    double m = 0.0;
    for (double d : dist_) m = std::max(m, d);
    return m;
}

double FiniteMetric::min_positive_distance() const {
    double m = std::numeric_limits<double>::infinity();
    for (double d : dist_) m = std::min(m, d);
    return m;
}

FiniteMetric FiniteMetric::restrict(const std::vector<int>& points) const {
    int m = static_cast<int>(points.size());
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) d.push_back((*this)(points[i], points[j]));
    return FiniteMetric::trusted(m, std::move(d));
}

namespace {

bool integer_weights(const Graph& g) {
    for (const auto& e : g.edges())
        if (e.weight != std::floor(e.weight)) return false;
    return true;
}

using WeightedAdj = std::vector<std::vector<std::pair<int, double>>>;

WeightedAdj weighted_adjacency(const Graph& g) {
    WeightedAdj adj(g.num_vertices());
    for (const auto& e : g.edges()) {
        adj[e.u].push_back({e.v, e.weight});
        adj[e.v].push_back({e.u, e.weight});
    }
    return adj;
}

// single-source distances; integer accumulation for integer weights
void sssp(const Graph& g, const WeightedAdj& adj, int source, bool integral,
          std::vector<double>& out) {
    int n = g.num_vertices();
    if (g.unit_weights()) {
        std::vector<int> d = bfs_distances(g, source);
        for (int i = 0; i < n; ++i) out[i] = d[i] < 0 ? -1.0 : static_cast<double>(d[i]);
        return;
    }
    if (integral) {
        std::vector<long long> dist(n, -1);
        using Item = std::pair<long long, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[source] = 0;
        pq.push({0, source});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (auto [w, wt] : adj[u]) {
                long long nd = d + static_cast<long long>(wt);
                if (dist[w] < 0 || nd < dist[w]) {
                    dist[w] = nd;
                    pq.push({nd, w});
                }
            }
        }
        for (int i = 0; i < n; ++i) out[i] = dist[i] < 0 ? -1.0 : static_cast<double>(dist[i]);
        return;
    }
    std::vector<double> dist(n, -1.0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [w, wt] : adj[u]) {
            double nd = d + wt;
            if (dist[w] < 0.0 || nd < dist[w]) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    for (int i = 0; i < n; ++i) out[i] = dist[i];
}

FiniteMetric pack_apsp(int n, const std::vector<std::vector<double>>& rows) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rows[i][j] < 0.0)
                throw disconnected_graph("no path between " + std::to_string(i) + " and " +
                                         std::to_string(j));
            d.push_back(rows[i][j]);
        }
    return FiniteMetric::trusted(n, std::move(d));
}

}

FiniteMetric metric_from_graph(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) throw invalid_parameter("empty graph");
    bool integral = integer_weights(g);
    WeightedAdj adj = weighted_adjacency(g);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < n; ++s) sssp(g, adj, s, integral, rows[s]);
    return pack_apsp(n, rows);
}

FiniteMetric metric_from_graph_serial(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) throw invalid_parameter("empty graph");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (auto& row : d)
        for (auto& v : row)
            if (v == inf) v = -1.0;
    return pack_apsp(n, d);
}

FiniteMetric gen_hypercube(int n) {
    if (n < 1 || n > 16) throw invalid_parameter("gen_hypercube requires 1 <= n <= 16");
    int N = 1 << n;
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(N) * (N - 1) / 2);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            d.push_back(2.0 * __builtin_popcount(static_cast<unsigned>(i ^ j)));
    return FiniteMetric::trusted(N, std::move(d));
}

FiniteMetric metric_from_points(const std::vector<std::vector<double>>& points) {
    int n = static_cast<int>(points.size());
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < points[i].size(); ++c) {
                double diff = points[i][c] - points[j][c];
                s += diff * diff;
            }
            d.push_back(std::sqrt(s));
        }
    return FiniteMetric::trusted(n, std::move(d));
}

DistortionReport distortion_of_map(const FiniteMetric& src, const FiniteMetric& dst,
                                   const std::vector<int>& f) {
    int n = src.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (f[i] == f[j])
                throw non_injective("points " + std::to_string(i) + " and " + std::to_string(j) +
                                    " collapse");
    double expansion = 0.0, contraction = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = src(i, j), b = dst(f[i], f[j]);
            expansion = std::max(expansion, b / a);
            contraction = std::max(contraction, a / b);
        }
    return {expansion, contraction, expansion * contraction};
}

double Embedding::distance(int i, int j) const {
    double s = 0.0;
    const auto& a = images[i];
    const auto& b = images[j];
    std::size_t dim = std::max(a.size(), b.size());
    for (std::size_t c = 0; c < dim; ++c) {
        double x = c < a.size() ? a[c] : 0.0;
        double y = c < b.size() ? b[c] : 0.0;
        s += (x - y) * (x - y);
    }
    return std::sqrt(s);
}

DistortionReport distortion_of_embedding(const FiniteMetric& src, const Embedding& emb) {
    int n = src.size();
    double expansion = 0.0, contraction = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = src(i, j), b = emb.distance(i, j);
            if (b == 0.0) throw non_injective("embedding collapses a pair");
            expansion = std::max(expansion, b / a);
            contraction = std::max(contraction, a / b);
        }
    return {expansion, contraction, expansion * contraction};
}

void write_metric(std::ostream& out, const FiniteMetric& m) {
    out << m.size() << '\n';
    out.precision(17);
    const auto& d = m.raw();
    for (std::size_t i = 0; i < d.size(); ++i) out << d[i] << (i + 1 == d.size() ? '\n' : ' ');
    if (d.empty()) out << '\n';
}

FiniteMetric read_metric(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("metric file: missing header line 1");
    int n;
    try {
        n = std::stoi(line);
    } catch (const std::exception&) {
        throw parse_error("metric file: bad point count at line 1");
    }
    std::size_t count = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<double> d;
    d.reserve(count);
    double x;
    while (d.size() < count && in >> x) d.push_back(x);
    if (d.size() != count) throw parse_error("metric file: expected " + std::to_string(count) +
                                             " distances at line 2");
    return FiniteMetric(n, std::move(d));
}

void save_metric(const std::string& path, const FiniteMetric& m) {
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    write_metric(f, m);
}

FiniteMetric load_metric(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    return read_metric(f);
}

}
