#include "ribe/hst.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ribe {

HstTree::HstTree(std::vector<Node> nodes, int root, std::vector<int> leaf_of)
    : nodes_(std::move(nodes)), root_(root), leaf_of_(std::move(leaf_of)) {
    validate();
}

int HstTree::leaf_of(int point) const {
    if (point < 0 || point >= static_cast<int>(leaf_of_.size()))
        throw unknown_point("point id " + std::to_string(point));
    return leaf_of_[point];
}

int HstTree::naive_lca(int a, int b) const {
    auto depth = [this](int v) {
        int d = 0;
        while (nodes_[v].parent >= 0) {
            v = nodes_[v].parent;
            ++d;
        }
        return d;
    };
    int da = depth(a), db = depth(b);
    while (da > db) {
        a = nodes_[a].parent;
        --da;
    }
    while (db > da) {
        b = nodes_[b].parent;
        --db;
    }
    while (a != b) {
        a = nodes_[a].parent;
        b = nodes_[b].parent;
    }
    return a;
}

void HstTree::validate() const {
    if (root_ < 0 || root_ >= num_nodes()) throw invalid_parameter("HST: bad root id");
    for (int id = 0; id < num_nodes(); ++id) {
        const Node& nd = nodes_[id];
        if (nd.parent >= 0 && nd.diameter >= nodes_[nd.parent].diameter)
            throw invalid_parameter("HST: diameters must strictly decrease along root-leaf paths");
        if (nd.children.empty()) {
            if (nd.diameter != 0.0) throw invalid_parameter("HST: leaves must have diameter 0");
            if (nd.leaf_point < 0) throw invalid_parameter("HST: leaf without point id");
        } else if (nd.children.size() < 2 && !(id == root_ && num_points() == 1)) {
            throw invalid_parameter("HST: internal node with a single child");
        }
    }
    for (int p = 0; p < num_points(); ++p)
        if (nodes_[leaf_of_[p]].leaf_point != p)
            throw invalid_parameter("HST: leaf_of is not a bijection");
}

namespace {

struct HstBuilder {
    const FiniteMetric& m;
    double tol;
    std::vector<HstTree::Node> nodes;
    std::vector<int> leaf_of;

    // points sorted by id; returns the id of the subtree root
    int build(const std::vector<int>& points) {
        if (points.size() == 1) {
            int id = static_cast<int>(nodes.size());
            nodes.push_back({-1, 0.0, {}, points[0]});
            leaf_of[points[0]] = id;
            return id;
        }
        double diam = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                diam = std::max(diam, m(points[i], points[j]));
        // equivalence classes: connected components of d(x,y) < diam - tol
        double thr = diam - tol;
        std::vector<int> comp(points.size(), -1);
        std::vector<std::vector<int>> classes;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (comp[i] >= 0) continue;
            int c = static_cast<int>(classes.size());
            classes.push_back({});
            std::vector<std::size_t> stack{i};
            comp[i] = c;
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                classes[c].push_back(points[u]);
                for (std::size_t v = 0; v < points.size(); ++v)
                    if (comp[v] < 0 && m(points[u], points[v]) < thr) {
                        comp[v] = c;
                        stack.push_back(v);
                    }
            }
        }
        for (auto& cls : classes) std::sort(cls.begin(), cls.end());
        std::sort(classes.begin(), classes.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });

        int id = static_cast<int>(nodes.size());
        nodes.push_back({-1, diam, {}, -1});
        for (const auto& cls : classes) {
            int child = build(cls);
            nodes[child].parent = id;
            nodes[id].children.push_back(child);
        }
        return id;
    }
};

}

HstTree hst_from_ultrametric(const FiniteMetric& m) {
    int n = m.size();
    double tol = 1e-9 * m.max_distance();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (m(i, j) > std::max(m(i, k), m(k, j)) + tol)
                    throw not_ultrametric("triple (" + std::to_string(i) + "," + std::to_string(j) +
                                          "," + std::to_string(k) + ") violates the ultra-triangle " +
                                          "inequality");
            }
    HstBuilder b{m, tol, {}, std::vector<int>(n, -1)};
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    int root = b.build(all);
    return HstTree(std::move(b.nodes), root, std::move(b.leaf_of));
}

double ultra_distance(const HstTree& t, int x, int y) {
    if (x == y) {
        t.leaf_of(x);  // existence check
        return 0.0;
    }
    return t.node(t.naive_lca(t.leaf_of(x), t.leaf_of(y))).diameter;
}

FiniteMetric induced_metric(const HstTree& t) {
    int n = t.num_points();
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.push_back(ultra_distance(t, i, j));
    return FiniteMetric::trusted(n, std::move(d));
}

namespace {

template <typename Fn>
void collect_leaves(const HstTree& t, int id, Fn&& fn) {
    const auto& nd = t.node(id);
    if (nd.children.empty()) {
        fn(nd.leaf_point);
        return;
    }
    for (int c : nd.children) collect_leaves(t, c, fn);
}

// recursion of the orthogonal sphere embedding: children blocks are mutually
// orthogonal, each shifted by sqrt((diam^2 - diam_i^2)/2) along its own axis
void embed_node(const HstTree& t, int id, std::vector<std::vector<double>>& out,
                std::vector<int>& dims) {
    const auto& nd = t.node(id);
    if (nd.children.empty()) {
        out[nd.leaf_point] = {};
        dims[id] = 0;
        return;
    }
    int total = 0;
    for (int c : nd.children) {
        embed_node(t, c, out, dims);
        total += dims[c];
    }
    total += static_cast<int>(nd.children.size());
    // shift each child's block into place and append its axis coordinate
    int offset = 0;
    int axis_base = total - static_cast<int>(nd.children.size());
    for (std::size_t ci = 0; ci < nd.children.size(); ++ci) {
        int c = nd.children[ci];
        double child_diam = t.node(c).diameter;
        double shift = std::sqrt((nd.diameter * nd.diameter - child_diam * child_diam) / 2.0);
        collect_leaves(t, c, [&](int p) {
            std::vector<double> v(total, 0.0);
            for (std::size_t k = 0; k < out[p].size(); ++k) v[offset + k] = out[p][k];
            v[axis_base + static_cast<int>(ci)] = shift;
            out[p] = std::move(v);
        });
        offset += dims[c];
    }
    dims[id] = total;
}

}

Embedding hilbert_embed(const HstTree& t) {
    std::vector<std::vector<double>> out(t.num_points());
    std::vector<int> dims(t.num_nodes(), 0);
    embed_node(t, t.root(), out, dims);
    return Embedding{std::move(out)};
}

std::vector<int> linear_order(const HstTree& t) {
    std::vector<int> order;
    order.reserve(t.num_points());
    std::vector<int> stack{t.root()};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const auto& nd = t.node(id);
        if (nd.children.empty()) {
            order.push_back(nd.leaf_point);
        } else {
            for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it) stack.push_back(*it);
        }
    }
    return order;
}

namespace {

void hilbert_rot(std::uint64_t s, std::uint64_t& x, std::uint64_t& y, std::uint64_t rx,
                 std::uint64_t ry) {
    if (ry == 0) {
        if (rx == 1) {
            x = s - 1 - x;
            y = s - 1 - y;
        }
        std::swap(x, y);
    }
}

}

std::array<double, 2> hilbert_curve_point(double s, int curve_order) {
    if (curve_order < 1 || curve_order > 16) throw invalid_parameter("curve order must be in [1,16]");
    std::uint64_t cells = 1ULL << (2 * curve_order);
    std::uint64_t side = 1ULL << curve_order;
    double clamped = std::min(std::max(s, 0.0), 1.0);
    std::uint64_t d = std::min(static_cast<std::uint64_t>(clamped * static_cast<double>(cells)),
                               cells - 1);
    std::uint64_t x = 0, y = 0, t = d;
    for (std::uint64_t step = 1; step < side; step *= 2) {
        std::uint64_t rx = 1 & (t / 2);
        std::uint64_t ry = 1 & (t ^ rx);
        hilbert_rot(step, x, y, rx, ry);
        x += step * rx;
        y += step * ry;
        t /= 4;
    }
    double denom = static_cast<double>(side - 1);
    return {static_cast<double>(x) / denom, static_cast<double>(y) / denom};
}

HolderSurjection holder_surjection(const HstTree& t, const std::vector<double>& mu,
                                   int curve_order) {
    int n = t.num_points();
    if (static_cast<int>(mu.size()) != n) throw invalid_measure("weight vector size mismatch");
    double total = 0.0;
    for (double w : mu) {
        if (w < 0.0 || !std::isfinite(w)) throw invalid_measure("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw invalid_measure("weights must sum to 1");

    std::vector<int> order = linear_order(t);
    HolderSurjection result;
    result.phi.assign(n, 0.0);
    double acc = 0.0;
    for (int p : order) {
        result.phi[p] = acc;
        acc += mu[p];
    }
    result.images.resize(n);
    for (int p = 0; p < n; ++p) result.images[p] = hilbert_curve_point(result.phi[p], curve_order);

    // subtree measures: K certifies |phi(x)-phi(y)| <= K rho(x,y)^2
    std::vector<double> submass(t.num_nodes(), 0.0);
    for (int id = t.num_nodes() - 1; id >= 0; --id) {
        const auto& nd = t.node(id);
        if (nd.children.empty())
            submass[id] = mu[nd.leaf_point];
        else
            for (int c : nd.children) submass[id] += submass[c];
    }
    double K = 0.0;
    for (int id = 0; id < t.num_nodes(); ++id)
        if (t.node(id).diameter > 0.0)
            K = std::max(K, submass[id] / (t.node(id).diameter * t.node(id).diameter));
    result.holder_constant = K;
    return result;
}

void write_hst(std::ostream& out, const HstTree& t) {
    out << t.num_nodes() << ' ' << t.num_points() << '\n';
    out.precision(17);
    for (int id = 0; id < t.num_nodes(); ++id) {
        const auto& nd = t.node(id);
        out << id << ' ' << nd.parent << ' ' << nd.diameter << ' ' << nd.leaf_point << '\n';
    }
}

HstTree read_hst(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("hst file: missing header line 1");
    std::istringstream head(line);
    int nnodes, nleaves;
    if (!(head >> nnodes >> nleaves)) throw parse_error("hst file: bad header at line 1");
    std::vector<HstTree::Node> nodes(nnodes);
    std::vector<int> leaf_of(nleaves, -1);
    int root = -1;
    for (int i = 0; i < nnodes; ++i) {
        if (!std::getline(in, line)) throw parse_error("hst file: missing node at line " +
                                                       std::to_string(i + 2));
        std::istringstream ls(line);
        int id, parent, leaf_point;
        double diameter;
        if (!(ls >> id >> parent >> diameter >> leaf_point))
            throw parse_error("hst file: bad node at line " + std::to_string(i + 2));
        if (id < 0 || id >= nnodes) throw parse_error("hst file: node id out of range");
        nodes[id] = {parent, diameter, {}, leaf_point};
        if (parent < 0) root = id;
        if (leaf_point >= 0) {
            if (leaf_point >= nleaves) throw parse_error("hst file: leaf point out of range");
            leaf_of[leaf_point] = id;
        }
    }
    for (int id = 0; id < nnodes; ++id)
        if (nodes[id].parent >= 0) nodes[nodes[id].parent].children.push_back(id);
    return HstTree(std::move(nodes), root, std::move(leaf_of));
}

}
