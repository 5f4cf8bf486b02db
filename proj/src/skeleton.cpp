#include "ribe/skeleton.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ribe {

namespace {

struct OpenCluster {
    std::vector<int> points;   // sorted
    int parent_node;           // -1 for the root cluster
};

}

SkeletonResult extract_skeleton(const FiniteMetric& m, double epsilon, std::uint64_t seed) {
    if (epsilon <= 0.0 || epsilon >= 1.0) throw invalid_parameter("epsilon must be in (0,1)");
    int n = m.size();
    SkeletonResult result;
    result.epsilon = epsilon;
    result.seed = seed;
    result.certified_distortion = 128.0 / epsilon;

    if (n == 1) {
        std::vector<HstTree::Node> nodes{{-1, 0.0, {}, 0}};
        result.tree = HstTree(std::move(nodes), 0, {0});
        result.subset = {0};
        result.measured_max_ratio = 1.0;
        return result;
    }

    double diam = m.max_distance();
    SplitMix64 rng(seed);

    // cluster hierarchy; a node is materialized when its cluster splits
    std::vector<HstTree::Node> nodes;
    std::vector<int> leaf_of(n, -1);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<OpenCluster> open{{all, -1}};
    std::vector<char> padded(n, 1);

    double delta_prev = diam;  // Delta_{l-1}, the label handed to splitting clusters
    for (int level = 1;; ++level) {
        bool all_singleton = true;
        for (const auto& c : open)
            if (c.points.size() > 1) all_singleton = false;
        if (all_singleton) break;

        double delta = diam * std::pow(8.0, -level);
        double radius = (0.25 + 0.25 * rng.next_double()) * delta;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);

        std::vector<int> cluster_of(n, -1);
        for (std::size_t ci = 0; ci < open.size(); ++ci)
            for (int p : open[ci].points) cluster_of[p] = static_cast<int>(ci);

        // greedy claiming in permutation order, refining the previous level
        std::vector<int> claim(n, -1);
        std::vector<std::vector<int>> sub_of_open(open.size());
        for (int c : perm) {
            if (claim[c] >= 0) continue;
            int ci = cluster_of[c];
            sub_of_open[ci].push_back(c);  // claim centers in permutation order
            for (int x : open[ci].points)
                if (claim[x] < 0 && m(x, c) <= radius) claim[x] = c;
        }

        // padding check at this scale
        double pad_radius = (epsilon / 16.0) * delta;
        for (int x = 0; x < n; ++x) {
            if (!padded[x]) continue;
            for (int y = 0; y < n; ++y)
                if (y != x && m(x, y) <= pad_radius && claim[y] != claim[x]) {
                    padded[x] = 0;
                    break;
                }
        }

        // split clusters into next-level open clusters
        std::vector<OpenCluster> next_open;
        for (std::size_t ci = 0; ci < open.size(); ++ci) {
            auto& oc = open[ci];
            if (oc.points.size() == 1) {
                next_open.push_back(std::move(oc));
                continue;
            }
            // group points by claim center, children ordered by min point id
            std::vector<std::vector<int>> groups;
            for (int center : sub_of_open[ci]) {
                std::vector<int> g;
                for (int x : oc.points)
                    if (claim[x] == center) g.push_back(x);
                if (!g.empty()) groups.push_back(std::move(g));
            }
            if (groups.size() == 1) {
                next_open.push_back(std::move(oc));  // unsplit, stays open
                continue;
            }
            std::sort(groups.begin(), groups.end(),
                      [](const auto& a, const auto& b) { return a.front() < b.front(); });
            int id = static_cast<int>(nodes.size());
            nodes.push_back({oc.parent_node, delta_prev, {}, -1});
            if (oc.parent_node >= 0) nodes[oc.parent_node].children.push_back(id);
            for (auto& g : groups) next_open.push_back({std::move(g), id});
        }
        open = std::move(next_open);
        delta_prev = delta;
    }

    // remaining open clusters are singletons: leaves
    for (const auto& oc : open) {
        int p = oc.points[0];
        int id = static_cast<int>(nodes.size());
        nodes.push_back({oc.parent_node, 0.0, {}, p});
        if (oc.parent_node >= 0) nodes[oc.parent_node].children.push_back(id);
        leaf_of[p] = id;
    }
    int root = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parent < 0) root = static_cast<int>(i);
    result.tree = HstTree(std::move(nodes), root, std::move(leaf_of));

    for (int x = 0; x < n; ++x)
        if (padded[x]) result.subset.push_back(x);

    double ratio = result.subset.empty() ? 0.0 : 1.0;
    for (int s : result.subset)
        for (int y = 0; y < n; ++y) {
            if (y == s) continue;
            ratio = std::max(ratio, ultra_distance(result.tree, s, y) / m(s, y));
        }
    result.measured_max_ratio = ratio;
    return result;
}

namespace {

FiniteMetric extend_impl(const FiniteMetric& m, const std::vector<int>& subset,
                         const FiniteMetric& rho0, double D, bool check) {
    int n = m.size();
    int sn = static_cast<int>(subset.size());
    if (rho0.size() != sn) throw precondition_violated("rho0 size mismatch with subset");
    if (D < 1.0) throw precondition_violated("D must be >= 1");
    if (sn == 0) throw precondition_violated("subset must be nonempty");

    if (check) {
        double tol = 1e-9 * std::max(sn > 1 ? rho0.max_distance() : 0.0, m.max_distance());
        for (int i = 0; i < sn; ++i)
            for (int j = i + 1; j < sn; ++j) {
                double r = rho0(i, j), d = m(subset[i], subset[j]);
                if (r < d - tol || r > D * d + tol)
                    throw precondition_violated("rho0 fails the sandwich on pair (" +
                                                std::to_string(subset[i]) + "," +
                                                std::to_string(subset[j]) + ")");
                for (int k = 0; k < sn; ++k) {
                    if (k == i || k == j) continue;
                    if (r > std::max(rho0(i, k), rho0(k, j)) + tol)
                        throw precondition_violated("rho0 fails the ultra-triangle on triple (" +
                                                    std::to_string(subset[i]) + "," +
                                                    std::to_string(subset[j]) + "," +
                                                    std::to_string(subset[k]) + ")");
                }
            }
    }

    // nearest point of S, ties broken by minimal id
    std::vector<int> pi(n);
    std::vector<double> a(n, 0.0);
    std::vector<int> spos(n, -1);
    for (int i = 0; i < sn; ++i) spos[subset[i]] = i;
    for (int x = 0; x < n; ++x) {
        if (spos[x] >= 0) {
            pi[x] = x;
            continue;
        }
        int best = subset[0];
        for (int i = 1; i < sn; ++i)
            if (m(x, subset[i]) < m(x, best)) best = subset[i];
        pi[x] = best;
        a[x] = 2.0 * D * m(x, best);
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            double base = (pi[x] == pi[y]) ? 0.0 : rho0(spos[pi[x]], spos[pi[y]]);
            out.push_back(std::max({base, a[x], a[y]}));
        }
    return FiniteMetric::trusted(n, std::move(out));
}

}

FiniteMetric extend_ultrametric(const FiniteMetric& m, const std::vector<int>& subset,
                                const FiniteMetric& rho0, double D) {
    return extend_impl(m, subset, rho0, D, true);
}

FiniteMetric extend_ultrametric_unchecked(const FiniteMetric& m, const std::vector<int>& subset,
                                          const FiniteMetric& rho0, double D) {
    return extend_impl(m, subset, rho0, D, false);
}

void write_skeleton(std::ostream& out, const SkeletonResult& s) {
    out.precision(17);
    out << s.epsilon << ' ' << s.seed << ' ' << s.certified_distortion << ' '
        << s.measured_max_ratio << '\n';
    out << "S:";
    for (int p : s.subset) out << ' ' << p;
    out << '\n';
    write_hst(out, s.tree);
}

SkeletonResult read_skeleton(std::istream& in) {
    SkeletonResult s;
    std::string line;
    if (!std::getline(in, line)) throw parse_error("skeleton: missing header");
    std::istringstream head(line);
    if (!(head >> s.epsilon >> s.seed >> s.certified_distortion >> s.measured_max_ratio))
        throw parse_error("skeleton: bad header");
    if (!std::getline(in, line) || line.rfind("S:", 0) != 0)
        throw parse_error("skeleton: missing subset line");
    std::istringstream sl(line.substr(2));
    int p;
    while (sl >> p) s.subset.push_back(p);
    s.tree = read_hst(in);
    return s;
}

}
