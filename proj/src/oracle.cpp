#include "ribe/oracle.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ribe {

LcaIndex::LcaIndex(const HstTree& t) {
    int nn = t.num_nodes();
    first_.assign(nn, -1);
    euler_.reserve(2 * nn);
    depth_.reserve(2 * nn);

    // iterative euler tour
    struct Frame { int node, depth; std::size_t next_child; };
    std::vector<Frame> stack{{t.root(), 0, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_child == 0) {
            first_[f.node] = static_cast<int>(euler_.size());
            euler_.push_back(f.node);
            depth_.push_back(f.depth);
        }
        const auto& ch = t.node(f.node).children;
        if (f.next_child < ch.size()) {
            int c = ch[f.next_child++];
            stack.push_back({c, f.depth + 1, 0});
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                euler_.push_back(stack.back().node);
                depth_.push_back(stack.back().depth);
            }
        }
    }

    int len = static_cast<int>(euler_.size());
    log2_.assign(len + 1, 0);
    for (int i = 2; i <= len; ++i) log2_[i] = log2_[i / 2] + 1;
    int levels = log2_[len] + 1;
    table_.assign(levels, std::vector<int>(len));
    std::iota(table_[0].begin(), table_[0].end(), 0);
    for (int k = 1; k < levels; ++k) {
        int half = 1 << (k - 1);
        for (int i = 0; i + (1 << k) <= len; ++i) {
            int a = table_[k - 1][i], b = table_[k - 1][i + half];
            table_[k][i] = depth_[a] <= depth_[b] ? a : b;
        }
    }
}

int LcaIndex::lca_probed(int node_a, int node_b, int& probes) const {
    probes = 0;
    int l = first_[node_a];
    ++probes;
    int r = first_[node_b];
    ++probes;
    if (l > r) std::swap(l, r);
    int k = log2_[r - l + 1];
    ++probes;
    int a = table_[k][l];
    ++probes;
    int b = table_[k][r - (1 << k) + 1];
    ++probes;
    probes += 2;
    int pos = depth_[a] <= depth_[b] ? a : b;
    ++probes;
    return euler_[pos];
}

int LcaIndex::lca(int node_a, int node_b) const {
    int l = first_[node_a], r = first_[node_b];
    if (l > r) std::swap(l, r);
    int k = log2_[r - l + 1];
    int a = table_[k][l], b = table_[k][r - (1 << k) + 1];
    return euler_[depth_[a] <= depth_[b] ? a : b];
}

LcaIndex build_lca(const HstTree& t) { return LcaIndex(t); }

namespace {

void force_singleton_subset(SkeletonResult& sk, const FiniteMetric& sub) {
    sk.subset = {0};
    double ratio = 1.0;
    for (int y = 1; y < sub.size(); ++y)
        ratio = std::max(ratio, ultra_distance(sk.tree, 0, y) / sub(0, y));
    sk.measured_max_ratio = ratio;
}

}

OracleStructure build_oracle(const FiniteMetric& m, double epsilon, std::uint64_t seed) {
    OracleStructure o;
    o.n = m.size();
    o.epsilon = epsilon;
    o.seed = seed;
    o.certified_distortion = 128.0 / epsilon;
    o.level_of.assign(o.n, -1);

    SplitMix64 seeds(seed);
    std::vector<int> remaining(o.n);
    std::iota(remaining.begin(), remaining.end(), 0);

    while (!remaining.empty()) {
        OracleLevel lvl;
        lvl.remaining = remaining;
        FiniteMetric sub = m.restrict(remaining);
        SkeletonResult sk = extract_skeleton(sub, epsilon, seeds.next());
        if (sk.subset.empty()) {
            sk = extract_skeleton(sub, epsilon, seeds.next());
            if (sk.subset.empty()) force_singleton_subset(sk, sub);
        }
        int k = static_cast<int>(o.levels.size());
        lvl.subset.reserve(sk.subset.size());
        for (int local : sk.subset) {
            lvl.subset.push_back(remaining[local]);
            o.level_of[remaining[local]] = k;
        }
        lvl.local_of.assign(o.n, -1);
        for (std::size_t i = 0; i < remaining.size(); ++i) lvl.local_of[remaining[i]] = static_cast<int>(i);
        lvl.lca = LcaIndex(sk.tree);
        lvl.skeleton = std::move(sk);

        std::vector<int> next;
        next.reserve(remaining.size() - lvl.subset.size());
        std::set_difference(remaining.begin(), remaining.end(), lvl.subset.begin(),
                            lvl.subset.end(), std::back_inserter(next));
        remaining = std::move(next);
        o.levels.push_back(std::move(lvl));
    }
    return o;
}

double query_distance_probed(const OracleStructure& o, int i, int j, int& probes) {
    if (i < 0 || i >= o.n || j < 0 || j >= o.n)
        throw unknown_point("query ids must lie in [0," + std::to_string(o.n) + ")");
    probes = 0;
    if (i == j) return 0.0;
    int k = std::min(o.level_of[i], o.level_of[j]);
    probes += 2;
    const OracleLevel& lvl = o.levels[k];
    int li = lvl.local_of[i], lj = lvl.local_of[j];
    probes += 2;
    int la = lvl.skeleton.tree.leaf_of(li), lb = lvl.skeleton.tree.leaf_of(lj);
    probes += 2;
    int lca_probes = 0;
    int anc = lvl.lca.lca_probed(la, lb, lca_probes);
    probes += lca_probes;
    ++probes;
    return lvl.skeleton.tree.node(anc).diameter;
}

double query_distance(const OracleStructure& o, int i, int j) {
    int probes;
    return query_distance_probed(o, i, j, probes);
}

RankingStructure build_ranking(const OracleStructure& o, const FiniteMetric& m) {
    RankingStructure r;
    r.n = o.n;
    r.factor = 6.0 * o.certified_distortion;
    r.order.assign(o.n, {});
    r.inverse.assign(o.n, std::vector<int>(o.n));

    for (const auto& lvl : o.levels) {
        FiniteMetric rho0 = induced_metric(lvl.skeleton.tree);
        FiniteMetric rho = extend_ultrametric_unchecked(m, lvl.remaining, rho0,
                                                        o.certified_distortion);
        for (int x : lvl.subset) {
            std::vector<int> ord(o.n);
            std::iota(ord.begin(), ord.end(), 0);
            std::sort(ord.begin(), ord.end(), [&](int a, int b) {
                double da = rho(x, a), db = rho(x, b);
                if (da != db) return da < db;
                return a < b;
            });
            for (int i = 0; i < o.n; ++i) r.inverse[x][ord[i]] = i + 1;
            r.order[x] = std::move(ord);
        }
    }
    return r;
}

int rank_query(const RankingStructure& r, int x, int i) {
    if (x < 0 || x >= r.n) throw unknown_point("rank base point out of range");
    if (i < 1 || i > r.n) throw index_out_of_range("rank index must lie in [1,n]");
    return r.order[x][i - 1];
}

int rank_inverse(const RankingStructure& r, int x, int u) {
    if (x < 0 || x >= r.n || u < 0 || u >= r.n)
        throw unknown_point("rank ids out of range");
    return r.inverse[x][u];
}

void write_oracle(std::ostream& out, const OracleStructure& o, const RankingStructure& r) {
    out.precision(17);
    out << "RIBE-ORACLE v1 " << o.n << ' ' << o.epsilon << ' ' << o.seed << ' '
        << o.certified_distortion << '\n';
    out << "levels " << o.levels.size() << '\n';
    for (const auto& lvl : o.levels) write_skeleton(out, lvl.skeleton);
    out << "RANKING " << r.factor << '\n';
    for (int x = 0; x < r.n; ++x) {
        for (int i = 0; i < r.n; ++i) out << r.order[x][i] << (i + 1 == r.n ? '\n' : ' ');
    }
}

void read_oracle(std::istream& in, OracleStructure& o, RankingStructure& r) {
    std::string tag, ver;
    if (!(in >> tag >> ver >> o.n >> o.epsilon >> o.seed >> o.certified_distortion) ||
        tag != "RIBE-ORACLE" || ver != "v1")
        throw parse_error("oracle dump: bad header");
    std::size_t nlevels;
    if (!(in >> tag >> nlevels) || tag != "levels")
        throw parse_error("oracle dump: bad level count");
    in.ignore();

    o.levels.clear();
    o.level_of.assign(o.n, -1);
    std::vector<int> remaining(o.n);
    std::iota(remaining.begin(), remaining.end(), 0);
    for (std::size_t k = 0; k < nlevels; ++k) {
        OracleLevel lvl;
        lvl.remaining = remaining;
        lvl.skeleton = read_skeleton(in);
        for (int local : lvl.skeleton.subset) {
            if (local < 0 || local >= static_cast<int>(remaining.size()))
                throw parse_error("oracle dump: subset id out of range");
            lvl.subset.push_back(remaining[local]);
            o.level_of[remaining[local]] = static_cast<int>(k);
        }
        lvl.local_of.assign(o.n, -1);
        for (std::size_t i = 0; i < remaining.size(); ++i) lvl.local_of[remaining[i]] = static_cast<int>(i);
        lvl.lca = LcaIndex(lvl.skeleton.tree);
        std::vector<int> next;
        std::set_difference(remaining.begin(), remaining.end(), lvl.subset.begin(),
                            lvl.subset.end(), std::back_inserter(next));
        remaining = std::move(next);
        o.levels.push_back(std::move(lvl));
    }
    if (!remaining.empty()) throw parse_error("oracle dump: levels do not exhaust the space");

    if (!(in >> tag >> r.factor) || tag != "RANKING")
        throw parse_error("oracle dump: missing ranking section");
    r.n = o.n;
    r.order.assign(o.n, std::vector<int>(o.n));
    r.inverse.assign(o.n, std::vector<int>(o.n));
    for (int x = 0; x < o.n; ++x)
        for (int i = 0; i < o.n; ++i) {
            if (!(in >> r.order[x][i])) throw parse_error("oracle dump: truncated ranking");
            r.inverse[x][r.order[x][i]] = i + 1;
        }
}

void save_oracle(const std::string& path, const OracleStructure& o, const RankingStructure& r) {
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    write_oracle(f, o, r);
}

void load_oracle(const std::string& path, OracleStructure& o, RankingStructure& r) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open " + path);
    read_oracle(f, o, r);
}

}
