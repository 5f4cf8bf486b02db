#include "ribe/markov.hpp"
#include "ribe/common.hpp"
#include "ribe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ribe {

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

void check_distribution(const Eigen::VectorXd& v, const char* what) {
    double sum = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (v[i] < -1e-12) throw invalid_parameter(std::string(what) + " has a negative entry");
        sum += v[i];
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw invalid_parameter(std::string(what) + " does not sum to 1");
}

}

MarkovChain make_chain(SpMat A, Eigen::VectorXd pi, Eigen::VectorXd start, bool reversible) {
    int n = static_cast<int>(A.rows());
    if (A.cols() != n) throw invalid_parameter("transition matrix must be square");
    if (pi.size() != n || start.size() != n)
        throw invalid_parameter("distribution size mismatch");
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (SpMat::InnerIterator it(A, i); it; ++it) {
            if (it.value() < 0.0) throw invalid_parameter("negative transition probability");
            row += it.value();
        }
        if (std::abs(row - 1.0) > 1e-12)
            throw invalid_parameter("row " + std::to_string(i) + " sums to " +
                                    std::to_string(row));
    }
    check_distribution(pi, "pi");
    check_distribution(start, "start");
    Eigen::RowVectorXd piA = pi.transpose() * A;
    for (int j = 0; j < n; ++j)
        if (std::abs(piA[j] - pi[j]) > 1e-10)
            throw invalid_parameter("pi is not stationary at state " + std::to_string(j));
    if (reversible) {
        for (int i = 0; i < n; ++i)
            for (SpMat::InnerIterator it(A, i); it; ++it) {
                int j = static_cast<int>(it.col());
                double back = A.coeff(j, i);
                if (std::abs(pi[i] * it.value() - pi[j] * back) > 1e-10)
                    throw invalid_parameter("detailed balance fails on (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            }
    }
    MarkovChain c;
    c.A = std::move(A);
    c.pi = std::move(pi);
    c.start = std::move(start);
    c.reversible = reversible;
    return c;
}

MarkovChain stationary_walk(const Graph& g) {
    if (!g.is_connected()) throw disconnected_graph("stationary walk needs a connected graph");
    if (g.num_edges() == 0) throw invalid_parameter("stationary walk needs at least one edge");
    int n = g.num_vertices();
    SpMat A(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * g.num_edges());
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) trips.push_back({v, w, 1.0 / g.degree(v)});
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd pi(n);
    for (int v = 0; v < n; ++v) pi[v] = static_cast<double>(g.degree(v)) / (2.0 * g.num_edges());
    Eigen::VectorXd start = pi;
    return make_chain(std::move(A), std::move(pi), std::move(start), true);
}

MarkovChain subset_walk(const Graph& g, const std::vector<int>& S, int m) {
    Graph gm = distance_m_graph(g, m);
    int s = static_cast<int>(S.size());
    std::vector<int> pos(g.num_vertices(), -1);
    for (int i = 0; i < s; ++i) {
        if (S[i] < 0 || S[i] >= g.num_vertices()) throw unknown_point("subset id out of range");
        if (pos[S[i]] >= 0) throw invalid_parameter("subset has a repeated id");
        pos[S[i]] = i;
    }
    std::vector<std::vector<int>> adj(s);
    long long nedges = 0;
    for (int i = 0; i < s; ++i)
        for (int w : gm.neighbors(S[i]))
            if (pos[w] >= 0) {
                adj[i].push_back(pos[w]);
                ++nedges;
            }
    nedges /= 2;
    if (nedges == 0)
        throw empty_induced_graph("no distance-" + std::to_string(m) + " pair inside the subset");
    SpMat A(s, s);
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd pi(s);
    for (int i = 0; i < s; ++i) {
        if (adj[i].empty()) {
            trips.push_back({i, i, 1.0});
            pi[i] = 0.0;
            continue;
        }
        for (int j : adj[i]) trips.push_back({i, j, 1.0 / adj[i].size()});
        pi[i] = static_cast<double>(adj[i].size()) / (2.0 * nedges);
    }
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd start = pi;
    return make_chain(std::move(A), std::move(pi), std::move(start), true);
}

int smallest_admissible_m(int k, int n, int subset_size, int m_cap) {
    if (k < 3 || n < 1 || subset_size < 1 || subset_size > n)
        throw invalid_parameter("smallest_admissible_m: bad parameters");
    double frac = static_cast<double>(subset_size) / n;
    for (int m = 6; m <= m_cap; m += 6) {
        double first = (2.0 * m + 2.0) / std::pow(k - 1.0, m / 2.0);
        double second = 16.0 / (k * std::pow(k - 1.0, m / 3.0));
        if (frac >= first && frac >= second) return m;
    }
    return -1;
}

namespace {

// sum_j pi-weighted one-step cost sum_ij w_i A_ij d(f i, f j)^p
double one_step_cost(const MarkovChain& c, const FiniteMetric& m, const std::vector<int>& f,
                     double p, const Eigen::VectorXd& w) {
    double s = 0.0;
    for (int i = 0; i < c.states(); ++i) {
        if (w[i] == 0.0) continue;
        double row = 0.0;
        for (SpMat::InnerIterator it(c.A, i); it; ++it)
            row += it.value() * std::pow(m(f[i], f[static_cast<int>(it.col())]), p);
        s += w[i] * row;
    }
    return s;
}

}

double markov_type_ratio(const MarkovChain& c, const FiniteMetric& m, const std::vector<int>& f,
                         double p, int t) {
    if (t < 1) throw invalid_parameter("markov_type_ratio requires t >= 1");
    if (static_cast<int>(f.size()) != c.states())
        throw invalid_parameter("image map size must equal the state count");
    double denom = t * one_step_cost(c, m, f, p, c.pi);
    if (denom == 0.0) throw degenerate_chain("one-step expectation is zero");
    double num = 0.0;
    for (int i = 0; i < c.states(); ++i) {
        if (c.pi[i] == 0.0) continue;
        Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(c.states());
        x[i] = 1.0;
        for (int step = 0; step < t; ++step) x = x * c.A;
        double acc = 0.0;
        for (int j = 0; j < c.states(); ++j)
            if (x[j] != 0.0) acc += x[j] * std::pow(m(f[i], f[j]), p);
        num += c.pi[i] * acc;
    }
    return num / denom;
}

double distortion_lower_bound(const MarkovChain& c, const FiniteMetric& m, double p, double M,
                              int t_max) {
    if (t_max < 1) throw invalid_parameter("t_max must be >= 1");
    if (M <= 0.0) throw invalid_parameter("M must be positive");
    if (c.states() != m.size())
        throw invalid_parameter("states must coincide with metric points");
    if (m.size() < 2) return 0.0;
    std::vector<int> id(m.size());
    for (int i = 0; i < m.size(); ++i) id[i] = i;
    double step = one_step_cost(c, m, id, p, c.pi);
    if (step == 0.0) throw degenerate_chain("one-step expectation is zero");

    std::vector<double> num(t_max + 1, 0.0);
    for (int i = 0; i < c.states(); ++i) {
        if (c.pi[i] == 0.0) continue;
        Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(c.states());
        x[i] = 1.0;
        for (int t = 1; t <= t_max; ++t) {
            x = x * c.A;
            double acc = 0.0;
            for (int j = 0; j < c.states(); ++j)
                if (x[j] != 0.0) acc += x[j] * std::pow(m(i, j), p);
            num[t] += c.pi[i] * acc;
        }
    }
    double best = 0.0;
    for (int t = 1; t <= t_max; ++t)
        best = std::max(best, std::pow(num[t] / (std::pow(M, p) * t * step), 1.0 / p));
    return best;
}

std::vector<double> drift_profile(const MarkovChain& c, const FiniteMetric& m, int t_max) {
    if (t_max < 1) throw invalid_parameter("t_max must be >= 1");
    if (c.states() != m.size())
        throw invalid_parameter("states must coincide with metric points");
    int n = c.states();
    // fixed block decomposition so the reduction order does not depend on the
    // thread count
    const int nblocks = 64;
    std::vector<std::vector<double>> block(nblocks, std::vector<double>(t_max + 1, 0.0));
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < nblocks; ++b) {
        int lo = static_cast<int>(static_cast<long long>(b) * n / nblocks);
        int hi = static_cast<int>(static_cast<long long>(b + 1) * n / nblocks);
        for (int i = lo; i < hi; ++i) {
            if (c.start[i] == 0.0) continue;
            Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(n);
            x[i] = 1.0;
            for (int t = 1; t <= t_max; ++t) {
                x = x * c.A;
                double acc = 0.0;
                for (int j = 0; j < n; ++j)
                    if (x[j] != 0.0) acc += x[j] * m(i, j);
                block[b][t] += c.start[i] * acc;
            }
        }
    }
    std::vector<double> out(t_max + 1, 0.0);
    for (int b = 0; b < nblocks; ++b)
        for (int t = 1; t <= t_max; ++t) out[t] += block[b][t];
    return out;
}

namespace {

std::vector<Eigen::RowVectorXd> step_distributions(const MarkovChain& c, int T) {
    std::vector<Eigen::RowVectorXd> q(T + 1);
    q[0] = c.start.transpose();
    for (int t = 1; t <= T; ++t) q[t] = q[t - 1] * c.A;
    return q;
}

std::vector<SpMat> dyadic_powers(const SpMat& A, int T) {
    std::vector<SpMat> B{A};  // B[s] = A^{2^s}
    while ((1LL << B.size()) <= T) {
        SpMat sq = B.back() * B.back();
        sq.makeCompressed();
        B.push_back(std::move(sq));
    }
    return B;
}

}

ConvexityResult markov_convexity_functional(const MarkovChain& c, const FiniteMetric& m,
                                            const std::vector<int>& f, double p, int T) {
    if (T < 1) throw invalid_parameter("T must be >= 1");
    if (static_cast<int>(f.size()) != c.states())
        throw invalid_parameter("image map size must equal the state count");
    auto q = step_distributions(c, T);
    double rhs = 0.0;
    for (int t = 1; t <= T; ++t) rhs += one_step_cost(c, m, f, p, q[t - 1].transpose());
    if (rhs == 0.0) throw degenerate_chain("right-hand side is zero");

    auto B = dyadic_powers(c.A, T);
    double lhs = 0.0;
    for (std::size_t s = 0; s < B.size(); ++s) {
        double scale = std::pow(2.0, -static_cast<double>(s) * p);
        for (int t = 1 << s; t <= T; ++t) {
            const Eigen::RowVectorXd& qw = q[t - (1 << s)];
            double term = 0.0;
            for (int w = 0; w < c.states(); ++w) {
                if (qw[w] == 0.0) continue;
                // E[d(f U, f V)^p], U,V iid one fork-step rows
                std::vector<std::pair<int, double>> row;
                for (SpMat::InnerIterator it(B[s], w); it; ++it)
                    row.push_back({static_cast<int>(it.col()), it.value()});
                double pair = 0.0;
                for (std::size_t a = 0; a < row.size(); ++a)
                    for (std::size_t b = a + 1; b < row.size(); ++b)
                        pair += 2.0 * row[a].second * row[b].second *
                                std::pow(m(f[row[a].first], f[row[b].first]), p);
                term += qw[w] * pair;
            }
            lhs += scale * term;
        }
    }
    return {lhs, rhs, std::pow(lhs / rhs, 1.0 / p)};
}

ConvexityResult markov_convexity_tree(const MarkovChain& c, const std::vector<int>& parent,
                                      int T) {
    if (T < 1) throw invalid_parameter("T must be >= 1");
    int n = c.states();
    if (static_cast<int>(parent.size()) != n)
        throw invalid_parameter("parent array size must equal the state count");
    std::vector<int> depth(n, -1);
    for (int v = 0; v < n; ++v) {
        // parents precede children in the numbering
        if (parent[v] < 0) depth[v] = 0;
        else if (parent[v] < v && depth[parent[v]] >= 0) depth[v] = depth[parent[v]] + 1;
        else throw invalid_parameter("parent array is not topologically ordered");
    }

    auto q = step_distributions(c, T);
    double rhs = 0.0;
    for (int t = 1; t <= T; ++t)
        for (int i = 0; i < n; ++i) {
            if (q[t - 1][i] == 0.0) continue;
            double row = 0.0;
            for (SpMat::InnerIterator it(c.A, i); it; ++it)
                if (static_cast<int>(it.col()) != i) row += it.value();
            rhs += q[t - 1][i] * row;
        }
    if (rhs == 0.0) throw degenerate_chain("right-hand side is zero");

    auto B = dyadic_powers(c.A, T);
    // subtree mass aggregation buffers, reset via the touched list
    std::vector<double> S0(n, 0.0), S1(n, 0.0);
    std::vector<char> touched(n, 0);
    std::vector<int> touch_list;

    double lhs = 0.0;
    for (std::size_t s = 0; s < B.size(); ++s) {
        double scale = std::pow(4.0, -static_cast<double>(s));  // p = 2
        for (int t = 1 << s; t <= T; ++t) {
            const Eigen::RowVectorXd& qw = q[t - (1 << s)];
            double term = 0.0;
            for (int w = 0; w < n; ++w) {
                if (qw[w] == 0.0) continue;
                double M0 = 0.0, M1 = 0.0, M2 = 0.0;
                for (SpMat::InnerIterator it(B[s], w); it; ++it) {
                    int u = static_cast<int>(it.col());
                    double b = it.value();
                    double du = depth[u];
                    M0 += b;
                    M1 += b * du;
                    M2 += b * du * du;
                    for (int z = u; z >= 0; z = parent[z]) {
                        if (!touched[z]) {
                            touched[z] = 1;
                            touch_list.push_back(z);
                        }
                        S0[z] += b;
                        S1[z] += b * du;
                    }
                }
                // sum over ordered pairs of d(u,v)^2 with
                // d(u,v) = dep u + dep v - 2 dep lca, grouped by the lca
                double A1 = 0.0, A2 = 0.0;
                for (int z : touch_list) {
                    double dz = depth[z];
                    A1 += dz * 2.0 * S0[z] * S1[z];
                    A2 += dz * dz * S0[z] * S0[z];
                    int pz = parent[z];
                    if (pz >= 0) {
                        double dp = depth[pz];
                        A1 -= dp * 2.0 * S0[z] * S1[z];
                        A2 -= dp * dp * S0[z] * S0[z];
                    }
                }
                double pair = 2.0 * M0 * M2 + 2.0 * M1 * M1 - 4.0 * A1 + 4.0 * A2;
                term += qw[w] * pair;
                for (int z : touch_list) {
                    S0[z] = 0.0;
                    S1[z] = 0.0;
                    touched[z] = 0;
                }
                touch_list.clear();
            }
            lhs += scale * term;
        }
    }
    return {lhs, rhs, std::sqrt(lhs / rhs)};
}

MarkovChain outward_tree_chain(int k, int n, std::vector<int>* parent_out) {
    if (k < 3) throw invalid_parameter("outward_tree_chain requires k >= 3");
    if (n < 1) throw invalid_parameter("outward_tree_chain requires n >= 1");
    // mirror gen_tree's BFS numbering
    long long total = 1, level = k;
    for (int d = 1; d <= n; ++d) {
        total += level;
        level *= (k - 1);
    }
    int nv = static_cast<int>(total);
    std::vector<int> parent(nv, -1);
    std::vector<std::vector<int>> children(nv);
    int next = 1;
    std::vector<int> frontier{0};
    for (int depth = 1; depth <= n; ++depth) {
        std::vector<int> next_frontier;
        for (int v : frontier) {
            int nc = (depth == 1) ? k : k - 1;
            for (int ci = 0; ci < nc; ++ci) {
                parent[next] = v;
                children[v].push_back(next);
                next_frontier.push_back(next++);
            }
        }
        frontier = std::move(next_frontier);
    }

    SpMat A(nv, nv);
    std::vector<Eigen::Triplet<double>> trips;
    for (int v = 0; v < nv; ++v) {
        if (children[v].empty()) {
            trips.push_back({v, v, 1.0});
            continue;
        }
        for (int c : children[v]) trips.push_back({v, c, 1.0 / children[v].size()});
    }
    A.setFromTriplets(trips.begin(), trips.end());

    // limiting distribution: uniform over the leaves
    long long nleaves = 0;
    for (int v = 0; v < nv; ++v)
        if (children[v].empty()) ++nleaves;
    Eigen::VectorXd pi = Eigen::VectorXd::Zero(nv);
    for (int v = 0; v < nv; ++v)
        if (children[v].empty()) pi[v] = 1.0 / nleaves;
    Eigen::VectorXd start = Eigen::VectorXd::Zero(nv);
    start[0] = 1.0;
    if (parent_out) *parent_out = std::move(parent);
    return make_chain(std::move(A), std::move(pi), std::move(start), false);
}

MarkovChain laakso_chain(int k) {
    if (k < 1) throw invalid_parameter("laakso_chain requires k >= 1");
    std::vector<std::pair<int, int>> arcs;
    Graph g = gen_laakso(k, &arcs);
    int nv = g.num_vertices();
    std::vector<std::vector<int>> out(nv);
    for (auto [u, v] : arcs) out[u].push_back(v);

    SpMat A(nv, nv);
    std::vector<Eigen::Triplet<double>> trips;
    for (int v = 0; v < nv; ++v) {
        if (out[v].empty()) {
            trips.push_back({v, v, 1.0});
            continue;
        }
        for (int w : out[v]) trips.push_back({v, w, 1.0 / out[v].size()});
    }
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd pi = Eigen::VectorXd::Zero(nv);
    pi[1] = 1.0;  // rightmost vertex absorbs all mass
    Eigen::VectorXd start = Eigen::VectorXd::Zero(nv);
    start[0] = 1.0;
    return make_chain(std::move(A), std::move(pi), std::move(start), false);
}

void write_chain(std::ostream& out, const MarkovChain& c) {
    int n = c.states();
    out << n << '\n';
    out.precision(17);
    for (int i = 0; i < n; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
        for (SpMat::InnerIterator it(c.A, i); it; ++it) row[it.col()] = it.value();
        for (int j = 0; j < n; ++j) out << row[j] << (j + 1 == n ? '\n' : ' ');
    }
    for (int j = 0; j < n; ++j) out << c.pi[j] << (j + 1 == n ? '\n' : ' ');
}

MarkovChain read_chain(std::istream& in) {
    int n;
    if (!(in >> n) || n < 1) throw parse_error("chain file: bad state count at line 1");
    SpMat A(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v;
            if (!(in >> v)) throw parse_error("chain file: truncated row " + std::to_string(i));
            if (v != 0.0) trips.push_back({i, j, v});
        }
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd pi(n);
    for (int j = 0; j < n; ++j)
        if (!(in >> pi[j])) throw parse_error("chain file: missing stationary row");
    // flag reversibility when detailed balance happens to hold
    bool rev = true;
    for (int i = 0; i < n && rev; ++i)
        for (SpMat::InnerIterator it(A, i); it; ++it)
            if (std::abs(pi[i] * it.value() - pi[it.col()] * A.coeff(it.col(), i)) > 1e-10) {
                rev = false;
                break;
            }
    Eigen::VectorXd start = pi;
    return make_chain(std::move(A), std::move(pi), std::move(start), rev);
}

}
