#include "ribe/spectral.hpp"
#include "ribe/common.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace ribe {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw invalid_parameter("integer overflow in polynomial arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw invalid_parameter("integer overflow in polynomial arithmetic");
    return r;
}

}

double IntPolynomial::eval(double x) const {
    double r = 0.0;
    for (std::size_t d = coeffs.size(); d-- > 0;) r = r * x + static_cast<double>(coeffs[d]);
    return r;
}

std::string IntPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        std::int64_t c = coeff(d);
        if (c == 0 && !(first && d == 0)) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::int64_t a = std::abs(c);
        if (a != 1 || d == 0) os << a;
        if (d >= 1) os << "x";
        if (d >= 2) os << "^" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

IntPolynomial geronimus(int k, int m) {
    if (k < 3) throw invalid_parameter("geronimus requires k >= 3");
    if (m < 0) throw invalid_parameter("geronimus requires m >= 0");
    IntPolynomial p0{{1}};
    if (m == 0) return p0;
    IntPolynomial p1{{0, 1}};
    if (m == 1) return p1;
    IntPolynomial p2{{-k, 0, 1}};
    IntPolynomial prev2 = std::move(p1), prev1 = std::move(p2);
    for (int d = 3; d <= m; ++d) {
        IntPolynomial next;
        next.coeffs.assign(d + 1, 0);
        for (int i = 0; i <= d - 1; ++i)
            next.coeffs[i + 1] = checked_add(next.coeffs[i + 1], prev1.coeff(i));
        for (int i = 0; i <= d - 2; ++i)
            next.coeffs[i] = checked_add(next.coeffs[i],
                                         checked_mul(-(k - 1), prev2.coeff(i)));
        prev2 = std::move(prev1);
        prev1 = std::move(next);
    }
    return prev1;
}

std::vector<double> polynomial_roots(const IntPolynomial& p, double lo, double hi) {
    // sign-change bisection on a fine grid; adequate for the simple real
    // spectra handled here
    const int grid = 200000;
    std::vector<double> roots;
    double prev_x = lo, prev_v = p.eval(lo);
    for (int i = 1; i <= grid; ++i) {
        double x = lo + (hi - lo) * i / grid;
        double v = p.eval(x);
        if (prev_v == 0.0) {
            roots.push_back(prev_x);
        } else if (v != 0.0 && (prev_v < 0.0) != (v < 0.0)) {
            double a = prev_x, b = x, fa = prev_v;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (a + b);
                double fm = p.eval(mid);
                if (fm == 0.0) { a = b = mid; break; }
                if ((fa < 0.0) == (fm < 0.0)) { a = mid; fa = fm; }
                else b = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    if (prev_v == 0.0) roots.push_back(prev_x);
    return roots;
}

Graph distance_m_graph(const Graph& g, int m) {
    if (m < 1) throw invalid_parameter("distance_m_graph requires m >= 1");
    int n = g.num_vertices();
    Graph out(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> dist = bfs_distances(g, v);
        for (int w = v + 1; w < n; ++w)
            if (dist[w] == m) out.add_edge(v, w);
    }
    return out;
}

namespace {

using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

IntMat adjacency_int(const Graph& g) {
    int n = g.num_vertices();
    IntMat A = IntMat::Zero(n, n);
    for (const auto& e : g.edges()) {
        A(e.u, e.v) = 1;
        A(e.v, e.u) = 1;
    }
    return A;
}

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.rows());
    IntMat r = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int kk = 0; kk < n; ++kk) {
            std::int64_t av = a(i, kk);
            if (av == 0) continue;
            for (int j = 0; j < n; ++j)
                if (b(kk, j) != 0) r(i, j) = checked_add(r(i, j), checked_mul(av, b(kk, j)));
        }
    return r;
}

void require_regular_girth(const Graph& g, int k, int m, bool strict_half_girth) {
    int deg;
    if (!g.is_regular(&deg) || deg != k)
        throw precondition_violated("graph is not " + std::to_string(k) + "-regular");
    int gg = girth(g);
    if (strict_half_girth && !(gg == kInfiniteGirth || 2 * m < gg))
        throw precondition_violated("girth " + std::to_string(gg) + " requires m < girth/2");
}

}

IdentityReport verify_geronimus_identity(const Graph& g, int k, int m) {
    if (m < 0) throw invalid_parameter("m must be >= 0");
    require_regular_girth(g, k, m, true);
    int n = g.num_vertices();
    IntPolynomial p = geronimus(k, m);
    IntMat A = adjacency_int(g);
    // Horner over integer matrices
    IntMat acc = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) acc(i, i) = p.coeff(p.degree());
    for (int d = p.degree() - 1; d >= 0; --d) {
        acc = int_mat_mul(acc, A);
        for (int i = 0; i < n; ++i) acc(i, i) = checked_add(acc(i, i), p.coeff(d));
    }
    IntMat target = IntMat::Zero(n, n);
    if (m == 0) {
        for (int i = 0; i < n; ++i) target(i, i) = 1;
    } else {
        target = adjacency_int(distance_m_graph(g, m));
    }
    std::int64_t dev = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(acc(i, j) - target(i, j)));
    return {dev == 0, dev};
}

FloorReport lambda_min_floor(const Graph& g, int k, int m) {
    if (m <= 0 || m % 2 != 0)
        throw precondition_violated("the eigenvalue floor needs positive even m");
    require_regular_girth(g, k, m, true);
    Graph gm = distance_m_graph(g, m);
    int n = g.num_vertices();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : gm.edges()) {
        A(e.u, e.v) = 1.0;
        A(e.v, e.u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    double floor_val = -std::pow(k - 1.0, m / 2.0 - 1.0) * k * (m + 1);
    return {lmin, floor_val, lmin >= floor_val - 1e-8};
}

MixingReport self_mixing_check(const Graph& h, const std::vector<int>& S) {
    int deg;
    if (!h.is_regular(&deg)) throw not_regular("self-mixing needs a regular graph");
    int n = h.num_vertices();
    std::vector<char> in_s(n, 0);
    for (int v : S) {
        if (v < 0 || v >= n) throw unknown_point("subset id out of range");
        in_s[v] = 1;
    }
    long long edges_in = 0;
    for (const auto& e : h.edges())
        if (in_s[e.u] && in_s[e.v]) ++edges_in;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : h.edges()) {
        A(e.u, e.v) = 1.0;
        A(e.v, e.u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    double s = static_cast<double>(S.size());
    double bound = (deg * s * s / n + lmin * s) / 2.0;
    return {edges_in, bound, 2.0 * edges_in >= deg * s * s / n + lmin * s - 1e-8};
}

}
