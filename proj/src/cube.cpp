#include "ribe/cube.hpp"
#include "ribe/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ribe {

namespace {

void check_cube(const CubeFunction& f, int n_cap = 16) {
    if (f.n < 1 || f.n > n_cap)
        throw dimension_too_large("cube dimension must lie in [1," + std::to_string(n_cap) + "]");
    if (f.values.size() != (1u << f.n))
        throw invalid_parameter("cube function needs 2^n values");
    for (const auto& v : f.values)
        if (static_cast<int>(v.size()) != f.d)
            throw invalid_parameter("cube value dimension mismatch");
}

double lp_norm(const std::vector<double>& v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

}

double CubeFunction::norm(const std::vector<double>& v) const {
    return lp_norm(v, norm_exponent);
}

double CubeFunction::dist(int eps_a, int eps_b) const {
    std::vector<double> diff(d);
    for (int c = 0; c < d; ++c) diff[c] = values[eps_a][c] - values[eps_b][c];
    return norm(diff);
}

CubeFunction walsh_transform(const CubeFunction& f) {
    check_cube(f);
    CubeFunction out = f;
    int N = 1 << f.n;
    for (int half = 1; half < N; half <<= 1)
        for (int base = 0; base < N; base += 2 * half)
            for (int i = base; i < base + half; ++i)
                for (int c = 0; c < f.d; ++c) {
                    double a = out.values[i][c], b = out.values[i + half][c];
                    out.values[i][c] = a + b;
                    out.values[i + half][c] = a - b;
                }
    double scale = 1.0 / N;
    for (auto& v : out.values)
        for (double& x : v) x *= scale;
    return out;
}

CubeFunction inverse_walsh(const CubeFunction& spectrum) {
    check_cube(spectrum);
    CubeFunction out = spectrum;
    int N = 1 << spectrum.n;
    for (int half = 1; half < N; half <<= 1)
        for (int base = 0; base < N; base += 2 * half)
            for (int i = base; i < base + half; ++i)
                for (int c = 0; c < spectrum.d; ++c) {
                    double a = out.values[i][c], b = out.values[i + half][c];
                    out.values[i][c] = a + b;
                    out.values[i + half][c] = a - b;
                }
    return out;
}

CubeFunction partial_derivative(const CubeFunction& f, int j) {
    check_cube(f);
    if (j < 1 || j > f.n) throw index_out_of_range("coordinate must lie in [1,n]");
    CubeFunction out = f;
    int bit = 1 << (j - 1);
    for (int e = 0; e < (1 << f.n); ++e)
        for (int c = 0; c < f.d; ++c)
            out.values[e][c] = (f.values[e][c] - f.values[e ^ bit][c]) / 2.0;
    return out;
}

CubeFunction partial_derivative_fourier(const CubeFunction& f, int j) {
    check_cube(f);
    if (j < 1 || j > f.n) throw index_out_of_range("coordinate must lie in [1,n]");
    CubeFunction spec = walsh_transform(f);
    int bit = 1 << (j - 1);
    for (int a = 0; a < (1 << f.n); ++a)
        if (!(a & bit)) std::fill(spec.values[a].begin(), spec.values[a].end(), 0.0);
    return inverse_walsh(spec);
}

CubeFunction heat_semigroup(const CubeFunction& f, double t) {
    check_cube(f);
    if (t < 0.0) throw negative_time("heat semigroup needs t >= 0");
    CubeFunction spec = walsh_transform(f);
    for (int a = 0; a < (1 << f.n); ++a) {
        double mult = std::exp(-t * __builtin_popcount(static_cast<unsigned>(a)));
        for (double& x : spec.values[a]) x *= mult;
    }
    return inverse_walsh(spec);
}

CubeFunction heat_semigroup_kernel(const CubeFunction& f, double t) {
    check_cube(f, 12);
    if (t < 0.0) throw negative_time("heat semigroup needs t >= 0");
    int N = 1 << f.n;
    double decay = std::exp(-t);
    CubeFunction out = f;
    for (int e = 0; e < N; ++e) {
        std::vector<double> acc(f.d, 0.0);
        for (int dl = 0; dl < N; ++dl) {
            // R_t(eps * delta): coordinate product has sign -1 where bits differ
            int prod = e ^ dl;
            double kernel = 1.0;
            for (int b = 0; b < f.n; ++b) kernel *= 1.0 + ((prod >> b) & 1 ? -decay : decay);
            for (int c = 0; c < f.d; ++c) acc[c] += kernel * f.values[dl][c];
        }
        for (int c = 0; c < f.d; ++c) out.values[e][c] = acc[c] / N;
    }
    return out;
}

PisierReport pisier_ratio(const CubeFunction& f, double q) {
    check_cube(f, 12);
    if (q < 1.0) throw invalid_parameter("pisier_ratio needs q >= 1");
    int N = 1 << f.n;
    std::vector<double> mean(f.d, 0.0);
    for (const auto& v : f.values)
        for (int c = 0; c < f.d; ++c) mean[c] += v[c];
    for (double& x : mean) x /= N;

    double lhs_acc = 0.0;
    std::vector<double> diff(f.d);
    for (const auto& v : f.values) {
        for (int c = 0; c < f.d; ++c) diff[c] = v[c] - mean[c];
        lhs_acc += std::pow(f.norm(diff), q);
    }
    double lhs = std::pow(lhs_acc / N, 1.0 / q);

    // derivatives once, then a Gray-code sweep over delta per eps
    std::vector<CubeFunction> deriv;
    deriv.reserve(f.n);
    for (int j = 1; j <= f.n; ++j) deriv.push_back(partial_derivative(f, j));

    double rhs_acc = 0.0;
    std::vector<double> sum(f.d);
    for (int e = 0; e < N; ++e) {
        // delta = (+1,...,+1) start: sum_i +d_i f(eps)
        std::fill(sum.begin(), sum.end(), 0.0);
        for (int j = 0; j < f.n; ++j)
            for (int c = 0; c < f.d; ++c) sum[c] += deriv[j].values[e][c];
        double local = std::pow(f.norm(sum), q);
        int gray_prev = 0;
        for (int it = 1; it < N; ++it) {
            int gray = it ^ (it >> 1);
            int flipped = gray ^ gray_prev;  // single bit
            int j = __builtin_ctz(static_cast<unsigned>(flipped));
            double sign = (gray & flipped) ? -2.0 : 2.0;  // bit set means delta_j = -1
            for (int c = 0; c < f.d; ++c) sum[c] += sign * deriv[j].values[e][c];
            local += std::pow(f.norm(sum), q);
            gray_prev = gray;
        }
        rhs_acc += local / N;
    }
    double rhs = std::pow(rhs_acc / N, 1.0 / q);
    return {lhs, rhs, lhs == 0.0 ? 0.0 : lhs / rhs};
}

namespace {

template <typename Dist>
double type_constant_core(int n, Dist&& dist, double p, TypeVariant variant) {
    if (n < 1 || n > 16) throw dimension_too_large("cube dimension must lie in [1,16]");
    if (p < 1.0) throw invalid_parameter("type exponent must be >= 1");
    int N = 1 << n;
    int full = N - 1;
    double diag1 = 0.0, diag_p = 0.0, diag_2 = 0.0;
    double edge_p = 0.0, edge_2 = 0.0;
    for (int e = 0; e < N; ++e) {
        double dd = dist(e, e ^ full);
        diag1 += dd;
        diag_p += std::pow(dd, p);
        diag_2 += dd * dd;
        for (int j = 0; j < n; ++j) {
            double de = dist(e, e ^ (1 << j));
            edge_p += std::pow(de, p);
            edge_2 += de * de;
        }
    }
    diag1 /= N;
    diag_p /= N;
    diag_2 /= N;
    edge_p /= N;
    edge_2 /= N;
    switch (variant) {
        case TypeVariant::plain:
            return edge_p == 0.0 ? 0.0 : diag1 / std::pow(edge_p, 1.0 / p);
        case TypeVariant::enflo:
            return edge_p == 0.0 ? 0.0 : std::pow(diag_p / edge_p, 1.0 / p);
        case TypeVariant::bmw:
            return edge_2 == 0.0
                       ? 0.0
                       : std::sqrt(diag_2 / (std::pow(n, 2.0 / p - 1.0) * edge_2));
    }
    throw invalid_parameter("unknown type variant");
}

}

double metric_type_constant(const CubeFunction& f, double p, TypeVariant variant) {
    check_cube(f);
    return type_constant_core(f.n, [&](int a, int b) { return f.dist(a, b); }, p, variant);
}

double metric_type_constant(int n, const std::vector<int>& f, const FiniteMetric& m, double p,
                            TypeVariant variant) {
    if (n < 1 || n > 16 || f.size() != (1u << n))
        throw invalid_parameter("point map needs 2^n entries");
    for (int x : f)
        if (x < 0 || x >= m.size()) throw unknown_point("point map target out of range");
    return type_constant_core(n, [&](int a, int b) { return m(f[a], f[b]); }, p, variant);
}

namespace {

template <typename Dist>
double cotype_constant_core(int n, int m, long long total, Dist&& dist, double q) {
    if (n < 1) throw invalid_parameter("torus dimension must be >= 1");
    if (m < 2 || m % 2 != 0) throw invalid_parameter("torus side must be even and >= 2");
    if (q < 1.0) throw invalid_parameter("cotype exponent must be >= 1");
    double pow3n = std::pow(3.0, n);
    if (static_cast<double>(total) * pow3n > 5e8)
        throw dimension_too_large("m^n 3^n evaluation budget exceeded");

    std::vector<int> x(n, 0), strides(n);
    long long s = 1;
    for (int i = 0; i < n; ++i) {
        strides[i] = static_cast<int>(s);
        s *= m;
    }
    auto shift = [&](long long idx, int coord, int delta) {
        int xi = static_cast<int>(idx / strides[coord]) % m;
        int yi = ((xi + delta) % m + m) % m;
        return idx + static_cast<long long>(yi - xi) * strides[coord];
    };

    double lhs = 0.0;
    for (long long idx = 0; idx < total; ++idx)
        for (int j = 0; j < n; ++j)
            lhs += std::pow(dist(shift(idx, j, m / 2), idx), q);

    double rhs = 0.0;
    std::vector<int> eps(n, -1);
    for (;;) {
        for (long long idx = 0; idx < total; ++idx) {
            long long y = idx;
            for (int j = 0; j < n; ++j)
                if (eps[j] != 0) y = shift(y, j, eps[j]);
            rhs += std::pow(dist(y, idx), q);
        }
        int j = 0;
        while (j < n && eps[j] == 1) eps[j++] = -1;
        if (j == n) break;
        ++eps[j];
    }
    if (lhs == 0.0) return 0.0;
    return std::pow(lhs * pow3n / rhs, 1.0 / q) / m;
}

}

double metric_cotype_constant(const TorusFunction& f, double q) {
    long long total = 1;
    for (int i = 0; i < f.n; ++i) total *= f.m;
    if (static_cast<long long>(f.values.size()) != total)
        throw invalid_parameter("torus function needs m^n values");
    auto dist = [&](long long a, long long b) {
        std::vector<double> diff(f.d);
        for (int c = 0; c < f.d; ++c) diff[c] = f.values[a][c] - f.values[b][c];
        return lp_norm(diff, f.norm_exponent);
    };
    return cotype_constant_core(f.n, f.m, total, dist, q);
}

double metric_cotype_constant(int n, int m, const std::vector<int>& f, const FiniteMetric& M,
                              double q) {
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    if (static_cast<long long>(f.size()) != total)
        throw invalid_parameter("point map needs m^n entries");
    for (int x : f)
        if (x < 0 || x >= M.size()) throw unknown_point("point map target out of range");
    return cotype_constant_core(n, m, total,
                                [&](long long a, long long b) { return M(f[a], f[b]); }, q);
}

double cube_distortion_lower(int n, double p, double T) {
    if (n < 1) throw invalid_parameter("n must be >= 1");
    if (T <= 0.0) throw invalid_parameter("T must be positive");
    return std::pow(n, 1.0 - 1.0 / p) / T;
}

void write_cube(std::ostream& out, const CubeFunction& f) {
    out << f.n << ' ' << f.d << '\n';
    out.precision(17);
    for (const auto& v : f.values) {
        for (int c = 0; c < f.d; ++c) out << v[c] << (c + 1 == f.d ? '\n' : ' ');
    }
}

CubeFunction read_cube(std::istream& in) {
    CubeFunction f;
    if (!(in >> f.n >> f.d)) throw parse_error("cube file: bad header at line 1");
    if (f.n < 1 || f.n > 16) throw parse_error("cube file: dimension out of range");
    f.values.assign(1u << f.n, std::vector<double>(f.d));
    for (auto& v : f.values)
        for (int c = 0; c < f.d; ++c)
            if (!(in >> v[c])) throw parse_error("cube file: truncated values");
    return f;
}

}
