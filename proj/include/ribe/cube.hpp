#ifndef ribe_cube_hpp
#define ribe_cube_hpp

#include <iosfwd>
#include <string>
#include <vector>

#include "ribe/metric.hpp"

namespace ribe {

/*
 * Vector-valued function on {-1,1}^n. Sign patterns are bit-encoded:
 * bit b of the index is 1 iff epsilon_{b+1} = -1; subsets A of [n] use the
 * same encoding. W_A(eps) = (-1)^{popcount(A & eps)}.
 */
struct CubeFunction {
    int n = 0;                                // dimension, values.size() == 2^n
    int d = 1;                                // codomain dimension
    double norm_exponent = 2.0;               // lp norm tag on the codomain
    std::vector<std::vector<double>> values;  // indexed by bit-encoded eps

    double norm(const std::vector<double>& v) const;
    double dist(int eps_a, int eps_b) const;
};

// function on Z_m^n; x is encoded as sum x_i m^i
struct TorusFunction {
    int n = 0;
    int m = 0;  // even
    int d = 1;
    double norm_exponent = 2.0;
    std::vector<std::vector<double>> values;  // m^n entries
};

enum class TypeVariant { plain, enflo, bmw };

// spectrum values[A] = fhat(A) = E_eps[f(eps) W_A(eps)]; fast Walsh-Hadamard
CubeFunction walsh_transform(const CubeFunction& f);
// f(eps) = sum_A fhat(A) W_A(eps)
CubeFunction inverse_walsh(const CubeFunction& spectrum);

// pointwise (f(eps) - f(eps with coordinate j flipped)) / 2, 1 <= j <= n
CubeFunction partial_derivative(const CubeFunction& f, int j);
// same operator through the spectrum: keep fhat(A) only for A containing j
CubeFunction partial_derivative_fourier(const CubeFunction& f, int j);

// Fourier multiplier e^{-t|A|}
CubeFunction heat_semigroup(const CubeFunction& f, double t);
// convolution with the Riesz kernel R_t(eps) = prod_i (1 + e^{-t} eps_i)
CubeFunction heat_semigroup_kernel(const CubeFunction& f, double t);

struct PisierReport {
    double lhs;    // (E ||f - E f||^q)^{1/q}
    double rhs;    // (E_eps E_delta || sum_i delta_i d_i f(eps) ||^q)^{1/q}
    double ratio;  // lhs / rhs, 0 when both sides vanish
};

PisierReport pisier_ratio(const CubeFunction& f, double q);

/*
 * Smallest T making the chosen diagonal-versus-edge inequality an equality
 * for this f:
 *   plain:  E[d(f(e), f(-e))]   <= T ( sum_j E[d(f(e), f(e^j))^p] )^{1/p}
 *   enflo:  E[d(f(e), f(-e))^p] <= T^p  sum_j E[d(f(e), f(e^j))^p]
 *   bmw:    E[d(f(e), f(-e))^2] <= T^2 n^{2/p-1} sum_j E[d(f(e), f(e^j))^2]
 */
double metric_type_constant(const CubeFunction& f, double p, TypeVariant variant);
// same with f a point map into an explicit finite metric
double metric_type_constant(int n, const std::vector<int>& f, const FiniteMetric& m, double p,
                            TypeVariant variant);

/*
 * Smallest C with
 *   sum_j sum_x d(f(x + (m/2) e_j), f(x))^q
 *     <= (C m)^q / 3^n  sum_{eps in {-1,0,1}^n} sum_x d(f(x + eps), f(x))^q
 */
double metric_cotype_constant(const TorusFunction& f, double q);
double metric_cotype_constant(int n, int m, const std::vector<int>& f, const FiniteMetric& M,
                              double q);

// n^{1 - 1/p} / T: cube distortion lower bound from a type-p constant T
double cube_distortion_lower(int n, double p, double T);

// "n d" header, then 2^n lines of d reals in bit-index order
void write_cube(std::ostream& out, const CubeFunction& f);
CubeFunction read_cube(std::istream& in);

}

#endif
