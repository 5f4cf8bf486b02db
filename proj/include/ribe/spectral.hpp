#ifndef ribe_spectral_hpp
#define ribe_spectral_hpp

#include <cstdint>
#include <string>
#include <vector>

#include "ribe/graph.hpp"

namespace ribe {

// integer polynomial, coefficients degree-ascending; exact 64-bit arithmetic
struct IntPolynomial {
    std::vector<std::int64_t> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::int64_t coeff(int d) const {
        return d >= 0 && d < static_cast<int>(coeffs.size()) ? coeffs[d] : 0;
    }
    double eval(double x) const;
    std::string to_string() const;  // degree-descending with explicit signs
};

// P_0 = 1, P_1 = x, P_2 = x^2 - k, P_m = x P_{m-1} - (k-1) P_{m-2}
IntPolynomial geronimus(int k, int m);

// real roots by bisection on sign changes (used to check the root interval)
std::vector<double> polynomial_roots(const IntPolynomial& p, double lo, double hi);

// G^(m): same vertex set, edges exactly between pairs at graph distance m
Graph distance_m_graph(const Graph& g, int m);

struct IdentityReport {
    bool holds;
    std::int64_t max_deviation;  // max |P_m^k(A)_ij - A_{G^(m)}_ij|
};

// exact integer check of A_{G^(m)} = P_m^k(A_G); requires k-regular girth > 2m
IdentityReport verify_geronimus_identity(const Graph& g, int k, int m);

struct FloorReport {
    double lambda_min;  // smallest eigenvalue of A_{G^(m)}
    double floor;       // -(k-1)^{m/2-1} k (m+1)
    bool holds;         // lambda_min >= floor - 1e-8
};

// m must be even with 0 < m < girth/2
FloorReport lambda_min_floor(const Graph& g, int k, int m);

struct MixingReport {
    long long edges_in_subset;  // E_H(S)
    double bound;               // (d |S|^2 / n + lambda_n |S|) / 2
    bool holds;
};

// 2 E_H(S) >= d |S|^2 / n + lambda_n(H) |S| for d-regular H
MixingReport self_mixing_check(const Graph& h, const std::vector<int>& S);

}

#endif
