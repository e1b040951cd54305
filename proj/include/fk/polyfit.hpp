#pragma once
// polyfit.hpp - polynomial representation of F_{t-j}(x, l) for t = floor(log_l x).
// Near the maximal number of factors the separation sum has only tau + 1
// nonvanishing terms, so F_{t-j}(x, l) is a degree-tau polynomial. Two exact
// routes compute its coefficients: Stirling-number assembly of the kappa
// node values, and a Vandermonde-type linear solve on the lambda node values.
// Both run in exact rational arithmetic and must agree.

#include <cstdint>
#include <string>
#include <vector>

#include "fk/arith.hpp"

namespace fk {

// Dense exact-rational polynomial; coefficients[m] multiplies X^m.
struct Poly {
    std::vector<Rat> coefficients;

    void normalize(); // drop trailing zeros
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Rat eval(const Rat& at) const;
    bool operator==(const Poly&) const = default;
    std::string pretty(const std::string& var) const;
};

// Truncation index: largest i <= k with (l+1)^i <= floor(x / l^(k-i)),
// i.e. the last index whose term survives in the separation sum; -1 when
// even the i = 0 term vanishes (l^k > x). Exact big-integer comparisons.
int tau_index(const BigNat& x, unsigned long k, std::uint64_t l);

// floor(x_i) = floor(x / l^(t-j-i)) for i = 0..tau, t = floor(log_l x).
std::vector<BigNat> node_floors(const BigNat& x, std::uint64_t l, unsigned j, int tau);

// Full trace of a polynomial computation.
struct PolynomialReport {
    BigNat x;
    std::uint64_t l = 2;
    unsigned j = 0;
    long t = 0;
    int tau = -1;
    std::vector<BigNat> nodes;  // floor(x_i)
    std::vector<BigNat> kappa;  // F_i(x_i, l+1), Stirling route
    std::vector<BigNat> lambda; // F_i(x_i, l), solve route
    Poly poly_in_k;             // F_{t-j}(x,l) = poly_in_k(t - j)
    Poly poly_in_t;             // F_{t-j}(x,l) = poly_in_t(t)
    BigNat value;               // F_{t-j}(x, l)
};

// Stirling route: v_m = sum_{i=m}^{tau} kappa_i s(i, m) / i!.
PolynomialReport poly_via_stirling(const BigNat& x, std::uint64_t l, unsigned j);

// Solve route: w from lambda = w B, b_{i,m} = (i+j)^m, exact rational
// Gaussian elimination with partial pivoting. The nodes are distinct powers,
// so the matrix is never singular.
PolynomialReport poly_via_solve(const BigNat& x, std::uint64_t l, unsigned j);

// Both routes, cross-checked: identical nodes, equal values, and
// poly_in_k(t - j) == poly_in_t(t) == value.
PolynomialReport poly_report(const BigNat& x, std::uint64_t l, unsigned j);

// Lower/upper bounding polynomials in t for F_{t-j}(n, l) over the whole
// band t = floor(log_l n): evaluate the solve route at n = l^m and
// n = l^(m+1) - 1; monotonicity of F in x does the rest.
struct BandBounds {
    unsigned j = 0;
    std::uint64_t l = 2;
    Poly lower, upper;
};

BandBounds bounds_for_band(unsigned j, std::uint64_t l);

// Exact endpoint check over t in [t_min, t_max]: lower(t) = F_{t-j}(l^t),
// upper(t) = F_{t-j}(l^(t+1) - 1), and lower(t) <= upper(t).
bool verify_band(const BandBounds& bounds, long t_min, long t_max);

} // namespace fk
