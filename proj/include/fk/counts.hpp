#pragma once
// counts.hpp - the ordered-factorization counting functions f_k(n, l):
// the number of ordered tuples (i_1, ..., i_k), every factor >= l, whose
// product is n. Several independent algorithms are provided on purpose;
// they cross-check each other and a brute-force enumeration oracle.
//
// Conventions: f_0(n, l) = [n == 1]; d_k(n) = f_k(n, 1); f_k(n) = f_k(n, 2).
// All results are exact.

#include <cstdint>
#include <vector>

#include "fk/arith.hpp"

namespace fk {

using CountValue = BigNat;

struct CountQuery {
    std::uint64_t n = 1;
    unsigned k = 0;
    std::uint64_t l = 1;
};

// Exhaustive DFS over divisor tuples. Deliberately naive; everything else
// is measured against it. Guarded to n <= 10^5, k <= 12.
CountValue oracle_count(std::uint64_t n, unsigned k, std::uint64_t l);

// Divisor-sum recursion f_k(n,l) = sum_{i|n, i>=l} f_{k-1}(n/i, l),
// memoized per call on (n, k).
CountValue f_recursive(std::uint64_t n, unsigned k, std::uint64_t l);

// MacMahon's alternating-sum formula for l = 2, from the prime signature.
// Partial sums are signed; the result is asserted nonnegative.
CountValue f_macmahon(const PrimeFactorization& pf, unsigned k);

enum class SeparationVariant {
    kSingleLevel,     // separate factors equal to l, recurse with l+1
    kFullElimination, // eliminate every level m = l .. floor(n^(1/k))
};

// Counting by separating out the smallest admissible factor.
CountValue f_separation(std::uint64_t n, unsigned k, std::uint64_t l,
                        SeparationVariant variant = SeparationVariant::kSingleLevel);

// Piltz divisor function d_k(n) = prod_j C(e_j + k - 1, e_j).
CountValue d_k(const PrimeFactorization& pf, unsigned k);
CountValue d_k(std::uint64_t n, unsigned k);

// d_k(n) = sum_{i <= log2 n} C(k, i) f_i(n)  and its alternating inverse
// f_k(n) = sum_{i <= k} (-1)^(k-i) C(k, i) d_i(n); a round trip is identity.
CountValue binomial_transform_d_from_f(std::uint64_t n, unsigned k);
CountValue inverse_transform_f_from_d(std::uint64_t n, unsigned k);

// Kalmar's function f(n) = sum_{k=1}^{Omega(n)} f_k(n); f(1) = 0.
CountValue kalmar_f(std::uint64_t n);

// Truncates sum_k u^-k d_k(n) adaptively (appended term below `tolerance`
// in the decaying regime) and returns the exact absolute difference from
// u/(u-1) * sum_k (u-1)^-k f_k(n), which is a finite sum. Requires u > 1.
Rat sen_series_check(std::uint64_t n, const Rat& u, const Rat& tolerance);

// f_k(i, l) for all i <= limit and 0 <= row <= k_max, by k-fold truncated
// Dirichlet convolution of the indicator of {i >= l}. Values must stay
// inside 64 bits; fine for limit <= 2*10^8.
std::vector<std::vector<std::uint64_t>> f_rows(std::uint64_t limit, unsigned k_max,
                                               std::uint64_t l);

// Compares the truncated coefficients of the k-th Dirichlet power of the
// {i >= l} indicator against f_recursive for every n <= limit.
bool dirichlet_power_check(unsigned k, std::uint64_t l, std::uint64_t limit);

// l^k > n, evaluated exactly.
bool pow_exceeds(std::uint64_t l, unsigned k, std::uint64_t n);

} // namespace fk
