#pragma once
// arith.hpp - exact arithmetic foundation: big naturals and rationals (GMP),
// prime factorization, exact floor-logarithms, binomials and signed Stirling
// numbers of the first kind.
//
// Everything here is pure and exact; no floating point is involved in any
// integer-boundary decision.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fk {

// Arbitrary-precision nonnegative integer. GMP keeps the representation
// canonical (no leading zero limbs); nonnegativity is a usage contract
// enforced at the API boundaries that produce counts.
using BigNat = mpz_class;
using BigInt = mpz_class;

// Exact signed rational, always stored reduced with positive denominator;
// zero is canonically 0/1. mpq_class arithmetic maintains these invariants.
using Rat = mpq_class;

inline Rat make_rat(const BigInt& num, const BigInt& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// floor(sqrt(n)), exact.
std::uint64_t isqrt_u64(std::uint64_t n);

// floor(n^(1/k)), exact, k >= 1.
std::uint64_t iroot_u64(std::uint64_t n, unsigned k);

// base^exp as a big integer.
BigNat ipow(std::uint64_t base, unsigned long exp);

// largest t >= 0 with l^t <= x, by exact comparison; requires x >= 1, l >= 2.
long floor_log(const BigNat& x, std::uint64_t l);

// binomial coefficient, 0 when k > n.
BigNat binomial(unsigned long n, unsigned long k);

struct PrimeFactor {
    std::uint64_t prime;
    unsigned exponent;
    bool operator==(const PrimeFactor&) const = default;
};

// n = prod p_i^e_i with primes strictly increasing; n = 1 has no factors.
struct PrimeFactorization {
    std::uint64_t n = 1;
    std::vector<PrimeFactor> factors;

    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    unsigned big_omega() const {
        unsigned total = 0;
        for (const auto& f : factors) total += f.exponent;
        return total;
    }
    std::uint64_t reconstruct() const;
};

// Trial-division factorization, full 64-bit range.
PrimeFactorization factorize(std::uint64_t n);

// Triangular table of signed Stirling numbers of the first kind s(k, i):
// the coefficients of the falling factorial, x(x-1)...(x-k+1) = sum_i s(k,i) x^i.
// Recurrence s(k+1, i) = s(k, i-1) - k s(k, i).
class StirlingTable {
  public:
    explicit StirlingTable(unsigned max_k);

    unsigned max_k() const { return max_k_; }
    // s(k, i); throws std::out_of_range unless 0 <= i <= k <= max_k.
    const BigInt& s(unsigned k, unsigned i) const;

  private:
    unsigned max_k_;
    std::vector<std::vector<BigInt>> rows_;
};

// Shared-table convenience wrapper; grows on demand, thread-safe.
BigInt stirling_first(unsigned k, unsigned i);

} // namespace fk
