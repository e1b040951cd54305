#pragma once
// sieves.hpp - smallest-prime-factor / Moebius / prime sieves and per-n
// divisor-count tables. Construction is single-threaded; built tables are
// immutable and safe to share across threads.

#include <cstdint>
#include <vector>

#include "fk/arith.hpp"

namespace fk {

// Soft cap on sieve allocations; beyond this we refuse rather than thrash.
inline constexpr std::uint64_t kSieveLimitCap = 200'000'000;

struct SieveTables {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> spf;             // spf[n] = least prime factor, n >= 2
    std::vector<std::uint64_t> divisor_counts;  // d_k(n), present when divisor_k > 0
    unsigned divisor_k = 0;

    // Builds the spf table up to limit; with dk > 0 additionally fills
    // divisor_counts[n] = d_dk(n) using d_k(p^e) = C(e + k - 1, e).
    static SieveTables build(std::uint64_t limit, unsigned dk = 0);

    bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
    PrimeFactorization factor(std::uint64_t n) const;
};

// mu(n) for n <= limit (index 0 unused).
std::vector<std::int8_t> mobius_sieve(std::uint64_t limit);

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// pi(x) table: prime_counts[x] = #{p <= x}.
std::vector<std::uint32_t> prime_count_table(std::uint64_t limit);

} // namespace fk
