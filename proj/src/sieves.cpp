#include "fk/sieves.hpp"

#include <stdexcept>

namespace fk {

namespace {

void check_limit(std::uint64_t limit) {
    if (limit < 1) throw std::domain_error("sieve limit must be >= 1");
    if (limit > kSieveLimitCap)
        throw std::length_error("sieve limit exceeds allocation cap");
}

} // namespace

SieveTables SieveTables::build(std::uint64_t limit, unsigned dk) {
    check_limit(limit);
    SieveTables t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = static_cast<std::uint32_t>(n);
            primes.push_back(static_cast<std::uint32_t>(n));
        }
        for (std::uint32_t p : primes) {
            if (p > t.spf[n] || p * static_cast<std::uint64_t>(n) > limit) break;
            t.spf[p * n] = p;
        }
    }
    if (dk > 0) {
        t.divisor_k = dk;
        // d_k(p^e) = C(e + k - 1, e); largest e is log2(limit), well inside
        // uint64 for the k values the cap admits.
        unsigned max_e = 1;
        while ((1ULL << (max_e + 1)) <= limit) ++max_e;
        std::vector<std::uint64_t> ppow(max_e + 2, 1);
        for (unsigned e = 1; e <= max_e + 1; ++e) {
            BigNat b = binomial(e + dk - 1, e);
            if (!b.fits_ulong_p())
                throw std::domain_error("d_k sieve: k too large for 64-bit table");
            ppow[e] = b.get_ui();
        }
        t.divisor_counts.assign(limit + 1, 0);
        t.divisor_counts[1] = 1;
        for (std::uint64_t n = 2; n <= limit; ++n) {
            std::uint64_t p = t.spf[n];
            std::uint64_t m = n;
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            t.divisor_counts[n] = t.divisor_counts[m] * ppow[e];
        }
    }
    return t;
}

PrimeFactorization SieveTables::factor(std::uint64_t n) const {
    if (n == 0 || n > limit) throw std::domain_error("SieveTables::factor: n out of range");
    PrimeFactorization pf;
    pf.n = n;
    while (n > 1) {
        std::uint64_t p = spf[n];
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        pf.factors.push_back({p, e});
    }
    return pf;
}

std::vector<std::int8_t> mobius_sieve(std::uint64_t limit) {
    check_limit(limit);
    std::vector<std::int8_t> mu(limit + 1, 0);
    std::vector<std::uint32_t> spf(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    mu[1] = 1;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (spf[n] == 0) {
            spf[n] = static_cast<std::uint32_t>(n);
            primes.push_back(static_cast<std::uint32_t>(n));
            mu[n] = -1;
        }
        for (std::uint32_t p : primes) {
            if (p > spf[n] || p * n > limit) break;
            spf[p * n] = p;
            mu[p * n] = (p == spf[n]) ? 0 : -mu[n];
        }
    }
    return mu;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    check_limit(limit);
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (!comp[n]) {
            primes.push_back(static_cast<std::uint32_t>(n));
            for (std::uint64_t m = n * n; m <= limit; m += n) comp[m] = true;
        }
    }
    return primes;
}

std::vector<std::uint32_t> prime_count_table(std::uint64_t limit) {
    check_limit(limit);
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t n = 2; n * n <= limit; ++n)
        if (!comp[n])
            for (std::uint64_t m = n * n; m <= limit; m += n) comp[m] = true;
    std::vector<std::uint32_t> pi(limit + 1, 0);
    std::uint32_t count = 0;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (!comp[n]) ++count;
        pi[n] = count;
    }
    return pi;
}

} // namespace fk
