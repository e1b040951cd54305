#include "fk/arith.hpp"

#include <cmath>
#include <mutex>

namespace fk {

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    if (r == 0) r = 1;
    while (r > n / r) --r;            // r^2 <= n, overflow-free
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::uint64_t iroot_u64(std::uint64_t n, unsigned k) {
    if (k == 0) throw std::domain_error("iroot_u64: k must be >= 1");
    if (k == 1 || n < 2) return n;
    if (k == 2) return isqrt_u64(n);
    auto pow_leq = [&](std::uint64_t b) {
        if (b == 0) return true;
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= b;
            if (acc > n) return false;
        }
        return true;
    };
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 1 && !pow_leq(r)) --r;
    while (pow_leq(r + 1)) ++r;
    return r;
}

BigNat ipow(std::uint64_t base, unsigned long exp) {
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

long floor_log(const BigNat& x, std::uint64_t l) {
    if (l < 2) throw std::domain_error("floor_log: base must be >= 2");
    if (x < 1) throw std::domain_error("floor_log: argument must be >= 1");
    // t <= floor(log2 x) < sizeinbase(x, 2), so binary-search t on [0, bits]
    // with exact big-integer comparisons only.
    long hi = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
    long lo = 0;
    while (lo < hi) {
        long mid = lo + (hi - lo + 1) / 2;
        BigNat p;
        mpz_ui_pow_ui(p.get_mpz_t(), l, static_cast<unsigned long>(mid));
        if (p <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

BigNat binomial(unsigned long n, unsigned long k) {
    if (k > n) return BigNat(0);
    BigNat r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::uint64_t PrimeFactorization::reconstruct() const {
    std::uint64_t v = 1;
    for (const auto& f : factors)
        for (unsigned e = 0; e < f.exponent; ++e) v *= f.prime;
    return v;
}

PrimeFactorization factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    PrimeFactorization pf;
    pf.n = n;
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e > 0) pf.factors.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; n > 1 && p <= n / p; p += 6) {
        strip(p);
        if (n > 1 && (p + 2) <= n / (p + 2)) strip(p + 2);
    }
    if (n > 1) pf.factors.push_back({n, 1});
    return pf;
}

StirlingTable::StirlingTable(unsigned max_k) : max_k_(max_k) {
    rows_.resize(max_k + 1);
    rows_[0] = {BigInt(1)};
    for (unsigned k = 1; k <= max_k; ++k) {
        rows_[k].assign(k + 1, BigInt(0));
        for (unsigned i = 1; i <= k; ++i) {
            // s(k, i) = s(k-1, i-1) - (k-1) s(k-1, i)
            BigInt v = rows_[k - 1][i - 1];
            if (i < k) v -= BigInt(k - 1) * rows_[k - 1][i];
            rows_[k][i] = v;
        }
    }
}

const BigInt& StirlingTable::s(unsigned k, unsigned i) const {
    if (k > max_k_ || i > k) throw std::out_of_range("StirlingTable::s: index out of range");
    return rows_[k][i];
}

BigInt stirling_first(unsigned k, unsigned i) {
    static std::mutex mu;
    static StirlingTable table(64);
    std::lock_guard<std::mutex> lock(mu);
    if (k > table.max_k()) table = StirlingTable(k + 32);
    return table.s(k, i);
}

} // namespace fk
