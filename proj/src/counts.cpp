#include "fk/counts.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace fk {

bool pow_exceeds(std::uint64_t l, unsigned k, std::uint64_t n) {
    if (l <= 1) return l == 0 || n == 0;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= l;
        if (acc > n) return true;
    }
    return false;
}

namespace {

std::uint64_t oracle_dfs(std::uint64_t n, unsigned k, std::uint64_t l) {
    if (k == 0) return n == 1 ? 1 : 0;
    if (k == 1) return n >= l ? 1 : 0;
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        std::uint64_t q = n / d;
        if (d >= l) total += oracle_dfs(q, k - 1, l);
        if (q != d && q >= l) total += oracle_dfs(d, k - 1, l);
    }
    return total;
}

} // namespace

CountValue oracle_count(std::uint64_t n, unsigned k, std::uint64_t l) {
    if (n == 0) throw std::domain_error("oracle_count: n must be >= 1");
    if (n > 100000 || k > 12)
        throw std::length_error("oracle_count: beyond brute-force budget (n <= 1e5, k <= 12)");
    return CountValue(static_cast<unsigned long>(oracle_dfs(n, k, l)));
}

namespace {

struct FRecursiveSession {
    std::uint64_t l;
    // key packs (n, k); k < 128 is plenty here
    std::unordered_map<std::uint64_t, BigNat> memo;

    BigNat count(std::uint64_t n, unsigned k) {
        if (k == 0) return BigNat(n == 1 ? 1 : 0);
        if (k == 1) return BigNat(n >= l ? 1 : 0);
        std::uint64_t key = (n << 7) | k;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigNat total = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            std::uint64_t q = n / d;
            if (d >= l) total += count(q, k - 1);
            if (q != d && q >= l) total += count(d, k - 1);
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace

CountValue f_recursive(std::uint64_t n, unsigned k, std::uint64_t l) {
    if (n == 0 || l == 0) throw std::domain_error("f_recursive: n and l must be >= 1");
    if (k >= 128) throw std::domain_error("f_recursive: k out of range");
    if (n >= (1ULL << 56)) throw std::length_error("f_recursive: n out of range");
    FRecursiveSession session{l, {}};
    return session.count(n, k);
}

CountValue f_macmahon(const PrimeFactorization& pf, unsigned k) {
    if (k == 0) return BigNat(pf.n == 1 ? 1 : 0);
    if (pf.factors.empty()) return BigNat(0); // nothing >= 2 multiplies to 1
    BigInt acc = 0;
    for (unsigned i = 0; i < k; ++i) {
        BigInt term = binomial(k, i);
        for (const auto& f : pf.factors)
            term *= binomial(f.exponent + k - i - 1, f.exponent);
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    if (acc < 0) throw std::logic_error("f_macmahon: negative count");
    return acc;
}

namespace {

struct SepKey {
    std::uint64_t n;
    std::uint64_t l;
    unsigned k;
    bool operator==(const SepKey&) const = default;
};

struct SepKeyHash {
    std::size_t operator()(const SepKey& s) const {
        std::uint64_t h = s.n * 0x9E3779B97F4A7C15ULL;
        h ^= s.l + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= s.k + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

struct SeparationSession {
    // memo keyed on (n, k, l); the recursion revisits states across levels
    std::unordered_map<SepKey, BigNat, SepKeyHash> memo;

    BigNat single_level(std::uint64_t n, unsigned k, std::uint64_t l) {
        if (k == 0) return BigNat(n == 1 ? 1 : 0);
        if (k == 1) return BigNat(n >= l ? 1 : 0); // telescoped chain
        if (pow_exceeds(l, k, n)) return BigNat(0);
        SepKey key{n, l, k};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigNat total = 0;
        std::uint64_t lp = 1; // l^i
        for (unsigned i = 0; i <= k; ++i) {
            if (i > 0) {
                if (l > 1 && lp > n / l) break; // l^i no longer divides n
                lp *= l;
            }
            if (n % lp == 0)
                total += binomial(k, i) * single_level(n / lp, k - i, l + 1);
        }
        memo.emplace(key, total);
        return total;
    }

    BigNat full_elimination(std::uint64_t n, unsigned k, std::uint64_t l) {
        if (k == 0) return BigNat(n == 1 ? 1 : 0);
        if (k == 1) return BigNat(n >= l ? 1 : 0);
        SepKey key{n, l, k};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigNat total = 0;
        std::uint64_t m_max = iroot_u64(n, k);
        for (std::uint64_t m = l; m <= m_max; ++m) {
            std::uint64_t mp = 1; // m^i
            for (unsigned i = 1; i <= k; ++i) {
                if (m > 1 && mp > n / m) break;
                mp *= m;
                if (n % mp == 0)
                    total += binomial(k, i) * full_elimination(n / mp, k - i, m + 1);
            }
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace

CountValue f_separation(std::uint64_t n, unsigned k, std::uint64_t l,
                        SeparationVariant variant) {
    if (n == 0 || l == 0) throw std::domain_error("f_separation: n and l must be >= 1");
    SeparationSession session;
    return variant == SeparationVariant::kSingleLevel
               ? session.single_level(n, k, l)
               : session.full_elimination(n, k, l);
}

CountValue d_k(const PrimeFactorization& pf, unsigned k) {
    BigNat total = 1;
    for (const auto& f : pf.factors)
        total *= binomial(f.exponent + k - 1, f.exponent);
    return total;
}

CountValue d_k(std::uint64_t n, unsigned k) { return d_k(factorize(n), k); }

CountValue binomial_transform_d_from_f(std::uint64_t n, unsigned k) {
    if (n == 0) throw std::domain_error("n must be >= 1");
    long t2 = (n == 1) ? 0 : floor_log(BigNat(static_cast<unsigned long>(n)), 2);
    auto pf = factorize(n);
    BigNat total = 0;
    for (long i = 0; i <= t2; ++i)
        total += binomial(k, static_cast<unsigned long>(i)) *
                 f_macmahon(pf, static_cast<unsigned>(i));
    return total;
}

CountValue inverse_transform_f_from_d(std::uint64_t n, unsigned k) {
    if (n == 0) throw std::domain_error("n must be >= 1");
    auto pf = factorize(n);
    BigInt total = 0;
    for (unsigned i = 0; i <= k; ++i) {
        BigInt term = binomial(k, i) * d_k(pf, i);
        if ((k - i) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    if (total < 0) throw std::logic_error("inverse binomial transform: negative count");
    return total;
}

CountValue kalmar_f(std::uint64_t n) {
    if (n == 0) throw std::domain_error("kalmar_f: n must be >= 1");
    auto pf = factorize(n);
    BigNat total = 0;
    for (unsigned k = 1; k <= pf.big_omega(); ++k) total += f_macmahon(pf, k);
    return total;
}

Rat sen_series_check(std::uint64_t n, const Rat& u, const Rat& tolerance) {
    if (n == 0) throw std::domain_error("sen_series_check: n must be >= 1");
    if (u <= 1) throw std::domain_error("sen_series_check: requires u > 1");
    auto pf = factorize(n);
    long t2 = (n == 1) ? 0 : floor_log(BigNat(static_cast<unsigned long>(n)), 2);

    // right side: exact finite sum
    Rat um1 = u - 1;
    Rat rhs = 0;
    Rat weight = 1; // (u-1)^-k
    for (long k = 0; k <= t2; ++k) {
        BigNat fk = (k == 0) ? BigNat(n == 1 ? 1 : 0)
                             : f_macmahon(pf, static_cast<unsigned>(k));
        rhs += Rat(fk) * weight;
        weight /= um1;
    }
    rhs *= u / um1;

    // left side: adaptive truncation; d_k(n) grows polynomially in k while
    // u^-k decays geometrically, so terms decrease for good once the ratio
    // drops below one
    Rat lhs = 0;
    Rat upow = 1; // u^-k
    Rat prev_term = -1;
    bool converged = false;
    for (unsigned k = 0; k <= 10000; ++k) {
        Rat term = Rat(d_k(pf, k)) * upow;
        lhs += term;
        if (prev_term >= 0 && term < prev_term && term < tolerance) {
            converged = true;
            break;
        }
        prev_term = term;
        upow /= u;
    }
    if (!converged)
        throw std::runtime_error("sen_series_check: no convergence within 10^4 terms");

    Rat residual = lhs - rhs;
    return abs(residual);
}

std::vector<std::vector<std::uint64_t>> f_rows(std::uint64_t limit, unsigned k_max,
                                               std::uint64_t l) {
    if (limit < 1 || l < 1) throw std::domain_error("f_rows: limit and l must be >= 1");
    if (limit > 200'000'000) throw std::length_error("f_rows: limit exceeds table cap");
    std::vector<std::vector<std::uint64_t>> rows(k_max + 1,
                                                 std::vector<std::uint64_t>(limit + 1, 0));
    rows[0][1] = 1;
    for (unsigned k = 1; k <= k_max; ++k) {
        const auto& prev = rows[k - 1];
        auto& cur = rows[k];
        for (std::uint64_t q = 1; q <= limit; ++q) {
            std::uint64_t v = prev[q];
            if (v == 0) continue;
            if (l > limit / q) continue; // q*l overflows the table
            for (std::uint64_t m = q * l; m <= limit; m += q) cur[m] += v;
        }
    }
    return rows;
}

bool dirichlet_power_check(unsigned k, std::uint64_t l, std::uint64_t limit) {
    if (limit > 10000)
        throw std::length_error("dirichlet_power_check: limit capped at 10^4");
    auto rows = f_rows(limit, k, l);
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (CountValue(static_cast<unsigned long>(rows[k][n])) != f_recursive(n, k, l))
            return false;
    return true;
}

} // namespace fk
