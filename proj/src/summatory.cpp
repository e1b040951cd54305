#include "fk/summatory.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include "fk/sieves.hpp"

namespace fk {

namespace {

constexpr std::uint64_t kXBudget = 1'000'000'000'000ULL; // 10^12
constexpr std::uint64_t kRowBudget = 20'000'000;         // hyperbola/doubling f-row cap

void check_query(std::uint64_t x, unsigned k, std::uint64_t l) {
    if (l == 0) throw std::domain_error("summatory: l must be >= 1");
    if (k >= 128) throw std::domain_error("summatory: k out of range");
    if (x > kXBudget) throw std::length_error("summatory: x beyond recursion budget");
}

// single row f_k(i, l) for i <= limit, rolling buffers
std::vector<std::uint64_t> f_row(std::uint64_t limit, unsigned k, std::uint64_t l) {
    std::vector<std::uint64_t> prev(limit + 1, 0), cur;
    prev[1] = 1;
    for (unsigned step = 1; step <= k; ++step) {
        cur.assign(limit + 1, 0);
        for (std::uint64_t q = 1; q <= limit; ++q) {
            std::uint64_t v = prev[q];
            if (v == 0) continue;
            if (l > limit / q) continue;
            for (std::uint64_t m = q * l; m <= limit; m += q) cur[m] += v;
        }
        prev.swap(cur);
    }
    return prev;
}

} // namespace

SummatoryEvaluator::SummatoryEvaluator(std::uint64_t l) : l_(l) {
    if (l == 0) throw std::domain_error("SummatoryEvaluator: l must be >= 1");
}

const BigNat& SummatoryEvaluator::F_ref(std::uint64_t x, unsigned k) {
    static const BigNat kZero(0);
    static const BigNat kOne(1);
    if (x == 0) return kZero;
    if (k == 0) return kOne;
    if (k >= 128) throw std::domain_error("SummatoryEvaluator: k out of range");
    std::uint64_t key = (x << 7) | k;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigNat total = 0;
    if (k == 1) {
        if (x >= l_) total = x - l_ + 1; // sum of F_0(x/i) over i = l..x
    } else {
        std::uint64_t i = l_;
        while (i <= x) {
            std::uint64_t q = x / i;
            std::uint64_t hi = x / q; // last i' with the same quotient
            total += F_ref(q, k - 1) * static_cast<unsigned long>(hi - i + 1);
            i = hi + 1;
        }
    }
    return memo_.emplace(key, std::move(total)).first->second;
}

SummatoryValue F_naive(std::uint64_t x, unsigned k, std::uint64_t l) {
    check_query(x, k, l);
    if (x == 0) return BigNat(0);
    SummatoryEvaluator ev(l);
    return ev.F(x, k);
}

namespace {

struct SepKey {
    std::uint64_t x;
    std::uint64_t l;
    unsigned k;
    bool operator==(const SepKey&) const = default;
};

struct SepKeyHash {
    std::size_t operator()(const SepKey& s) const {
        std::uint64_t h = s.x * 0x9E3779B97F4A7C15ULL;
        h ^= s.l + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= s.k + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

struct SummatorySeparationSession {
    std::unordered_map<SepKey, BigNat, SepKeyHash> memo;

    BigNat single_level(std::uint64_t x, unsigned k, std::uint64_t l) {
        if (x == 0) return BigNat(0);
        if (k == 0) return BigNat(1);
        // the k = 1 chain telescopes to the closed form; without it the
        // recursion walks l up one step at a time all the way to x
        if (k == 1) return BigNat(x >= l ? x - l + 1 : 0);
        if (pow_exceeds(l, k, x)) return BigNat(0);
        SepKey key{x, l, k};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigNat total = 0;
        std::uint64_t lp = 1; // l^i
        for (unsigned i = 0; i <= k; ++i) {
            if (i > 0) {
                if (l > 1 && lp > x / l) break; // floor(x / l^i) = 0 from here on
                lp *= l;
            }
            total += binomial(k, i) * single_level(x / lp, k - i, l + 1);
        }
        memo.emplace(key, total);
        return total;
    }

    BigNat full_elimination(std::uint64_t x, unsigned k, std::uint64_t l) {
        if (x == 0) return BigNat(0);
        if (k == 0) return BigNat(1);
        if (k == 1) return BigNat(x >= l ? x - l + 1 : 0);
        SepKey key{x, l, k};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigNat total = 0;
        std::uint64_t m_max = iroot_u64(x, k);
        for (std::uint64_t m = l; m <= m_max; ++m) {
            std::uint64_t mp = 1; // m^i
            for (unsigned i = 1; i <= k; ++i) {
                if (m > 1 && mp > x / m) break;
                mp *= m;
                total += binomial(k, i) * full_elimination(x / mp, k - i, m + 1);
            }
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace

SummatoryValue F_separation(std::uint64_t x, unsigned k, std::uint64_t l,
                            SeparationVariant variant) {
    check_query(x, k, l);
    SummatorySeparationSession session;
    return variant == SeparationVariant::kSingleLevel ? session.single_level(x, k, l)
                                                      : session.full_elimination(x, k, l);
}

SummatoryValue F_hyperbola(std::uint64_t x, unsigned k, std::uint64_t l,
                           unsigned split_j, std::uint64_t split_u) {
    check_query(x, k, l);
    if (k < 2 || split_j < 1 || split_j > k - 1)
        throw std::domain_error("F_hyperbola: split requires 1 <= j <= k-1");
    if (x == 0) return BigNat(0);
    std::uint64_t u = split_u;
    if (u == 0) {
        // u = floor(x^(j/k)) balances the two sums
        BigNat xj = BigNat(static_cast<unsigned long>(x));
        mpz_pow_ui(xj.get_mpz_t(), xj.get_mpz_t(), split_j);
        BigNat r;
        mpz_root(r.get_mpz_t(), xj.get_mpz_t(), k);
        u = r.get_ui();
    }
    if (u < 1) u = 1;
    if (u > x) u = x;
    std::uint64_t v = x / u;
    if (u > kRowBudget || v > kRowBudget)
        throw std::length_error("F_hyperbola: split sides beyond row budget");

    auto fj = f_row(u, split_j, l);
    auto fkj = f_row(v, k - split_j, l);
    SummatoryEvaluator ev(l);
    BigNat total = 0;
    for (std::uint64_t i = 1; i <= u; ++i)
        if (fj[i]) total += ev.F_ref(x / i, k - split_j) * static_cast<unsigned long>(fj[i]);
    for (std::uint64_t i = 1; i <= v; ++i)
        if (fkj[i]) total += ev.F_ref(x / i, split_j) * static_cast<unsigned long>(fkj[i]);
    total -= ev.F_ref(u, split_j) * ev.F_ref(v, k - split_j);
    return total;
}

SummatoryValue F_doubling(std::uint64_t x, unsigned k, std::uint64_t l) {
    check_query(x, k, l);
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("F_doubling: k must be even and >= 2");
    if (x == 0) return BigNat(0);
    unsigned h = k / 2;
    std::uint64_t r = isqrt_u64(x);
    if (r > kRowBudget) throw std::length_error("F_doubling: x beyond row budget");
    auto fh = f_row(r, h, l);
    SummatoryEvaluator ev(l);
    BigNat total = 0;
    for (std::uint64_t i = 1; i <= r; ++i)
        if (fh[i]) total += ev.F_ref(x / i, h) * static_cast<unsigned long>(fh[i]);
    total *= 2;
    const BigNat& corner = ev.F_ref(r, h);
    total -= corner * corner;
    return total;
}

SummatoryValue F2_closed(std::uint64_t x, std::uint64_t l, bool compact_literal) {
    if (l == 0) throw std::domain_error("F2_closed: l must be >= 1");
    if (x == 0) return BigNat(0);
    std::uint64_t r = isqrt_u64(x);
    if (compact_literal) {
        BigNat s = 0;
        for (std::uint64_t i = 1; i <= r; ++i) s += BigNat(x / i);
        return 2 * s - BigNat(r) * BigNat(r) + BigNat(l - 1) * BigNat(l - 1);
    }
    if (r < l) return BigNat(0); // no pair of factors >= l fits under x
    BigNat s = 0;
    for (std::uint64_t i = l; i <= r; ++i) s += BigNat(x / i - l + 1);
    BigNat corner = BigNat(r - l + 1);
    return 2 * s - corner * corner;
}

std::uint64_t DkTable::D(std::uint64_t x) const {
    if (x > limit) throw std::out_of_range("DkTable::D: x beyond table limit");
    return x == 0 ? 0 : cum[x];
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("DkTable: truncated stream");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("DkTable: truncated stream");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

constexpr char kMagic[4] = {'F', 'K', 'D', 'K'};
constexpr std::uint32_t kVersion = 1;

} // namespace

void DkTable::dump(std::ostream& out) const {
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, k);
    put_u64(out, limit);
    for (std::uint64_t x = 1; x <= limit; ++x) put_u64(out, cum[x]);
    if (!out) throw std::runtime_error("DkTable::dump: write failed");
}

DkTable DkTable::load(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("DkTable::load: bad magic");
    if (get_u32(in) != kVersion) throw std::runtime_error("DkTable::load: bad version");
    DkTable t;
    t.k = get_u32(in);
    t.limit = get_u64(in);
    if (t.limit > kSieveLimitCap) throw std::runtime_error("DkTable::load: limit too large");
    t.cum.assign(t.limit + 1, 0);
    for (std::uint64_t x = 1; x <= t.limit; ++x) t.cum[x] = get_u64(in);
    return t;
}

void DkTable::dump_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("DkTable::dump_file: cannot open " + path);
    dump(out);
}

DkTable DkTable::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("DkTable::load_file: cannot open " + path);
    return load(in);
}

DkTable d_k_sieve(std::uint64_t limit, unsigned k) {
    if (k < 1) throw std::domain_error("d_k_sieve: k must be >= 1");
    auto tables = SieveTables::build(limit, k);
    DkTable t;
    t.k = k;
    t.limit = limit;
    t.cum = std::move(tables.divisor_counts);
    for (std::uint64_t x = 2; x <= limit; ++x) t.cum[x] += t.cum[x - 1];
    return t;
}

} // namespace fk
