#include "fk/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fk/counts.hpp"
#include "fk/sieves.hpp"

namespace fk {

Rat bernoulli_number(unsigned m) {
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)}; // B_0
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= m) {
        unsigned n = static_cast<unsigned>(cache.size());
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        Rat acc = 0;
        for (unsigned j = 0; j < n; ++j) acc += Rat(binomial(n + 1, j)) * cache[j];
        Rat b = -acc / Rat(binomial(n + 1, n));
        cache.push_back(b);
    }
    return cache[m];
}

namespace {

Real rat_to_real(const Rat& r) { return Real(r.get_num().get_str()) / Real(r.get_den().get_str()); }

const Real& euler_gamma() {
    static const Real g(
        "0.577215664901532860606512090082402431042159335939923598805767");
    return g;
}

const Real& stieltjes_gamma1() {
    static const Real g1(
        "-0.0728158454836767248605863758749013191377363383343379525990065");
    return g1;
}

struct ZetaPair {
    Real value;
    Real derivative;
};

// Euler-Maclaurin with cutoff N and enough tail corrections that the first
// omitted term (which bounds the remainder for real s > 1) drops below the
// target; the derivative is obtained by differentiating every piece in s.
ZetaPair zeta_euler_maclaurin(const Real& s, int digits) {
    if (s <= 1) throw std::domain_error("zeta: requires s > 1");
    if (digits < 1 || digits > 35) throw std::domain_error("zeta: digits must be in [1, 35]");
    const Real target = pow(Real(10), -(digits + 6));

    for (unsigned n_cut = std::max(32, 2 * digits);; n_cut *= 2) {
        if (n_cut > 1u << 15) throw std::runtime_error("zeta: no convergence");
        const Real nr(n_cut);
        const Real log_n = log(nr);

        Real head = 0, head_d = 0;
        for (unsigned n = 1; n < n_cut; ++n) {
            Real term = pow(Real(n), -s);
            head += term;
            if (n > 1) head_d -= log(Real(n)) * term;
        }

        const Real n_pow = pow(nr, -s); // N^-s
        Real value = head + n_pow / 2 + n_pow * nr / (s - 1);
        Real deriv = head_d - log_n * n_pow / 2 - log_n * n_pow * nr / (s - 1) -
                     n_pow * nr / ((s - 1) * (s - 1));

        // tail terms B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
        Real rising = s;          // product of 2k-1 factors
        Real harmonic = 1 / s;    // sum of reciprocals of those factors
        Real n_fall = n_pow / nr; // N^(-s-2k+1)
        bool converged = false;
        for (unsigned k = 1; k <= 48; ++k) {
            Rat fact(1);
            for (unsigned i = 2; i <= 2 * k; ++i) fact *= i;
            Real coeff = rat_to_real(bernoulli_number(2 * k) / fact);
            Real term = coeff * rising * n_fall; // n_fall = N^(-s-2k+1)
            Real term_d = term * (harmonic - log_n);
            value += term;
            deriv += term_d;
            if (abs(term) < target && abs(term_d) < target) {
                converged = true;
                break;
            }
            // extend the rising factorial by (s+2k-1)(s+2k)
            rising *= (s + (2 * k - 1)) * (s + 2 * k);
            harmonic += 1 / (s + (2 * k - 1)) + 1 / (s + 2 * k);
            n_fall /= nr * nr;
        }
        if (converged) return {value, deriv};
    }
}

} // namespace

Real zeta(const Real& s, int digits) { return zeta_euler_maclaurin(s, digits).value; }

Real zeta_prime(const Real& s, int digits) { return zeta_euler_maclaurin(s, digits).derivative; }

KalmarConstants kalmar_constants(int digits) {
    if (digits < 1 || digits > 30)
        throw std::domain_error("kalmar_constants: digits must be in [1, 30]");
    const int work = digits + 5;
    // zeta decreases on (1, inf); zeta(1.5) > 2 > zeta(2)
    Real lo = Real("1.5"), hi = Real(2);
    for (int iter = 0; iter < 40; ++iter) {
        Real mid = (lo + hi) / 2;
        if (zeta(mid, work) > 2)
            lo = mid;
        else
            hi = mid;
    }
    Real rho = (lo + hi) / 2;
    const Real step_target = pow(Real(10), -(digits + 3));
    for (int iter = 0; iter < 12; ++iter) {
        auto z = zeta_euler_maclaurin(rho, work);
        Real step = (z.value - 2) / z.derivative;
        rho -= step;
        if (abs(step) < step_target) break;
    }
    KalmarConstants c;
    c.rho = rho;
    c.K = -1 / (rho * zeta_prime(rho, work));
    c.precision = digits;
    return c;
}

MainTermCoefficients divisor_main_term(unsigned k) {
    const Real g = euler_gamma();
    const Real g1 = stieltjes_gamma1();
    MainTermCoefficients mt;
    mt.k = k;
    switch (k) {
        case 1:
            mt.coeffs = {Real(1)};
            break;
        case 2:
            mt.coeffs = {2 * g - 1, Real(1)};
            break;
        case 3:
            // residue of zeta(s)^3 x^(s-1) / s at s = 1
            mt.coeffs = {1 - 3 * g + 3 * g * g - 3 * g1, 3 * g - 1, Real(1) / 2};
            break;
        default:
            throw std::domain_error("divisor_main_term: closed forms carried for k <= 3 only");
    }
    Rat fact(1);
    for (unsigned i = 2; i < k; ++i) fact *= i;
    mt.leading = Rat(1) / fact;
    return mt;
}

MainTermCoefficients f_main_term(unsigned k) {
    if (k < 1 || k > 3)
        throw std::domain_error("f_main_term: closed forms carried for k <= 3 only");
    std::vector<MainTermCoefficients> a;
    for (unsigned i = 1; i <= k; ++i) a.push_back(divisor_main_term(i));
    MainTermCoefficients mt;
    mt.k = k;
    mt.coeffs.assign(k, Real(0));
    for (unsigned j = 0; j < k; ++j) {
        Real b = 0;
        for (unsigned i = j + 1; i <= k; ++i) {
            Real term = Real(binomial(k, i).get_str()) * a[i - 1].coeffs[j];
            if ((k - i) % 2 == 0)
                b += term;
            else
                b -= term;
        }
        mt.coeffs[j] = b;
    }
    Rat fact(1);
    for (unsigned i = 2; i < k; ++i) fact *= i;
    mt.leading = Rat(1) / fact;
    return mt;
}

namespace {

double scan_main_coeff() {
    static const double c = static_cast<double>(2 * euler_gamma() - 3);
    return c;
}

struct ScanBest {
    double max_abs = -1;
    std::uint64_t x = 0;
    std::uint64_t f2 = 0;
    double max_delta = -1e300;
    double min_delta = 1e300;

    void consider(double delta, std::uint64_t at, std::uint64_t f2_at) {
        double abs_delta = std::abs(delta);
        if (abs_delta > max_abs || (abs_delta == max_abs && at < x)) {
            max_abs = abs_delta;
            x = at;
            f2 = f2_at;
        }
        max_delta = std::max(max_delta, delta);
        min_delta = std::min(min_delta, delta);
    }
    void merge(const ScanBest& o) {
        if (o.max_abs > max_abs || (o.max_abs == max_abs && o.x < x)) {
            max_abs = o.max_abs;
            x = o.x;
            f2 = o.f2;
        }
        max_delta = std::max(max_delta, o.max_delta);
        min_delta = std::min(min_delta, o.min_delta);
    }

    ErrorScanResult to_result(std::uint64_t limit) const {
        ErrorScanResult r;
        r.limit = limit;
        r.max_abs_error = max_abs;
        r.argmax_x = x;
        r.f2_at_argmax = BigNat(static_cast<unsigned long>(f2));
        r.max_delta = max_delta;
        r.min_delta = min_delta;
        return r;
    }
};

// d(n) for n in [lo, hi] into scratch arrays; primes covers sqrt(hi)
void block_divisor_counts(std::uint64_t lo, std::uint64_t hi,
                          const std::vector<std::uint32_t>& primes,
                          std::vector<std::uint64_t>& rem, std::vector<std::uint32_t>& d) {
    const std::uint64_t len = hi - lo + 1;
    rem.resize(len);
    d.assign(len, 1);
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
    for (std::uint32_t p : primes) {
        const std::uint64_t pp = p;
        if (pp * pp > hi) break;
        std::uint64_t first = ((lo + pp - 1) / pp) * pp;
        for (std::uint64_t m = first; m <= hi; m += pp) {
            std::uint64_t idx = m - lo;
            unsigned e = 0;
            while (rem[idx] % pp == 0) {
                rem[idx] /= pp;
                ++e;
            }
            d[idx] *= e + 1;
        }
    }
    for (std::uint64_t i = 0; i < len; ++i)
        if (rem[i] > 1) d[i] *= 2; // a single prime factor above sqrt(hi)
}

inline double scan_delta(std::uint64_t x, std::uint64_t f2, double* main_term) {
    double mt = static_cast<double>(x) * (std::log(static_cast<double>(x)) + scan_main_coeff());
    if (main_term) *main_term = mt;
    return static_cast<double>(f2) - mt;
}

constexpr std::uint64_t kScanBlock = 1 << 20;

void check_scan_limit(std::uint64_t limit) {
    if (limit < 1) throw std::domain_error("error scan: limit must be >= 1");
    if (limit > kSieveLimitCap) throw std::length_error("error scan: limit exceeds cap");
}

void maybe_sample(std::vector<ScanSample>* samples, std::uint64_t step, std::uint64_t limit,
                  std::uint64_t x, std::uint64_t f2) {
    if (!samples || step == 0) return;
    if (x % step == 0 || x == limit) {
        double mt;
        double delta = scan_delta(x, f2, &mt);
        samples->push_back({x, f2, mt, delta});
    }
}

void append_argmax_sample(std::vector<ScanSample>* samples, const ErrorScanResult& r) {
    if (!samples) return;
    for (const auto& s : *samples)
        if (s.x == r.argmax_x) return;
    double mt;
    std::uint64_t f2 = r.f2_at_argmax.get_ui();
    double delta = scan_delta(r.argmax_x, f2, &mt);
    samples->push_back({r.argmax_x, f2, mt, delta});
    std::sort(samples->begin(), samples->end(),
              [](const ScanSample& a, const ScanSample& b) { return a.x < b.x; });
}

} // namespace

ErrorScanResult error_scan_f2(std::uint64_t limit, std::vector<ScanSample>* samples,
                              std::uint64_t sample_step) {
    check_scan_limit(limit);
    const auto primes = primes_up_to(std::max<std::uint64_t>(2, isqrt_u64(limit)));
    const std::uint64_t nblocks = (limit + kScanBlock - 1) / kScanBlock;

    std::vector<std::uint64_t> block_sum(nblocks, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> rem;
        std::vector<std::uint32_t> d;
#pragma omp for schedule(dynamic)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
            std::uint64_t lo = static_cast<std::uint64_t>(b) * kScanBlock + 1;
            std::uint64_t hi = std::min(limit, lo + kScanBlock - 1);
            block_divisor_counts(lo, hi, primes, rem, d);
            std::uint64_t sum = 0;
            for (std::uint64_t i = 0; i < hi - lo + 1; ++i) sum += d[i];
            block_sum[b] = sum;
        }
    }

    std::vector<std::uint64_t> offset(nblocks, 0);
    for (std::uint64_t b = 1; b < nblocks; ++b) offset[b] = offset[b - 1] + block_sum[b - 1];

    std::vector<ScanBest> best(nblocks);
    std::vector<std::vector<ScanSample>> block_samples(nblocks);
#pragma omp parallel
    {
        std::vector<std::uint64_t> rem;
        std::vector<std::uint32_t> d;
#pragma omp for schedule(dynamic)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
            std::uint64_t lo = static_cast<std::uint64_t>(b) * kScanBlock + 1;
            std::uint64_t hi = std::min(limit, lo + kScanBlock - 1);
            block_divisor_counts(lo, hi, primes, rem, d);
            std::uint64_t running = offset[b];
            auto* samp = (samples && sample_step) ? &block_samples[b] : nullptr;
            for (std::uint64_t x = lo; x <= hi; ++x) {
                running += d[x - lo];
                std::uint64_t f2 = running + 1 - 2 * x; // D_2(x) - 2x + 1
                double delta = scan_delta(x, f2, nullptr);
                best[b].consider(std::abs(delta), x, f2);
                maybe_sample(samp, sample_step, limit, x, f2);
            }
        }
    }

    ScanBest overall;
    for (const auto& b : best) overall.merge(b);
    if (samples)
        for (auto& bs : block_samples)
            samples->insert(samples->end(), bs.begin(), bs.end());

    ErrorScanResult r;
    r.limit = limit;
    r.max_abs_error = overall.max_abs;
    r.argmax_x = overall.x;
    r.f2_at_argmax = BigNat(static_cast<unsigned long>(overall.f2));
    append_argmax_sample(samples, r);
    return r;
}

ErrorScanResult error_scan_f2_serial(std::uint64_t limit, std::vector<ScanSample>* samples,
                                     std::uint64_t sample_step) {
    check_scan_limit(limit);
    const auto primes = primes_up_to(std::max<std::uint64_t>(2, isqrt_u64(limit)));
    std::vector<std::uint64_t> rem;
    std::vector<std::uint32_t> d;
    ScanBest best;
    std::uint64_t running = 0;
    for (std::uint64_t lo = 1; lo <= limit; lo += kScanBlock) {
        std::uint64_t hi = std::min(limit, lo + kScanBlock - 1);
        block_divisor_counts(lo, hi, primes, rem, d);
        for (std::uint64_t x = lo; x <= hi; ++x) {
            running += d[x - lo];
            std::uint64_t f2 = running + 1 - 2 * x;
            double delta = scan_delta(x, f2, nullptr);
            best.consider(std::abs(delta), x, f2);
            maybe_sample(samples, sample_step, limit, x, f2);
        }
    }
    ErrorScanResult r;
    r.limit = limit;
    r.max_abs_error = best.max_abs;
    r.argmax_x = best.x;
    r.f2_at_argmax = BigNat(static_cast<unsigned long>(best.f2));
    append_argmax_sample(samples, r);
    return r;
}

ErrorScanResult error_scan_f2_from_table(const DkTable& d2, std::vector<ScanSample>* samples,
                                         std::uint64_t sample_step) {
    if (d2.k != 2) throw std::domain_error("error_scan_f2_from_table: needs a D_2 table");
    check_scan_limit(d2.limit);
    ScanBest best;
    for (std::uint64_t x = 1; x <= d2.limit; ++x) {
        std::uint64_t f2 = d2.cum[x] + 1 - 2 * x;
        double delta = scan_delta(x, f2, nullptr);
        best.consider(std::abs(delta), x, f2);
        maybe_sample(samples, sample_step, d2.limit, x, f2);
    }
    ErrorScanResult r;
    r.limit = d2.limit;
    r.max_abs_error = best.max_abs;
    r.argmax_x = best.x;
    r.f2_at_argmax = BigNat(static_cast<unsigned long>(best.f2));
    append_argmax_sample(samples, r);
    return r;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanSample>& samples) {
    out << "x,f2,main_term,delta\n";
    out << std::setprecision(17);
    for (const auto& s : samples)
        out << s.x << "," << s.f2 << "," << s.main_term << "," << s.delta << "\n";
}

IdentityReport identity_suite(std::uint64_t limit) {
    if (limit < 1) throw std::domain_error("identity_suite: limit must be >= 1");
    if (limit > 100000) throw std::length_error("identity_suite: limit capped at 10^5");

    IdentityReport rep;
    rep.limit = limit;

    const unsigned k_max = std::bit_width(limit) - 1; // floor(log2 limit)
    const auto rows = f_rows(limit, k_max, 2);
    const auto mu = mobius_sieve(limit);
    const auto tables = SieveTables::build(limit);
    const auto pi = prime_count_table(limit);

    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failure = std::move(msg);
        return rep;
    };

    // pointwise identities
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const unsigned t2 = std::bit_width(n) - 1;
        std::int64_t alt = 0;
        for (unsigned k = 0; k <= t2; ++k) {
            std::int64_t v = static_cast<std::int64_t>(rows[k][n]);
            alt += (k % 2 == 0) ? v : -v;
        }
        if (alt != mu[n]) {
            std::ostringstream os;
            os << "mu identity fails at n = " << n << ": got " << alt << ", mu = "
               << static_cast<int>(mu[n]);
            return fail(os.str());
        }

        Rat lam = 0;
        for (unsigned k = 1; k <= t2; ++k) {
            Rat term(rows[k][n], k);
            term.canonicalize();
            if (k % 2 == 1)
                lam += term;
            else
                lam -= term;
        }
        Rat expected = 0;
        if (n >= 2) {
            std::uint64_t p = tables.spf[n];
            std::uint64_t m = n;
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (m == 1) expected = make_rat(1, e); // n = p^e
        }
        if (lam != expected) {
            std::ostringstream os;
            os << "Lambda/log identity fails at n = " << n;
            return fail(os.str());
        }
    }

    // cumulative identities
    std::vector<std::int64_t> F(k_max + 1, 0);
    std::int64_t mertens = 0;
    std::vector<Rat> weighted(k_max + 1, Rat(0)); // (-1)^(k+1) F_k(x) / k
    for (std::uint64_t x = 1; x <= limit; ++x) {
        mertens += mu[x];
        const unsigned t2 = std::bit_width(x) - 1;
        for (unsigned k = 0; k <= t2; ++k) F[k] += static_cast<std::int64_t>(rows[k][x]);

        std::int64_t alt = 0;
        for (unsigned k = 0; k <= t2; ++k) alt += (k % 2 == 0) ? F[k] : -F[k];
        if (alt != mertens) {
            std::ostringstream os;
            os << "Mertens identity fails at x = " << x << ": got " << alt << ", M = "
               << mertens;
            return fail(os.str());
        }

        Rat riemann_pi = 0;
        for (unsigned k = 1; k <= t2; ++k) {
            Rat term(F[k], k);
            term.canonicalize();
            if (k % 2 == 1)
                riemann_pi += term;
            else
                riemann_pi -= term;
        }
        Rat expected = 0;
        for (unsigned m = 1; (1ULL << m) <= x; ++m)
            expected += make_rat(pi[iroot_u64(x, m)], m);
        if (riemann_pi != expected) {
            std::ostringstream os;
            os << "Riemann Pi identity fails at x = " << x;
            return fail(os.str());
        }
    }

    rep.ok = true;
    return rep;
}

} // namespace fk
