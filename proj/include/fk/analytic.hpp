#pragma once
// analytic.hpp - numeric side: Riemann zeta and its derivative by
// Euler-Maclaurin summation in 50-digit floats, the Kalmar growth constants
// rho, K with zeta(rho) = 2, divisor-problem main-term polynomials for
// k <= 3, the F_2 error-term scan, and exact cross-checks of the classical
// identities linking f_k / F_k to mu, M, Lambda/log and Pi.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fk/arith.hpp"
#include "fk/summatory.hpp"

namespace fk {

using Real = boost::multiprecision::cpp_bin_float_50;

// Exact Bernoulli number B_m (B_1 = -1/2); cached, thread-safe.
Rat bernoulli_number(unsigned m);

// Euler-Maclaurin evaluation for real s > 1, reliable to `digits` decimal
// digits (digits <= 35; the working type carries 50).
Real zeta(const Real& s, int digits = 30);
Real zeta_prime(const Real& s, int digits = 30);

struct KalmarConstants {
    Real rho;      // zeta(rho) = 2
    Real K;        // -1 / (rho * zeta'(rho))
    int precision; // requested decimal digits
};

// Bracketed bisection on (1, 2) followed by Newton polish.
KalmarConstants kalmar_constants(int digits = 20);

// Main-term polynomial coefficients: D_k(x) ~ x * sum_j a_{k,j} (log x)^j and
// F_k(x) ~ x * sum_j b_{k,j} (log x)^j, k <= 3. Coefficients are polynomials
// in the Euler-Mascheroni and first Stieltjes constants; the leading one is
// exactly 1/(k-1)!.
struct MainTermCoefficients {
    unsigned k = 1;
    std::vector<Real> coeffs; // coeffs[j] multiplies (log x)^j, j = 0..k-1
    Rat leading;              // exact 1/(k-1)!
};

MainTermCoefficients divisor_main_term(unsigned k);
MainTermCoefficients f_main_term(unsigned k);

// Scan of Delta(x) = F_2(x) - x(log x + 2*gamma - 3) over integer x <= limit.
// F_2 comes exactly from a segmented divisor sieve via F_2 = D_2 - 2x + 1;
// only the main term uses doubles.
struct ErrorScanResult {
    std::uint64_t limit = 0;
    double max_abs_error = 0;
    std::uint64_t argmax_x = 0;
    BigNat f2_at_argmax;
    double max_delta = 0; // signed extrema over the scanned range
    double min_delta = 0;
};

struct ScanSample {
    std::uint64_t x = 0;
    std::uint64_t f2 = 0;
    double main_term = 0;
    double delta = 0;
};

// Blocked OpenMP kernel; deterministic regardless of thread count. With
// sample_step > 0 every step-th x (plus the argmax) lands in `samples`.
ErrorScanResult error_scan_f2(std::uint64_t limit,
                              std::vector<ScanSample>* samples = nullptr,
                              std::uint64_t sample_step = 0);

// Single-pass serial reference for the same scan; kept for testing and for
// the kernel benchmark.
ErrorScanResult error_scan_f2_serial(std::uint64_t limit,
                                     std::vector<ScanSample>* samples = nullptr,
                                     std::uint64_t sample_step = 0);

// Same scan driven from a prefix-summed divisor table (cache path).
ErrorScanResult error_scan_f2_from_table(const DkTable& d2,
                                         std::vector<ScanSample>* samples = nullptr,
                                         std::uint64_t sample_step = 0);

void write_scan_csv(std::ostream& out, const std::vector<ScanSample>& samples);

// Exact verification of the four classical identities against independent
// sieves, for every n, x <= limit:
//   mu(n)            = sum_k (-1)^k f_k(n)
//   M(x)             = sum_k (-1)^k F_k(x)
//   Lambda(n)/log n  = sum_k (-1)^(k+1) f_k(n)/k   (exactly 1/m at n = p^m)
//   Pi(x)            = sum_k (-1)^(k+1) F_k(x)/k   (= sum_m pi(x^(1/m))/m)
struct IdentityReport {
    std::uint64_t limit = 0;
    bool ok = false;
    std::string failure; // first counterexample, empty on success
};

IdentityReport identity_suite(std::uint64_t limit);

} // namespace fk
