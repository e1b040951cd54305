#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fk/counts.hpp"
#include "fk/sieves.hpp"

using namespace fk;

TEST_CASE("oracle enumerates ordered factorizations") {
    CHECK(oracle_count(12, 1, 2) == 1);
    CHECK(oracle_count(12, 2, 2) == 4); // (2,6),(6,2),(3,4),(4,3)
    CHECK(oracle_count(12, 3, 2) == 3); // (2,2,3),(2,3,2),(3,2,2)
    CHECK(oracle_count(1, 0, 2) == 1);  // empty tuple
    CHECK(oracle_count(1, 1, 2) == 0);
    CHECK(oracle_count(12, 2, 1) == 6); // d(12)
    CHECK(oracle_count(64, 3, 2) == 10);
    CHECK(oracle_count(36, 2, 3) == 5); // (3,12),(12,3),(4,9),(9,4),(6,6)
    CHECK_THROWS_AS(oracle_count(200000, 2, 2), std::length_error);
    CHECK_THROWS_AS(oracle_count(100, 13, 1), std::length_error);
}

TEST_CASE("divisor-sum recursion") {
    CHECK(f_recursive(12, 2, 2) == 4);
    CHECK(f_recursive(4, 3, 2) == 0); // k = 3 > Omega(4)
    CHECK(f_recursive(36, 2, 3) == 5);
    CHECK(f_recursive(1, 0, 5) == 1);
    CHECK(f_recursive(1, 3, 1) == 1); // (1,1,1)
}

TEST_CASE("MacMahon formula") {
    CHECK(f_macmahon(factorize(12), 2) == 4);
    CHECK(f_macmahon(factorize(49), 2) == 1); // (7,7)
    CHECK(f_macmahon(factorize(1), 1) == 0);
    CHECK(f_macmahon(factorize(1), 0) == 1);
    CHECK(f_macmahon(factorize(8), 2) == 2);
    // vanishing beyond Omega(n) comes out of the alternating sum itself
    CHECK(f_macmahon(factorize(30), 4) == 0);
    CHECK(f_macmahon(factorize(30), 5) == 0);
}

TEST_CASE("separation of smallest factors") {
    for (auto variant : {SeparationVariant::kSingleLevel, SeparationVariant::kFullElimination}) {
        CHECK(f_separation(12, 2, 2, variant) == 4);
        CHECK(f_separation(12, 1, 13, variant) == 0); // l exceeds n^(1/k)
        CHECK(f_separation(64, 3, 2, variant) == 10);
        CHECK(f_separation(1, 2, 1, variant) == 1);
    }
}

TEST_CASE("Piltz divisor values") {
    CHECK(d_k(12, 2) == 6);
    CHECK(d_k(1, 0) == 1);
    CHECK(d_k(1, 7) == 1);
    CHECK(d_k(4, 3) == 6); // (1,1,4)x3 and (1,2,2)x3
    CHECK(d_k(7, 0) == 0);
    CHECK(d_k(12, 0) == 0);
}

TEST_CASE("binomial transform between d_k and f_k") {
    CHECK(binomial_transform_d_from_f(12, 2) == 6);
    CHECK(inverse_transform_f_from_d(12, 2) == 4);
    CHECK(inverse_transform_f_from_d(7, 0) == 0);
    CHECK(inverse_transform_f_from_d(1, 0) == 1);
    for (std::uint64_t n = 1; n <= 2000; ++n)
        for (unsigned k = 0; k <= 8; ++k) {
            REQUIRE(binomial_transform_d_from_f(n, k) == d_k(n, k));
            REQUIRE(inverse_transform_f_from_d(n, k) == f_recursive(n, k, 2));
        }
}

TEST_CASE("Kalmar totals") {
    CHECK(kalmar_f(12) == 8); // 1 + 4 + 3
    CHECK(kalmar_f(1) == 0);
    CHECK(kalmar_f(97) == 1);
    CHECK(kalmar_f(8) == 4); // (8),(2,4),(4,2),(2,2,2)
}

TEST_CASE("geometric d_k series against the finite f_k side") {
    Rat tol = make_rat(1, 1000000000); // 1e-9 stop tolerance
    CHECK(sen_series_check(12, Rat(2), tol) < make_rat(1, 1000000));
    CHECK(sen_series_check(1, Rat(2), tol) < make_rat(1, 1000000));
    CHECK(sen_series_check(6, Rat(3), tol) < make_rat(1, 1000000));
    Rat u_frac = make_rat(3, 2);
    CHECK(sen_series_check(30, u_frac, tol) < make_rat(1, 10000));
    CHECK_THROWS_AS(sen_series_check(12, Rat(1), tol), std::domain_error);
}

TEST_CASE("Dirichlet power coefficients define f_k") {
    CHECK(dirichlet_power_check(2, 2, 100));
    CHECK(dirichlet_power_check(1, 5, 100));
    CHECK(dirichlet_power_check(3, 2, 1000));
    CHECK(dirichlet_power_check(4, 3, 500));
    CHECK_THROWS_AS(dirichlet_power_check(2, 2, 100000), std::length_error);
}

TEST_CASE("all counting routes agree with the oracle on a small grid") {
    for (std::uint64_t l = 1; l <= 3; ++l) {
        auto rows = f_rows(300, 6, l);
        for (std::uint64_t n = 1; n <= 300; ++n) {
            auto pf = factorize(n);
            for (unsigned k = 0; k <= 6; ++k) {
                CountValue expect = oracle_count(n, k, l);
                REQUIRE(f_recursive(n, k, l) == expect);
                REQUIRE(f_separation(n, k, l, SeparationVariant::kSingleLevel) == expect);
                REQUIRE(f_separation(n, k, l, SeparationVariant::kFullElimination) == expect);
                REQUIRE(BigNat(rows[k][n]) == expect);
                if (l == 2) REQUIRE(f_macmahon(pf, k) == expect);
                if (l == 1) REQUIRE(d_k(pf, k) == expect);
            }
        }
    }
}

TEST_CASE("vanishing conditions") {
    for (std::uint64_t n = 1; n <= 500; ++n) {
        auto pf = factorize(n);
        for (unsigned k = 1; k <= 10; ++k)
            for (std::uint64_t l = 2; l <= 4; ++l) {
                bool must_vanish = pow_exceeds(l, k, n) || k > pf.big_omega();
                if (must_vanish) REQUIRE(f_recursive(n, k, l) == 0);
            }
    }
}

TEST_CASE("alternating f_k sums give the Moebius function") {
    auto mu = mobius_sieve(2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        long t2 = (n == 1) ? 0 : floor_log(BigNat(static_cast<unsigned long>(n)), 2);
        auto pf = factorize(n);
        BigInt alt = 0;
        for (long k = 0; k <= t2; ++k) {
            BigInt v = (k == 0) ? BigInt(n == 1 ? 1 : 0)
                                : BigInt(f_macmahon(pf, static_cast<unsigned>(k)));
            if (k % 2 == 0)
                alt += v;
            else
                alt -= v;
        }
        REQUIRE(alt == mu[n]);
    }
}

TEST_CASE("harmonic alternating f_k sums give Lambda over log") {
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        long t2 = floor_log(BigNat(static_cast<unsigned long>(n)), 2);
        auto pf = factorize(n);
        Rat sum = 0;
        for (long k = 1; k <= t2; ++k) {
            Rat term = make_rat(f_macmahon(pf, static_cast<unsigned>(k)), k);
            if (k % 2 == 1)
                sum += term;
            else
                sum -= term;
        }
        Rat expected = (pf.factors.size() == 1) ? make_rat(1, pf.factors[0].exponent) : Rat(0);
        REQUIRE(sum == expected);
    }
    // n = 8 in full: 1 - 2/2 + 1/3 = 1/3
    auto pf8 = factorize(8);
    Rat s = Rat(f_macmahon(pf8, 1)) - make_rat(f_macmahon(pf8, 2), 2) +
            make_rat(f_macmahon(pf8, 3), 3);
    CHECK(s == make_rat(1, 3));
}
