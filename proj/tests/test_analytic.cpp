#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <sstream>

#include "fk/analytic.hpp"
#include "fk/counts.hpp"

using namespace fk;

namespace {

Real abs_err(const Real& a, const Real& b) { return abs(a - b); }

const Real kGamma("0.577215664901532860606512090082402431042159335939923598805767");

} // namespace

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == make_rat(-1, 2));
    CHECK(bernoulli_number(2) == make_rat(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(4) == make_rat(-1, 30));
    CHECK(bernoulli_number(12) == make_rat(-691, 2730));
    CHECK(bernoulli_number(20) == make_rat(-174611, 330));
}

TEST_CASE("zeta at closed-form points") {
    const Real pi = boost::math::constants::pi<Real>();
    CHECK(abs_err(zeta(Real(2), 30), pi * pi / 6) < Real("1e-30"));
    CHECK(abs_err(zeta(Real(4), 30), pi * pi * pi * pi / 90) < Real("1e-30"));
    // Apery's constant
    CHECK(abs_err(zeta(Real(3), 30),
                  Real("1.202056903159594285399738161511449990764986292")) < Real("1e-28"));
    CHECK(abs_err(zeta(Real("1.7286"), 10), Real(2)) < Real("1e-3"));
    CHECK_THROWS_AS(zeta(Real(1), 20), std::domain_error);
    CHECK_THROWS_AS(zeta(Real("0.5"), 20), std::domain_error);
}

TEST_CASE("zeta decreases towards 1") {
    Real z2 = zeta(Real(2), 25), z3 = zeta(Real(3), 25), z4 = zeta(Real(4), 25);
    CHECK(z4 < z3);
    CHECK(z3 < z2);
    CHECK(z4 > 1);
    CHECK(zeta(Real(30), 25) - 1 < Real("1e-9"));
}

TEST_CASE("zeta derivative matches a central difference of the series route") {
    for (const char* s_text : {"1.6", "2", "2.5", "4"}) {
        Real s(s_text);
        Real h("1e-12");
        Real fd = (zeta(s + h, 33) - zeta(s - h, 33)) / (2 * h);
        REQUIRE(abs_err(zeta_prime(s, 30), fd) < Real("1e-18"));
    }
}

TEST_CASE("Kalmar constants") {
    auto c = kalmar_constants(25);
    CHECK(abs_err(c.rho, Real("1.7286")) < Real("5e-4"));
    CHECK(abs_err(c.K, Real("0.31817")) < Real("5e-4"));
    CHECK(abs(zeta(c.rho, 30) - 2) < Real("1e-23"));
    CHECK(c.K > 0);
    // defining relation K * (-rho * zeta'(rho)) = 1
    CHECK(abs_err(c.K * (-c.rho * zeta_prime(c.rho, 30)), Real(1)) < Real("1e-20"));
    CHECK_THROWS_AS(kalmar_constants(40), std::domain_error);
}

TEST_CASE("divisor main-term coefficients") {
    auto a1 = divisor_main_term(1);
    REQUIRE(a1.coeffs.size() == 1);
    CHECK(a1.coeffs[0] == 1);
    CHECK(a1.leading == 1);

    auto a2 = divisor_main_term(2);
    CHECK(a2.coeffs[1] == 1);
    CHECK(abs_err(a2.coeffs[0], 2 * kGamma - 1) == 0);
    CHECK(abs_err(a2.coeffs[0], Real("0.15443")) < Real("1e-5"));
    CHECK(a2.leading == 1);

    auto a3 = divisor_main_term(3);
    CHECK(a3.coeffs[2] == Real(1) / 2);
    CHECK(a3.leading == make_rat(1, 2));
    CHECK(abs_err(a3.coeffs[1], 3 * kGamma - 1) == 0);

    CHECK_THROWS_AS(divisor_main_term(4), std::domain_error);
}

TEST_CASE("f_k main terms via the alternating binomial sum") {
    auto b1 = f_main_term(1);
    CHECK(b1.coeffs[0] == 1);

    auto b2 = f_main_term(2);
    CHECK(b2.coeffs[1] == 1);
    CHECK(abs_err(b2.coeffs[0], 2 * kGamma - 3) == 0);
    CHECK(abs_err(b2.coeffs[0], Real("-1.84557")) < Real("1e-5"));
    CHECK(b2.leading == 1);

    auto b3 = f_main_term(3);
    CHECK(b3.coeffs[2] == Real(1) / 2);
    CHECK(b3.leading == make_rat(1, 2));
    CHECK(abs_err(b3.coeffs[1], 3 * kGamma - 4) == 0);

    CHECK_THROWS_AS(f_main_term(0), std::domain_error);
}

TEST_CASE("main-term fit against sieved data") {
    // k = 2: the constant in D_2(x) - x log x ~ c x must come out as 2 gamma - 1
    const std::uint64_t limit = 10'000'000;
    auto d2 = d_k_sieve(limit, 2);
    double acc = 0;
    int samples = 0;
    for (std::uint64_t x = 1'000'000; x <= limit; x += 9973) {
        acc += (static_cast<double>(d2.D(x)) - x * std::log(double(x))) / double(x);
        ++samples;
    }
    double fit = acc / samples;
    double expect = static_cast<double>(2 * kGamma - 1);
    CHECK(std::abs(fit - expect) < 1e-3);

    // k = 3 at coarser tolerance
    auto a3 = divisor_main_term(3);
    auto d3 = d_k_sieve(2'000'000, 3);
    double a32 = static_cast<double>(a3.coeffs[2]);
    double a31 = static_cast<double>(a3.coeffs[1]);
    acc = 0;
    samples = 0;
    for (std::uint64_t x = 500'000; x <= 2'000'000; x += 4999) {
        double t = std::log(double(x));
        acc += (static_cast<double>(d3.D(x)) - x * (a32 * t * t + a31 * t)) / double(x);
        ++samples;
    }
    fit = acc / samples;
    CHECK(std::abs(fit - static_cast<double>(a3.coeffs[0])) < 0.01);
}

TEST_CASE("error scan kernels agree and match direct values") {
    auto serial = error_scan_f2_serial(100000);
    auto parallel = error_scan_f2(100000);
    CHECK(serial.argmax_x == parallel.argmax_x);
    CHECK(serial.max_abs_error == parallel.max_abs_error);
    CHECK(serial.f2_at_argmax == parallel.f2_at_argmax);

    auto table = d_k_sieve(100000, 2);
    auto cached = error_scan_f2_from_table(table);
    CHECK(cached.argmax_x == serial.argmax_x);
    CHECK(cached.max_abs_error == serial.max_abs_error);

    CHECK(serial.f2_at_argmax == F2_closed(serial.argmax_x, 2));

    auto tiny = error_scan_f2_serial(1);
    CHECK(tiny.argmax_x == 1);
    CHECK(tiny.f2_at_argmax == 0);
    double expect = std::abs(0.0 - 1.0 * (std::log(1.0) + (double)(2 * kGamma - 3)));
    CHECK(tiny.max_abs_error == doctest::Approx(expect));

    auto ten = error_scan_f2_serial(10);
    // F_2(10) = 8 exactly; every delta uses exact F_2 values
    CHECK(F2_closed(10, 2) == 8);
    CHECK(ten.max_abs_error > 0);
}

TEST_CASE("scan sampling and csv") {
    std::vector<ScanSample> samples;
    auto r = error_scan_f2(50000, &samples, 10000);
    REQUIRE(!samples.empty());
    bool has_argmax = false;
    for (const auto& s : samples) {
        REQUIRE(BigNat(s.f2) == F2_closed(s.x, 2));
        if (s.x == r.argmax_x) has_argmax = true;
    }
    CHECK(has_argmax);
    std::ostringstream os;
    write_scan_csv(os, samples);
    CHECK(os.str().rfind("x,f2,main_term,delta\n", 0) == 0);
}

TEST_CASE("error growth proxy stays bounded") {
    for (std::uint64_t limit : {100'000ULL, 1'000'000ULL}) {
        auto r = error_scan_f2(limit);
        CHECK(r.max_abs_error / std::sqrt(double(limit)) < 1.0);
    }
}

TEST_CASE("identity suite") {
    auto rep = identity_suite(1000);
    CHECK(rep.ok);
    CHECK(rep.failure.empty());
    CHECK_THROWS_AS(identity_suite(200000), std::length_error);
}

TEST_CASE("identity suite spot values") {
    // M(10) = -1 decomposes as 1 - 9 + 8 - 1
    auto rows = f_rows(10, 3, 2);
    std::int64_t F0 = 0, F1 = 0, F2 = 0, F3 = 0;
    for (int n = 1; n <= 10; ++n) {
        F0 += rows[0][n];
        F1 += rows[1][n];
        F2 += rows[2][n];
        F3 += rows[3][n];
    }
    CHECK(F0 == 1);
    CHECK(F1 == 9);
    CHECK(F2 == 8);
    CHECK(F3 == 1);
    CHECK(F0 - F1 + F2 - F3 == -1);
    // Pi(10) = 4 + 1 + 1/3
    Rat pi10 = Rat(F1) - make_rat(F2, 2) + make_rat(F3, 3);
    CHECK(pi10 == make_rat(16, 3));
}
