#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "gblab/circle.hpp"
#include "gblab/errors.hpp"
#include "gblab/goldbach.hpp"

using namespace gblab;

namespace {

const PrimeSieve& sieve_1e5() {
    static const PrimeSieve sieve = PrimeSieve::build(100'000);
    return sieve;
}

// Midpoint rule for the constant-denominator kernel over [2, n].
std::complex<double> riemann_I(std::uint64_t n, double z, double h) {
    const long double r = std::log(static_cast<long double>(n));
    const auto steps = static_cast<std::uint64_t>(std::llround((static_cast<long double>(n) - 2) / h));
    const long double step = (static_cast<long double>(n) - 2) / steps;
    long double re = 0, im = 0;
    for (std::uint64_t k = 0; k < steps; ++k) {
        const long double x = 2 + (k + 0.5L) * step;
        const long double t = 2 * std::numbers::pi_v<long double> * z * x;
        re += std::cos(t);
        im += std::sin(t);
    }
    return {static_cast<double>(re * step / r), static_cast<double>(im * step / r)};
}

// Composite Simpson for the 1/ln x kernel over [2, n].
std::complex<double> simpson_J(std::uint64_t n, double z, std::uint64_t intervals) {
    const long double a = 2, b = static_cast<long double>(n);
    const long double h = (b - a) / intervals;
    auto f = [&](long double x) {
        const long double t = 2 * std::numbers::pi_v<long double> * z * x;
        return std::complex<long double>(std::cos(t), std::sin(t)) / std::log(x);
    };
    std::complex<long double> acc = f(a) + f(b);
    for (std::uint64_t k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0L : 2.0L) * f(a + k * h);
    acc *= h / 3;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace

TEST_CASE("make_arc_params") {
    const auto p = make_arc_params(1'000'000);
    CHECK(p.r == doctest::Approx(std::log(1e6)));
    CHECK(p.c == 7.0);
    CHECK(p.tau == doctest::Approx(1e6 * std::pow(std::log(1e6), -7.0)));
    CHECK(p.q_major_bound == doctest::Approx(std::log(1e6) * std::log(1e6)));
    CHECK_THROWS_AS(make_arc_params(2), DomainError);
}

TEST_CASE("exp_sum_primes examples") {
    const auto& s = sieve_1e5();
    const auto v0 = exp_sum_primes(s, 10, 0.0);
    CHECK(v0.n == 10);
    CHECK(v0.value.real() == doctest::Approx(3.0));
    CHECK(std::abs(v0.value.imag()) < 1e-12);
    CHECK(std::abs(exp_sum_primes(s, 10, 0.5).value - std::complex<double>(-3.0, 0.0)) < 1e-12);
    CHECK(std::abs(exp_sum_primes(s, 10, 1.0 / 3.0).value) < 1e-12);
    CHECK(std::abs(exp_sum_primes(s, 10, 7.5).value - std::complex<double>(-3.0, 0.0)) < 1e-12);
    CHECK_THROWS_AS(exp_sum_primes(s, 100'001, 0.1), DomainError);
}

TEST_CASE("exp_sum_primes bounds and conjugate symmetry") {
    const auto& s = sieve_1e5();
    const std::uint64_t n = 100'000;
    const double total = exp_sum_primes(s, n, 0.0).value.real();
    CHECK(total == doctest::Approx(static_cast<double>(s.prime_count(n) - 1)));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        // dyadic alpha so that 1 - alpha is exact
        const double alpha = static_cast<double>(rng() >> 11) * 0x1p-53;
        const auto a = exp_sum_primes(s, n, alpha).value;
        const auto b = exp_sum_primes(s, n, 1.0 - alpha).value;
        REQUIRE(std::abs(a) <= total + 1e-9);
        REQUIRE(std::abs(a - std::conj(b)) < 1e-12 * total);
    }
}

TEST_CASE("exp_sum_grid agrees with pointwise evaluation") {
    const auto& s = sieve_1e5();
    const auto grid = exp_sum_grid(s, 1000, 4096, 3);
    REQUIRE(grid.size() == 4096);
    for (std::uint64_t k : {0, 1, 17, 1024, 2048, 4095})
        CHECK(std::abs(grid[k] - exp_sum_primes(s, 1000, static_cast<double>(k) / 4096).value) < 1e-9);
    CHECK(exp_sum_grid(s, 1000, 4096, 1) == grid);
    CHECK_THROWS_AS(exp_sum_grid(s, 1000, 1000), DomainError);
}

TEST_CASE("integral_I") {
    const std::uint64_t n = 10'000;
    const double r = std::log(1e4);
    CHECK(integral_I(n, 0.0).real() == doctest::Approx(9998.0 / r));
    CHECK(integral_I(n, 0.0).imag() == 0.0);
    for (double z : {1e-6, -1e-6, 1e-4, -1e-4, 1e-2, -1e-2}) {
        CAPTURE(z);
        const auto closed = integral_I(n, z);
        const auto oracle = riemann_I(n, z, 0.01);
        CHECK(std::abs(closed - oracle) / std::abs(oracle) < 1e-6);
        CHECK(std::abs(closed) <= 1.0 / (std::numbers::pi * std::abs(z) * r) * (1 + 1e-12));
    }
    CHECK_THROWS_AS(integral_I(2, 0.1), DomainError);
}

TEST_CASE("integral_J") {
    const std::uint64_t n = 10'000;
    const double tol = 1e-8;
    const double li = log_integral(1e4, 1e-12);
    CHECK(integral_J(n, 0.0, tol).real() == doctest::Approx(li).epsilon(1e-10));
    for (double z : {1e-4, 1.0 / 1e4, 1e-3, 3.7e-2, 0.25}) {
        CAPTURE(z);
        const auto j = integral_J(n, z, tol);
        CHECK(std::abs(j) <= li);
        CHECK(std::abs(integral_J(n, -z, tol) - std::conj(j)) <= 2 * tol);
        CHECK(std::abs(j - integral_J(n, z, tol / 64)) <= 2 * tol);
        CHECK(std::abs(j - simpson_J(n, z, 400'000)) < 1e-7);
    }
    CHECK_THROWS_AS(integral_J(n, 0.1, 0.0), DomainError);
}

TEST_CASE("bound_Z") {
    const auto p = make_arc_params(10'000);
    CHECK(bound_Z(p, 0.0) == doctest::Approx(1e4 / p.r));
    CHECK(bound_Z(p, 1e-4) == doctest::Approx(1e4 / p.r));
    CHECK(bound_Z(p, 2e-4) == doctest::Approx(1e4 / (2 * p.r)));
    CHECK(bound_Z(p, -0.5) == doctest::Approx(2.0 / p.r));
}

TEST_CASE("integral_R tracks n / r^2 at c = 2") {
    const double tol = 1e-6;
    double previous = 0.0;
    for (std::uint64_t n : {10'000, 100'000}) {
        const double r = std::log(static_cast<double>(n));
        const auto value = integral_R(n, 2.0, tol, 2);
        const double deviation = std::abs(value.real() * r * r / static_cast<double>(n) - 1.0);
        CAPTURE(n);
        CHECK(std::abs(value.imag()) < 10 * tol);
        CHECK(deviation < 3.0 / r);
        if (previous > 0) CHECK(deviation < previous);
        previous = deviation;
    }
    CHECK_THROWS_AS(integral_R(99, 2.0, tol), DomainError);
    CHECK_THROWS_AS(integral_R(10'000, 1.5, tol), DomainError);
}

TEST_CASE("integral_R is reproducible across worker counts") {
    CHECK(integral_R(5'000, 2.0, 1e-6, 1) == integral_R(5'000, 2.0, 1e-6, 4));
}

TEST_CASE("major arc enumeration") {
    // r = 10 exactly
    const auto p = make_arc_params(static_cast<std::uint64_t>(std::exp(10.0)) / 2 * 2, 7.0);
    ArcParams exact = p;
    exact.r = 10.0;
    exact.q_major_bound = 100.0;
    const auto arcs = enumerate_major_arcs(exact);
    std::uint64_t max_q = 0, phi_sum = 0;
    for (std::uint64_t q = 1; q < 100; ++q) phi_sum += euler_phi(PrimeSieve::build(100).factorize(q));
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        max_q = std::max(max_q, a.q);
        REQUIRE(std::gcd(a.a, a.q) == 1);
        REQUIRE(a.a < a.q + (a.q == 1));
        REQUIRE(a.halfwidth == 1.0 / exact.tau);
        REQUIRE(a.cls == ArcClass::Major);
        if (i > 0) REQUIRE(arcs[i - 1].a * a.q < a.a * arcs[i - 1].q);
    }
    CHECK(arcs.front().q == 1);
    CHECK(max_q == 99);
    CHECK(arcs.size() == phi_sum);
    CHECK(major_arc_measure(exact) == doctest::Approx(2.0 / exact.tau * static_cast<double>(phi_sum)));
}

TEST_CASE("arc overlap and disjoint dissection") {
    // At n = 10^6, c = 7 the major arcs cover the circle many times over.
    const auto dense = make_arc_params(1'000'000, 7.0);
    CHECK(major_arc_measure(dense) > 1.0);
    CHECK_THROWS_AS(dissect_arcs(dense), ArcOverlapError);
    try {
        dissect_arcs(make_arc_params(1000, 7.0));
        FAIL("expected overlap");
    } catch (const ArcOverlapError& e) {
        CHECK(std::string(e.what()).find("major arcs 0/1 and") != std::string::npos);
    }

    const auto sparse = make_arc_params(1'000'000'000, 2.0);
    const auto d = dissect_arcs(sparse);
    CHECK(d.major.size() == enumerate_major_arcs(sparse).size());
    CHECK(d.minor.size() == d.major.size());
    CHECK(d.major_measure == doctest::Approx(major_arc_measure(sparse)));
    CHECK(d.major_measure < 1.0);
    double minor_measure = 0.0;
    for (const auto& g : d.minor) {
        REQUIRE(g.end > g.begin);
        minor_measure += g.end - g.begin;
    }
    CHECK(minor_measure + d.major_measure == doctest::Approx(1.0));

    const auto huge = make_arc_params(10'000'000'000'000'000'000ull, 7.0);
    CHECK(major_arc_measure(huge) < 1.0);
}

TEST_CASE("classify_alpha") {
    const auto p = make_arc_params(1'000'000'000, 2.0);
    const auto near_third = classify_alpha(p, 1.0 / 3.0 + 0.1 / p.tau);
    CHECK(near_third.cls == ArcClass::Major);
    CHECK(near_third.a == 1);
    CHECK(near_third.q == 3);
    CHECK(classify_alpha(p, 0.999999999999).q == 1);
    CHECK(classify_alpha(p, 0.999999999999).a == 0);
    CHECK(classify_alpha(p, (std::sqrt(5.0) - 1) / 2).cls == ArcClass::Minor);
}

TEST_CASE("rep_count_via_orthogonality") {
    const auto& s = sieve_1e5();
    CHECK(rep_count_via_orthogonality(s, 10, 32) == 3);
    CHECK(rep_count_via_orthogonality(s, 6, 16) == 1);
    CHECK(rep_count_via_orthogonality(s, 1000, 2048) == count_one(s, 1000).ordered);
    for (std::uint64_t n = 4; n <= 600; n += 2)
        REQUIRE(rep_count_via_orthogonality(s, n, std::bit_ceil(2 * n)) == count_one(s, n).ordered);
    CHECK_THROWS_AS(rep_count_via_orthogonality(s, 1000, 1999), DomainError);
}

TEST_CASE("lemma4_probe") {
    const auto& s = sieve_1e5();
    const double g1024 = lemma4_probe(s, 100, 1024);
    CHECK(g1024 >= 24.0 / 1024);
    CHECK(g1024 < 24.0);
    const double g4096 = lemma4_probe(s, 100, 4096);
    const double g8192 = lemma4_probe(s, 100, 8192, 3);
    CHECK(std::abs(g8192 - g4096) / g4096 < 0.01);
    CHECK_THROWS_AS(lemma4_probe(s, 100, 399), DomainError);
}

TEST_CASE("minor_bound") {
    const auto p = make_arc_params(1'000'000, 7.0);
    CHECK(minor_bound(p, 1, 0.0, 0.0) == doctest::Approx(1e6 / p.r));
    CHECK(minor_bound(p, 7, 1.0, 0.1) == doctest::Approx(minor_bound(p, 7, std::nextafter(1.0, 0.0), 0.1)));
    CHECK(minor_bound(p, 4, 9.0, 0.0) == doctest::Approx(1e6 / p.r / 2 * 3));
    CHECK_THROWS_AS(minor_bound(p, 0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(minor_bound(p, 1, -1.0, 0.0), DomainError);

    const auto report = minor_bound_report(sieve_1e5(), make_arc_params(100'000, 2.0), 4096, 0.0);
    CHECK(report.samples > 0);
    CHECK(report.max_ratio > 0.0);
}
