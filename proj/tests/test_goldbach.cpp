#include <doctest.h>

#include <random>

#include "gblab/errors.hpp"
#include "gblab/goldbach.hpp"
#include "oracles.hpp"

using namespace gblab;

namespace {

const PrimeSieve& sieve_1e6() {
    static const PrimeSieve sieve = PrimeSieve::build(1'000'000);
    return sieve;
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 3; p <= n; p += 2)
        if (oracle::is_prime_trial(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("count_one examples") {
    const auto sieve = PrimeSieve::build(1000);
    CHECK(count_one(sieve, 6) == GoldbachCount{6, 1, 1});
    CHECK(count_one(sieve, 10) == GoldbachCount{10, 3, 2});
    CHECK(count_one(sieve, 4) == GoldbachCount{4, 0, 0});
    CHECK(count_one(sieve, 100).unordered == 6);
    CHECK_THROWS_AS(count_one(sieve, 7), DomainError);
    CHECK_THROWS_AS(count_one(sieve, 2), DomainError);
    CHECK_THROWS_AS(count_one(sieve, 1002), DomainError);
}

TEST_CASE("goldbach_pairs lists the representations of 100") {
    const auto sieve = PrimeSieve::build(100);
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected{{3, 97},  {11, 89}, {17, 83},
                                                                        {29, 71}, {41, 59}, {47, 53}};
    CHECK(goldbach_pairs(sieve, 100) == expected);
}

TEST_CASE("count_one matches the double-loop oracle") {
    const auto sieve = PrimeSieve::build(3000);
    const auto odd = odd_primes_up_to(3000);
    for (std::uint64_t n = 4; n <= 3000; n += 2) {
        const auto c = count_one(sieve, n);
        const auto ref = oracle::brute_force_pairs(odd, n);
        REQUIRE(c.ordered == ref.ordered);
        REQUIRE(c.unordered == ref.unordered);
        const std::uint64_t s = (n / 2) % 2 == 1 && oracle::is_prime_trial(n / 2);
        REQUIRE(c.ordered == 2 * c.unordered - s);
    }
}

TEST_CASE("count_range") {
    const auto sieve = PrimeSieve::build(10'000);
    CHECK(count_range(sieve, 6) == std::vector<GoldbachCount>{{6, 1, 1}});
    CHECK_THROWS_AS(count_range(sieve, 4), DomainError);
    CHECK_THROWS_AS(count_range(sieve, 101), DomainError);
    CHECK_THROWS_AS(count_range(sieve, 10'002), DomainError);

    CountRangeOptions direct;
    direct.transform_threshold = ~std::uint64_t{0};
    CountRangeOptions transform;
    transform.transform_threshold = 0;
    const auto a = count_range(sieve, 10'000, direct);
    const auto b = count_range(sieve, 10'000, transform);
    REQUIRE(a.size() == (10'000 - 6) / 2 + 1);
    CHECK(a == b);
    for (const auto& rec : a) REQUIRE(rec == count_one(sieve, rec.n));
    CHECK(a[(100 - 6) / 2].unordered == 6);
}

TEST_CASE("count_range output is independent of threshold and worker count") {
    const auto sieve = PrimeSieve::build(20'000);
    std::vector<GoldbachCount> reference;
    for (const std::uint64_t threshold : {std::uint64_t{0}, std::uint64_t{5'000}, ~std::uint64_t{0}}) {
        for (const unsigned workers : {1u, 2u, 5u}) {
            CountRangeOptions o;
            o.transform_threshold = threshold;
            o.workers = workers;
            const auto out = count_range(sieve, 20'000, o);
            if (reference.empty()) reference = out;
            CHECK(out == reference);
        }
    }
}

TEST_CASE("every even n in [6, 10^6] has an odd-prime representation") {
    const auto counts = count_range(sieve_1e6(), 1'000'000);
    CHECK(counts.size() == 499'998);
    CHECK(goldbach_exceptions(counts).empty());
    CHECK(goldbach_exceptions(std::vector<GoldbachCount>{{8, 2, 1}, {98, 0, 0}}) == std::vector<std::uint64_t>{98});
}

TEST_CASE("parity_sum") {
    const auto& sieve = sieve_1e6();
    CHECK(parity_sum(sieve, 3, 3) == 6);
    CHECK(parity_sum(sieve, 3, 5) == 8);
    CHECK_THROWS_AS(parity_sum(sieve, 2, 3), DomainError);
    CHECK_THROWS_AS(parity_sum(sieve, 3, 9), DomainError);
    CHECK_THROWS_AS(parity_sum(sieve, 3, 2'000'003), DomainError);

    const auto primes = sieve.primes();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(1, primes.size() - 1);
    for (int i = 0; i < 10'000; ++i) REQUIRE(parity_sum(sieve, primes[pick(rng)], primes[pick(rng)]) % 2 == 0);
}
