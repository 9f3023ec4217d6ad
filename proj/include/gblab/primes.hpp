#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gblab {

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization of n >= 1. Primes strictly increasing; empty iff n == 1.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    /// Product of prime^exponent, recomputed from the factor list.
    std::uint64_t product() const;
    bool squarefree() const;
    bool divisible_by(std::uint64_t p) const;
};

/// Immutable primality table for [0, limit].
///
/// Only odd integers are stored, one bit each: bit i of the bitmap stands for
/// 2i+1. Queries accept any n in [0, limit]. Construction is a segmented
/// sieve of Eratosthenes; segments are independent and may be processed by
/// several workers.
class PrimeSieve {
public:
    static PrimeSieve build(std::uint64_t limit, unsigned workers = 1);

    /// Wraps an existing odd-only bitmap (as produced by odd_bitmap()).
    /// Checks sizes and trailing padding but not the primality data itself.
    static PrimeSieve from_odd_bitmap(std::uint64_t limit, std::vector<std::uint64_t> words);

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::span<const std::uint64_t> odd_bitmap() const noexcept { return words_; }

    /// Number of odd integers in [1, limit], i.e. the bit count of the bitmap.
    std::uint64_t odd_slots() const noexcept { return (limit_ + 1) / 2; }

    bool is_prime(std::uint64_t n) const;

    /// pi(x) for 2 <= x <= limit.
    std::uint64_t prime_count(std::uint64_t x) const;

    /// #{p <= n : p prime, p = l (mod q)} for q >= 1, 0 <= l < q, n <= limit.
    std::uint64_t prime_count_ap(std::uint64_t n, std::uint64_t q, std::uint64_t l) const;

    /// Trial division by sieved primes; requires 1 <= n <= limit^2.
    Factorization factorize(std::uint64_t n) const;

private:
    PrimeSieve(std::uint64_t limit, std::vector<std::uint64_t> words);
    void collect_primes();

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> primes_;
};

/// 0 if a square divides n, otherwise (-1)^(number of prime factors).
int mobius(const Factorization& f);

/// Euler's totient, exact: prod p^(e-1) * (p-1).
std::uint64_t euler_phi(const Factorization& f);

/// Li(x) = integral of 1/ln t over [2, x], absolute error <= tol.
/// Lower limit is 2, not 0: Li(2) == 0.
double log_integral(double x, double tol = 1e-9);

/// mu(k) and phi(k) for every 1 <= k <= max, by a linear sieve.
class ArithmeticTable {
public:
    explicit ArithmeticTable(std::uint64_t max);

    std::uint64_t max() const noexcept { return mu_.size() - 1; }
    int mobius(std::uint64_t k) const { return mu_.at(k); }
    std::uint64_t phi(std::uint64_t k) const { return phi_.at(k); }

private:
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> phi_;
};

/// Sieve cache file: "GBSV", version 0x01, limit (u64 little-endian), then the
/// odd-only bitmap, LSB-first within each byte.
void write_sieve_cache(const PrimeSieve& sieve, const std::filesystem::path& path);

/// Loads and validates a cache file. Throws CacheError on any mismatch.
PrimeSieve read_sieve_cache(const std::filesystem::path& path);

}  // namespace gblab
