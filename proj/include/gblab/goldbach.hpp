#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gblab/primes.hpp"

namespace gblab {

/// Representations of an even n as a sum of two odd primes.
/// ordered counts (p1, p2) and (p2, p1) separately; unordered has p1 <= p2.
/// ordered == 2 * unordered - [n/2 is an odd prime].
struct GoldbachCount {
    std::uint64_t n = 0;
    std::uint64_t ordered = 0;
    std::uint64_t unordered = 0;

    friend bool operator==(const GoldbachCount&, const GoldbachCount&) = default;
};

/// Scans odd primes p <= n/2 and tests n - p. 2 never counts, so n = 4 gives 0.
GoldbachCount count_one(const PrimeSieve& sieve, std::uint64_t n);

/// Odd-prime pairs (p1 <= p2) summing to n. Debug helper, n <= 10^4.
std::vector<std::pair<std::uint64_t, std::uint64_t>> goldbach_pairs(const PrimeSieve& sieve,
                                                                    std::uint64_t n);

struct CountRangeOptions {
    /// At or above this n_max the counts come from a number-theoretic transform.
    std::uint64_t transform_threshold = 1u << 15;
    unsigned workers = 1;
    /// Seed for the sample re-checked against count_one after a transform.
    std::uint64_t verify_seed = 0x9b1d5eedULL;
};

/// One record per even n in [6, n_max], from the self-convolution of the
/// odd-prime indicator. Exact for every path.
std::vector<GoldbachCount> count_range(const PrimeSieve& sieve, std::uint64_t n_max,
                                       const CountRangeOptions& options = {});

/// p1 + p2 for odd primes p1, p2; the result is always even.
std::uint64_t parity_sum(const PrimeSieve& sieve, std::uint64_t p1, std::uint64_t p2);

/// Every n in the input with no unordered representation.
std::vector<std::uint64_t> goldbach_exceptions(std::span<const GoldbachCount> counts);

}  // namespace gblab
