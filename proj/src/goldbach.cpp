#include "gblab/goldbach.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "gblab/errors.hpp"
#include "gblab/parallel.hpp"
#include "ntt.hpp"

namespace gblab {

namespace {

std::uint64_t half_is_odd_prime(const PrimeSieve& sieve, std::uint64_t n) {
    const std::uint64_t h = n / 2;
    return (h % 2 == 1 && sieve.is_prime(h)) ? 1 : 0;
}

void check_even_in_range(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t lowest, const char* what) {
    if (n % 2 != 0) throw DomainError(std::string(what) + ": n must be even, got " + std::to_string(n));
    if (n < lowest)
        throw DomainError(std::string(what) + ": n must be >= " + std::to_string(lowest) + ", got " +
                          std::to_string(n));
    if (n > sieve.limit())
        throw DomainError(std::string(what) + ": n = " + std::to_string(n) + " exceeds sieve limit " +
                          std::to_string(sieve.limit()));
}

std::vector<std::uint64_t> count_unordered_direct(const PrimeSieve& sieve, std::uint64_t n_max,
                                                  unsigned workers) {
    const auto primes = sieve.primes();
    // odd primes only, up to n_max - 3
    const auto first = primes.begin() + 1;
    const auto last = std::ranges::upper_bound(primes, n_max > 3 ? n_max - 3 : 0);
    const std::span<const std::uint64_t> odd(first, last < first ? first : last);

    const std::size_t nthreads = std::max<std::size_t>(1, std::min<std::size_t>(workers, odd.size()));
    std::vector<std::vector<std::uint64_t>> partial(nthreads, std::vector<std::uint64_t>(n_max + 1, 0));
    parallel_for(nthreads, static_cast<unsigned>(nthreads), [&](std::size_t t0, std::size_t t1) {
        for (std::size_t t = t0; t < t1; ++t) {
            auto& hist = partial[t];
            // interleaved rows balance the triangular loop across workers
            for (std::size_t i = t; i < odd.size(); i += nthreads) {
                const std::uint64_t p = odd[i];
                if (2 * p > n_max) break;
                for (std::size_t j = i; j < odd.size(); ++j) {
                    const std::uint64_t s = p + odd[j];
                    if (s > n_max) break;
                    ++hist[s];
                }
            }
        }
    });
    std::vector<std::uint64_t> total(n_max + 1, 0);
    for (const auto& hist : partial)
        for (std::uint64_t n = 0; n <= n_max; ++n) total[n] += hist[n];
    return total;
}

std::vector<std::uint64_t> count_ordered_transform(const PrimeSieve& sieve, std::uint64_t n_max) {
    const std::uint64_t size = std::bit_ceil(2 * n_max + 1);
    std::vector<std::uint64_t> indicator(size, 0);
    for (const auto p : sieve.primes()) {
        if (p > n_max) break;
        if (p != 2) indicator[p] = 1;
    }
    auto conv = detail::Ntt64::self_convolve(std::move(indicator));
    conv.resize(n_max + 1);
    return conv;
}

}  // namespace

GoldbachCount count_one(const PrimeSieve& sieve, std::uint64_t n) {
    check_even_in_range(sieve, n, 4, "count_one");
    GoldbachCount out{n, 0, 0};
    for (const auto p : sieve.primes()) {
        if (p == 2) continue;
        if (2 * p > n) break;
        if (sieve.is_prime(n - p)) ++out.unordered;
    }
    out.ordered = 2 * out.unordered - half_is_odd_prime(sieve, n);
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> goldbach_pairs(const PrimeSieve& sieve, std::uint64_t n) {
    check_even_in_range(sieve, n, 4, "goldbach_pairs");
    if (n > 10'000) throw DomainError("goldbach_pairs: listing is limited to n <= 10^4");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto p : sieve.primes()) {
        if (p == 2) continue;
        if (2 * p > n) break;
        if (sieve.is_prime(n - p)) out.emplace_back(p, n - p);
    }
    return out;
}

std::vector<GoldbachCount> count_range(const PrimeSieve& sieve, std::uint64_t n_max,
                                       const CountRangeOptions& options) {
    check_even_in_range(sieve, n_max, 6, "count_range");

    const bool use_transform = n_max >= options.transform_threshold;
    std::vector<GoldbachCount> out;
    out.reserve((n_max - 6) / 2 + 1);
    if (use_transform) {
        const auto ordered = count_ordered_transform(sieve, n_max);
        for (std::uint64_t n = 6; n <= n_max; n += 2) {
            const std::uint64_t s = half_is_odd_prime(sieve, n);
            if ((ordered[n] + s) % 2 != 0)
                throw NumericalError("count_range: transform produced an inconsistent count at n = " +
                                     std::to_string(n));
            out.push_back({n, ordered[n], (ordered[n] + s) / 2});
        }
        // Re-check a 1% sample (at least one record) against the direct scan.
        std::mt19937_64 rng(options.verify_seed);
        std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
        const std::size_t samples = std::max<std::size_t>(1, out.size() / 100);
        for (std::size_t k = 0; k < samples; ++k) {
            const auto& rec = out[pick(rng)];
            if (count_one(sieve, rec.n) != rec)
                throw NumericalError("count_range: transform disagrees with direct count at n = " +
                                     std::to_string(rec.n));
        }
    } else {
        const auto unordered = count_unordered_direct(sieve, n_max, options.workers);
        for (std::uint64_t n = 6; n <= n_max; n += 2) {
            const std::uint64_t u = unordered[n];
            out.push_back({n, 2 * u - half_is_odd_prime(sieve, n), u});
        }
    }
    return out;
}

std::uint64_t parity_sum(const PrimeSieve& sieve, std::uint64_t p1, std::uint64_t p2) {
    for (const auto p : {p1, p2}) {
        if (p > sieve.limit()) throw DomainError("parity_sum: argument exceeds sieve limit");
        if (p % 2 == 0 || !sieve.is_prime(p))
            throw DomainError("parity_sum: " + std::to_string(p) + " is not an odd prime");
    }
    return p1 + p2;
}

std::vector<std::uint64_t> goldbach_exceptions(std::span<const GoldbachCount> counts) {
    std::vector<std::uint64_t> out;
    for (const auto& c : counts)
        if (c.n >= 6 && c.unordered == 0) out.push_back(c.n);
    return out;
}

}  // namespace gblab
