#include "gblab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gblab/errors.hpp"
#include "gblab/parallel.hpp"
#include "gblab/quadrature.hpp"

namespace gblab {

namespace {

constexpr std::uint64_t kSegmentWords = 4096;  // 32 KiB of bitmap per segment

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> small_odd_primes(std::uint64_t bound) {
    std::vector<char> composite(bound + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = 1;
    }
    return out;
}

}  // namespace

std::uint64_t Factorization::product() const {
    std::uint64_t out = 1;
    for (const auto& [p, e] : factors)
        for (unsigned k = 0; k < e; ++k) out *= p;
    return out;
}

bool Factorization::squarefree() const {
    return std::ranges::all_of(factors, [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool Factorization::divisible_by(std::uint64_t p) const {
    return std::ranges::any_of(factors, [p](const PrimePower& pp) { return pp.prime == p; });
}

PrimeSieve::PrimeSieve(std::uint64_t limit, std::vector<std::uint64_t> words)
    : limit_(limit), words_(std::move(words)) {
    collect_primes();
}

PrimeSieve PrimeSieve::build(std::uint64_t limit, unsigned workers) {
    if (limit < 2) throw DomainError("build_sieve: limit must be >= 2");
    const std::uint64_t slots = (limit + 1) / 2;
    const std::uint64_t nwords = (slots + 63) / 64;
    std::vector<std::uint64_t> words(nwords, ~std::uint64_t{0});
    const auto base = small_odd_primes(isqrt(limit));

    const std::uint64_t nsegments = (nwords + kSegmentWords - 1) / kSegmentWords;
    parallel_for(nsegments, workers, [&](std::size_t first, std::size_t last) {
        for (std::size_t seg = first; seg < last; ++seg) {
            const std::uint64_t w0 = seg * kSegmentWords;
            const std::uint64_t w1 = std::min(nwords, w0 + kSegmentWords);
            const std::uint64_t s0 = w0 * 64;
            const std::uint64_t s1 = std::min(slots, w1 * 64);
            const std::uint64_t lo = 2 * s0 + 1;   // smallest odd in segment
            const std::uint64_t hi = 2 * s1 - 1;   // largest odd in segment
            for (const std::uint64_t p : base) {
                if (p * p > hi) break;
                std::uint64_t start = p * p;
                if (start < lo) {
                    start = (lo + p - 1) / p * p;
                    if (start % 2 == 0) start += p;
                }
                for (std::uint64_t s = (start - 1) / 2; s < s1; s += p)
                    words[s / 64] &= ~(std::uint64_t{1} << (s % 64));
            }
        }
    });

    words[0] &= ~std::uint64_t{1};  // 1 is not prime
    if (slots % 64 != 0) words.back() &= (std::uint64_t{1} << (slots % 64)) - 1;
    return PrimeSieve(limit, std::move(words));
}

PrimeSieve PrimeSieve::from_odd_bitmap(std::uint64_t limit, std::vector<std::uint64_t> words) {
    if (limit < 2) throw DomainError("sieve bitmap: limit must be >= 2");
    const std::uint64_t slots = (limit + 1) / 2;
    if (words.size() != (slots + 63) / 64)
        throw DomainError("sieve bitmap: word count does not match limit");
    if (slots % 64 != 0 && (words.back() >> (slots % 64)) != 0)
        throw DomainError("sieve bitmap: nonzero padding bits beyond limit");
    if (words[0] & 1) throw DomainError("sieve bitmap: 1 is marked prime");
    return PrimeSieve(limit, std::move(words));
}

void PrimeSieve::collect_primes() {
    std::uint64_t count = 1;
    for (const auto w : words_) count += static_cast<std::uint64_t>(std::popcount(w));
    primes_.clear();
    primes_.reserve(count);
    primes_.push_back(2);
    for (std::uint64_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w) {
            const auto bit = static_cast<std::uint64_t>(std::countr_zero(w));
            primes_.push_back(2 * (wi * 64 + bit) + 1);
            w &= w - 1;
        }
    }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
    if (n > limit_) throw DomainError("is_prime: n exceeds sieve limit");
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    const std::uint64_t s = n / 2;
    return (words_[s / 64] >> (s % 64)) & 1;
}

std::uint64_t PrimeSieve::prime_count(std::uint64_t x) const {
    if (x < 2 || x > limit_) throw DomainError("prime_count: x must lie in [2, limit]");
    return static_cast<std::uint64_t>(std::ranges::upper_bound(primes_, x) - primes_.begin());
}

std::uint64_t PrimeSieve::prime_count_ap(std::uint64_t n, std::uint64_t q, std::uint64_t l) const {
    if (q < 1) throw DomainError("prime_count_ap: q must be >= 1");
    if (l >= q) throw DomainError("prime_count_ap: l must satisfy 0 <= l < q");
    if (n > limit_) throw DomainError("prime_count_ap: n exceeds sieve limit");
    std::uint64_t count = 0;
    for (const auto p : primes_) {
        if (p > n) break;
        if (p % q == l) ++count;
    }
    return count;
}

Factorization PrimeSieve::factorize(std::uint64_t n) const {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    if (static_cast<unsigned __int128>(n) > static_cast<unsigned __int128>(limit_) * limit_)
        throw DomainError("factorize: n exceeds limit^2");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    for (const auto p : primes_) {
        if (p * p > m) break;
        if (m % p != 0) continue;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (m > 1) f.factors.push_back({m, 1});
    return f;
}

int mobius(const Factorization& f) {
    if (!f.squarefree()) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto& [p, e] : f.factors) {
        phi *= p - 1;
        for (unsigned k = 1; k < e; ++k) phi *= p;
    }
    return phi;
}

double log_integral(double x, double tol) {
    if (!(x >= 2.0)) throw DomainError("log_integral: x must be >= 2");
    if (!(tol > 0.0)) throw DomainError("log_integral: tol must be positive");
    return adaptive_gauss_legendre([](double t) { return 1.0 / std::log(t); }, 2.0, x, tol);
}

ArithmeticTable::ArithmeticTable(std::uint64_t max) : mu_(max + 1, 0), phi_(max + 1, 0) {
    if (max < 1) throw DomainError("ArithmeticTable: max must be >= 1");
    std::vector<std::uint64_t> primes;
    mu_[1] = 1;
    phi_[1] = 1;
    for (std::uint64_t i = 2; i <= max; ++i) {
        if (phi_[i] == 0) {
            primes.push_back(i);
            mu_[i] = -1;
            phi_[i] = i - 1;
        }
        for (const auto p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > max) break;
            if (i % p == 0) {
                mu_[ip] = 0;
                phi_[ip] = phi_[i] * p;
                break;
            }
            mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
            phi_[ip] = phi_[i] * (p - 1);
        }
    }
}

}  // namespace gblab
