#include "gblab/series.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "gblab/errors.hpp"
#include "gblab/parallel.hpp"

namespace gblab {

namespace {

constexpr std::size_t kLogSpaceThreshold = 10'000;

/// Multiplies factors given as 1 + delta in ascending prime order. Above
/// kLogSpaceThreshold factors the product is carried as a sum of logarithms.
class ProductAccumulator {
public:
    explicit ProductAccumulator(std::size_t expected_factors) : log_space_(expected_factors > kLogSpaceThreshold) {
        if (log_space_) logs_.reserve(expected_factors);
    }

    void multiply_by_one_plus(double delta) {
        last_delta_ = delta;
        const double factor = 1.0 + delta;
        if (!log_space_) {
            direct_ *= factor;
            return;
        }
        if (factor == 0.0) {
            zero_ = true;
            return;
        }
        if (factor < 0.0) negative_ = !negative_;
        logs_.push_back(factor > 0.0 ? std::log1p(delta) : std::log(-factor));
    }

    double value() const {
        if (!log_space_) return direct_;
        if (zero_) return 0.0;
        const double magnitude = std::exp(pairwise_sum<double>(logs_));
        return negative_ ? -magnitude : magnitude;
    }

    double last_delta() const noexcept { return last_delta_; }

private:
    bool log_space_;
    double direct_ = 1.0;
    bool zero_ = false;
    bool negative_ = false;
    double last_delta_ = 0.0;
    std::vector<double> logs_;
};

std::uint64_t abs_u64(std::int64_t n) {
    return n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
}

std::span<const std::uint64_t> primes_up_to(const PrimeSieve& sieve, std::uint64_t bound, const char* what) {
    if (bound > sieve.limit())
        throw DomainError(std::string(what) + ": truncation " + std::to_string(bound) + " exceeds sieve limit " +
                          std::to_string(sieve.limit()));
    const auto primes = sieve.primes();
    return primes.first(static_cast<std::size_t>(std::ranges::upper_bound(primes, bound) - primes.begin()));
}

void require_even(std::uint64_t n, const char* what) {
    if (n < 2 || n % 2 != 0) throw DomainError(std::string(what) + ": n must be even and >= 2");
}

double coefficient(int mu, std::int64_t ramanujan, std::uint64_t phi, CoefficientMode mode) {
    if (mu == 0) return 0.0;
    const double sign = mode == CoefficientMode::MuAsWritten ? static_cast<double>(mu) : 1.0;
    const double phi_d = static_cast<double>(phi);
    return sign * static_cast<double>(ramanujan) / (phi_d * phi_d);
}

/// c_p(n) for prime p: p - 1 when p | n, else -1.
double prime_coefficient(std::uint64_t p, std::uint64_t n, CoefficientMode mode) {
    const double pm1 = static_cast<double>(p - 1);
    const double c = n % p == 0 ? pm1 : -1.0;
    const double sign = mode == CoefficientMode::MuAsWritten ? -1.0 : 1.0;
    return sign * c / (pm1 * pm1);
}

}  // namespace

std::string_view tag_name(SeriesTag tag) {
    switch (tag) {
        case SeriesTag::PaperClosed: return "PAPER_CLOSED";
        case SeriesTag::PaperDivisor: return "PAPER_DIVISOR";
        case SeriesTag::SumOverQ: return "SUM_OVER_Q";
        case SeriesTag::ProductOverP: return "PRODUCT_OVER_P";
        case SeriesTag::HardyLittlewood: return "HARDY_LITTLEWOOD";
    }
    return "?";
}

std::string_view mode_name(CoefficientMode mode) {
    return mode == CoefficientMode::MuAsWritten ? "MU_AS_WRITTEN" : "MU_SQUARED";
}

std::optional<SeriesTag> parse_tag(std::string_view text) {
    for (auto tag : {SeriesTag::PaperClosed, SeriesTag::PaperDivisor, SeriesTag::SumOverQ, SeriesTag::ProductOverP,
                     SeriesTag::HardyLittlewood})
        if (tag_name(tag) == text) return tag;
    return std::nullopt;
}

std::optional<CoefficientMode> parse_mode(std::string_view text) {
    if (text == "mu" || text == "MU_AS_WRITTEN") return CoefficientMode::MuAsWritten;
    if (text == "mu2" || text == "MU_SQUARED") return CoefficientMode::MuSquared;
    return std::nullopt;
}

std::string SeriesVariant::label() const {
    std::string out(tag_name(tag));
    if (uses_mode()) out += "(" + std::string(mode_name(mode)) + ")";
    return out;
}

std::int64_t ramanujan_sum(const PrimeSieve& sieve, std::uint64_t q, std::int64_t n) {
    if (q < 1) throw DomainError("ramanujan_sum: q must be >= 1");
    const std::uint64_t g = std::gcd(q, abs_u64(n));
    const std::uint64_t m = q / g;
    const auto fm = sieve.factorize(m);
    const int mu = mobius(fm);
    if (mu == 0) return 0;
    return mu * static_cast<std::int64_t>(euler_phi(sieve.factorize(q)) / euler_phi(fm));
}

double g_of_q(const PrimeSieve& sieve, std::uint64_t q, std::int64_t n, CoefficientMode mode) {
    if (q < 1) throw DomainError("g_of_q: q must be >= 1");
    const auto fq = sieve.factorize(q);
    const int mu = mobius(fq);
    if (mu == 0) return 0.0;
    return coefficient(mu, ramanujan_sum(sieve, q, n), euler_phi(fq), mode);
}

double g_of_q(const ArithmeticTable& table, std::uint64_t q, std::int64_t n, CoefficientMode mode) {
    if (q < 1) throw DomainError("g_of_q: q must be >= 1");
    if (q > table.max()) throw DomainError("g_of_q: q exceeds arithmetic table");
    const int mu = table.mobius(q);
    if (mu == 0) return 0.0;
    const std::uint64_t g = std::gcd(q, abs_u64(n));
    const std::uint64_t m = q / g;
    const std::int64_t c = table.mobius(m) * static_cast<std::int64_t>(table.phi(q) / table.phi(m));
    return coefficient(mu, c, table.phi(q), mode);
}

SingularSeriesValue series_sum_over_q(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_q,
                                      CoefficientMode mode) {
    (void)sieve;  // a linear sieve up to Q is cheaper than factorizing each q
    if (max_q < 1) throw DomainError("series_sum_over_q: Q must be >= 1");
    return series_sum_over_q(ArithmeticTable(max_q), n, max_q, mode);
}

SingularSeriesValue series_sum_over_q(const ArithmeticTable& table, std::uint64_t n, std::uint64_t max_q,
                                      CoefficientMode mode) {
    if (max_q < 1) throw DomainError("series_sum_over_q: Q must be >= 1");
    if (max_q > table.max()) throw DomainError("series_sum_over_q: Q exceeds arithmetic table");
    std::vector<double> terms(max_q);
    double last_nonzero = 0.0;
    for (std::uint64_t q = 1; q <= max_q; ++q) {
        terms[q - 1] = g_of_q(table, q, static_cast<std::int64_t>(n), mode);
        if (terms[q - 1] != 0.0) last_nonzero = terms[q - 1];
    }
    return {n, {SeriesTag::SumOverQ, mode}, pairwise_sum<double>(terms), max_q, std::abs(last_nonzero)};
}

SingularSeriesValue series_product_over_p(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_p,
                                          CoefficientMode mode) {
    if (max_p < 2) throw DomainError("series_product_over_p: P must be >= 2");
    if (n < 1) throw DomainError("series_product_over_p: n must be >= 1");
    const auto primes = primes_up_to(sieve, max_p, "series_product_over_p");
    ProductAccumulator acc(primes.size());
    for (const auto p : primes) acc.multiply_by_one_plus(prime_coefficient(p, n, mode));
    return {n, {SeriesTag::ProductOverP, mode}, acc.value(), max_p, std::abs(acc.last_delta())};
}

SingularSeriesValue series_paper_closed(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_p) {
    require_even(n, "series_paper_closed");
    if (max_p < 2) throw DomainError("series_paper_closed: P must be >= 2");
    const auto primes = primes_up_to(sieve, max_p, "series_paper_closed");
    ProductAccumulator acc(primes.size());
    for (const auto p : primes) {
        const double p2 = static_cast<double>(p) * static_cast<double>(p);
        acc.multiply_by_one_plus(n % p == 0 ? -2.0 / (p2 + 1.0) : 1.0 / p2);
    }
    return {n, {SeriesTag::PaperClosed}, 3.0 * acc.value(), max_p, std::abs(acc.last_delta())};
}

SingularSeriesValue series_paper_divisor(const Factorization& f) {
    require_even(f.n, "series_paper_divisor");
    double value = 1.0;
    for (const auto& pp : f.factors) value *= static_cast<double>(pp.prime) / static_cast<double>(pp.prime - 1);
    return {f.n, {SeriesTag::PaperDivisor}, value, f.factors.back().prime, 0.0};
}

double twin_prime_constant(const PrimeSieve& sieve, std::uint64_t max_p) {
    if (max_p < 3) throw DomainError("twin_prime_constant: P must be >= 3");
    const auto primes = primes_up_to(sieve, max_p, "twin_prime_constant").subspan(1);
    ProductAccumulator acc(primes.size());
    for (const auto p : primes) {
        const double pm1 = static_cast<double>(p - 1);
        acc.multiply_by_one_plus(-1.0 / (pm1 * pm1));
    }
    return acc.value();
}

SingularSeriesValue series_hardy_littlewood(const PrimeSieve& sieve, const Factorization& f, std::uint64_t max_p) {
    require_even(f.n, "series_hardy_littlewood");
    if (max_p < 3) throw DomainError("series_hardy_littlewood: P must be >= 3");
    double value = 2.0 * twin_prime_constant(sieve, max_p);
    for (const auto& pp : f.factors)
        if (pp.prime > 2) value *= static_cast<double>(pp.prime - 1) / static_cast<double>(pp.prime - 2);
    const auto primes = primes_up_to(sieve, max_p, "series_hardy_littlewood");
    const double last = static_cast<double>(primes.back() - 1);
    return {f.n, {SeriesTag::HardyLittlewood}, value, max_p, 1.0 / (last * last)};
}

SingularSeriesValue evaluate_series(const PrimeSieve& sieve, std::uint64_t n, const SeriesVariant& variant,
                                    std::uint64_t max_p, std::uint64_t max_q) {
    switch (variant.tag) {
        case SeriesTag::PaperClosed: return series_paper_closed(sieve, n, max_p);
        case SeriesTag::PaperDivisor: return series_paper_divisor(sieve.factorize(n));
        case SeriesTag::SumOverQ: return series_sum_over_q(sieve, n, max_q, variant.mode);
        case SeriesTag::ProductOverP: return series_product_over_p(sieve, n, max_p, variant.mode);
        case SeriesTag::HardyLittlewood: return series_hardy_littlewood(sieve, sieve.factorize(n), max_p);
    }
    throw DomainError("evaluate_series: unknown variant");
}

}  // namespace gblab
