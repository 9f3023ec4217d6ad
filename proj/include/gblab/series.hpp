#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gblab/primes.hpp"

namespace gblab {

enum class SeriesTag { PaperClosed, PaperDivisor, SumOverQ, ProductOverP, HardyLittlewood };

/// Coefficient of the modulus-q term.
///   MuAsWritten: mu(q) * c_q(N) / phi(q)^2
///   MuSquared:   mu(q)^2 * c_q(N) / phi(q)^2
/// MuAsWritten makes 1 + G(2) vanish for every even N; MuSquared is the
/// coefficient obtained from squaring mu(q) J(z) / phi(q).
enum class CoefficientMode { MuAsWritten, MuSquared };

struct SeriesVariant {
    SeriesTag tag = SeriesTag::HardyLittlewood;
    CoefficientMode mode = CoefficientMode::MuSquared;  // ignored by the closed forms

    bool uses_mode() const noexcept { return tag == SeriesTag::SumOverQ || tag == SeriesTag::ProductOverP; }

    /// "PAPER_CLOSED", "SUM_OVER_Q(MU_SQUARED)", ...
    std::string label() const;

    friend bool operator==(const SeriesVariant& a, const SeriesVariant& b) {
        return a.tag == b.tag && (!a.uses_mode() || a.mode == b.mode);
    }
};

std::string_view tag_name(SeriesTag tag);
std::string_view mode_name(CoefficientMode mode);
std::optional<SeriesTag> parse_tag(std::string_view text);
/// Accepts "mu"/"mu2" as well as the enum spellings.
std::optional<CoefficientMode> parse_mode(std::string_view text);

/// One evaluation of a singular series. truncation is the prime bound P or
/// modulus bound Q actually used; tail_note is the magnitude of the last
/// nonzero term or factor deviation included, as a convergence indicator.
struct SingularSeriesValue {
    std::uint64_t n = 0;
    SeriesVariant variant;
    double value = 0.0;
    std::uint64_t truncation = 0;
    double tail_note = 0.0;
};

inline constexpr std::uint64_t kDefaultTruncation = 100'000;

/// c_q(n) = sum over 1 <= a <= q, gcd(a, q) = 1 of e^{2 pi i a n / q}, via
/// mu(q/g) phi(q) / phi(q/g) with g = gcd(q, n).
std::int64_t ramanujan_sum(const PrimeSieve& sieve, std::uint64_t q, std::int64_t n);

double g_of_q(const PrimeSieve& sieve, std::uint64_t q, std::int64_t n, CoefficientMode mode);

/// Same coefficient from precomputed mu and phi; q <= table.max().
double g_of_q(const ArithmeticTable& table, std::uint64_t q, std::int64_t n, CoefficientMode mode);

/// sum_{q <= Q} G(q).
SingularSeriesValue series_sum_over_q(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_q,
                                      CoefficientMode mode);
SingularSeriesValue series_sum_over_q(const ArithmeticTable& table, std::uint64_t n, std::uint64_t max_q,
                                      CoefficientMode mode);

/// prod_{p <= P} (1 + G(p)). Any n >= 1; a zero factor gives exactly 0.
SingularSeriesValue series_product_over_p(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_p,
                                          CoefficientMode mode);

/// 3 * prod_{p <= P, p !| n} (1 + 1/p^2) * prod_{p <= P, p | n} (1 - 2/(p^2 + 1)).
SingularSeriesValue series_paper_closed(const PrimeSieve& sieve, std::uint64_t n, std::uint64_t max_p);

/// prod_{p | n} p / (p - 1).
SingularSeriesValue series_paper_divisor(const Factorization& n);

/// prod_{2 < p <= P} (1 - 1/(p-1)^2).
double twin_prime_constant(const PrimeSieve& sieve, std::uint64_t max_p);

/// 2 C2(P) prod_{p | n, p > 2} (p - 1)/(p - 2).
SingularSeriesValue series_hardy_littlewood(const PrimeSieve& sieve, const Factorization& n, std::uint64_t max_p);

/// Dispatches on variant.tag; max_p feeds the product forms, max_q the q-sum.
SingularSeriesValue evaluate_series(const PrimeSieve& sieve, std::uint64_t n, const SeriesVariant& variant,
                                    std::uint64_t max_p = kDefaultTruncation,
                                    std::uint64_t max_q = kDefaultTruncation);

}  // namespace gblab
