#pragma once

#include <cstdint>
#include <vector>

namespace gblab::detail {

/// Cyclic convolution mod 29 * 2^57 + 1 (primitive root 3). Exact when every
/// true output coefficient is below the modulus.
class Ntt64 {
public:
    static constexpr std::uint64_t kModulus = 4179340454199820289ULL;
    static constexpr std::uint64_t kRoot = 3;
    static constexpr unsigned kMaxLog2 = 57;

    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kModulus);
    }
    static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
        const std::uint64_t s = a + b;  // no overflow: both < 2^62
        return s >= kModulus ? s - kModulus : s;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kModulus - b; }
    static std::uint64_t pow(std::uint64_t base, std::uint64_t exp);

    /// In-place transform; size must be a power of two.
    static void transform(std::vector<std::uint64_t>& a, bool inverse);

    /// a * a, cyclic of length a.size().
    static std::vector<std::uint64_t> self_convolve(std::vector<std::uint64_t> a);
};

}  // namespace gblab::detail
