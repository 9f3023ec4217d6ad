#include "ntt.hpp"

#include <bit>
#include <utility>

#include "gblab/errors.hpp"

namespace gblab::detail {

std::uint64_t Ntt64::pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    while (exp) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

void Ntt64::transform(std::vector<std::uint64_t>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxLog2))
        throw DomainError("ntt: size must be a power of two up to 2^57");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = pow(kRoot, (kModulus - 1) / len);
        if (inverse) w = pow(w, kModulus - 2);
        std::vector<std::uint64_t> twiddle(len / 2);
        twiddle[0] = 1;
        for (std::size_t k = 1; k < len / 2; ++k) twiddle[k] = mul(twiddle[k - 1], w);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::uint64_t u = a[i + k];
                const std::uint64_t v = mul(a[i + k + len / 2], twiddle[k]);
                a[i + k] = add(u, v);
                a[i + k + len / 2] = sub(u, v);
            }
        }
    }
    if (inverse) {
        const std::uint64_t n_inv = pow(n % kModulus, kModulus - 2);
        for (auto& x : a) x = mul(x, n_inv);
    }
}

std::vector<std::uint64_t> Ntt64::self_convolve(std::vector<std::uint64_t> a) {
    transform(a, false);
    for (auto& x : a) x = mul(x, x);
    transform(a, true);
    return a;
}

}  // namespace gblab::detail
