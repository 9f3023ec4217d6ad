#include <array>
#include <fstream>
#include <iterator>
#include <string>

#include "gblab/errors.hpp"
#include "gblab/primes.hpp"

namespace gblab {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'B', 'S', 'V'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kHeaderBytes = kMagic.size() + 1 + 8;
constexpr std::uint64_t kSpotCheckLimit = 10'000;

std::uint64_t bitmap_bytes(std::uint64_t limit) { return ((limit + 1) / 2 + 7) / 8; }

}  // namespace

void write_sieve_cache(const PrimeSieve& sieve, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open sieve cache for writing: " + path.string());

    std::string buf;
    const std::uint64_t nbytes = bitmap_bytes(sieve.limit());
    buf.reserve(kHeaderBytes + nbytes);
    buf.append(kMagic.data(), kMagic.size());
    buf.push_back(static_cast<char>(kVersion));
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((sieve.limit() >> (8 * i)) & 0xff));
    const auto words = sieve.odd_bitmap();
    for (std::uint64_t b = 0; b < nbytes; ++b)
        buf.push_back(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff));

    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw CacheError("failed writing sieve cache: " + path.string());
}

PrimeSieve read_sieve_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open sieve cache: " + path.string());
    const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

    if (data.size() < kHeaderBytes || !std::equal(kMagic.begin(), kMagic.end(), data.begin()))
        throw CacheError("sieve cache: bad magic in " + path.string());
    if (static_cast<std::uint8_t>(data[4]) != kVersion)
        throw CacheError("sieve cache: unsupported version in " + path.string());

    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data[5 + i])) << (8 * i);
    if (limit < 2) throw CacheError("sieve cache: limit < 2");
    const std::uint64_t nbytes = bitmap_bytes(limit);
    if (data.size() - kHeaderBytes != nbytes)
        throw CacheError("sieve cache: bitmap length does not match limit " + std::to_string(limit));

    std::vector<std::uint64_t> words((nbytes + 7) / 8, 0);
    for (std::uint64_t b = 0; b < nbytes; ++b)
        words[b / 8] |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data[kHeaderBytes + b]))
                        << (8 * (b % 8));

    PrimeSieve loaded = [&] {
        try {
            return PrimeSieve::from_odd_bitmap(limit, std::move(words));
        } catch (const DomainError& e) {
            throw CacheError(std::string("sieve cache: ") + e.what());
        }
    }();

    const std::uint64_t check = std::min(limit, kSpotCheckLimit);
    const PrimeSieve fresh = PrimeSieve::build(check);
    const auto fresh_words = fresh.odd_bitmap();
    const auto loaded_words = loaded.odd_bitmap();
    const std::uint64_t full_words = fresh.odd_slots() / 64;
    bool prefix_ok = std::equal(fresh_words.begin(), fresh_words.begin() + full_words, loaded_words.begin());
    if (const std::uint64_t rem = fresh.odd_slots() % 64; prefix_ok && rem != 0) {
        const std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
        prefix_ok = (fresh_words[full_words] & mask) == (loaded_words[full_words] & mask);
    }
    if (!prefix_ok || loaded.prime_count(check) != fresh.prime_count(check))
        throw CacheError("sieve cache: spot check of pi(" + std::to_string(check) + ") failed");
    return loaded;
}

}  // namespace gblab
