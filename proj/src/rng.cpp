#include "qmc/rng.hpp"

#include "qmc/normal.hpp"

namespace qmc {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
}

RngStream RngStream::substream(std::uint64_t tag) const {
    std::uint64_t x = seed_ ^ (tag * 0x9e3779b97f4a7c15ULL + 0x52dce729ULL);
    return RngStream(splitmix64(x));
}

RngStream RngStream::substream(std::string_view label) const {
    // FNV-1a over the label, then derive as for integer tags.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) h = (h ^ ch) * 0x100000001b3ULL;
    return substream(h);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::next_open() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

std::uint32_t RngStream::next_below(std::uint32_t n) {
    // Lemire's multiply-shift with rejection; exact uniformity, deterministic.
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * n;
    std::uint32_t l = static_cast<std::uint32_t>(m);
    if (l < n) {
        const std::uint32_t floor = (0u - n) % n;
        while (l < floor) {
            x = next_u64() >> 32;
            m = x * n;
            l = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

double RngStream::next_normal() { return inverse_normal_cdf(next_open()); }

} // namespace qmc
