#include "hqkd/wc_mac.hpp"

#include <stdexcept>

namespace hqkd {

namespace {

using u128 = unsigned __int128;

// x^61 = x^5 + x^2 + x + 1; fold the high part down twice (the second fold
// input is at most 5 bits wide, so it cannot overflow again).
inline std::uint64_t reduce(u128 p) {
    std::uint64_t lo = std::uint64_t(p) & kGf61Mask;
    std::uint64_t hi = std::uint64_t(p >> 61);
    u128 f = (u128(hi) << 5) ^ (u128(hi) << 2) ^ (u128(hi) << 1) ^ hi;
    std::uint64_t lo2 = std::uint64_t(f) & kGf61Mask;
    std::uint64_t hi2 = std::uint64_t(f >> 61);
    std::uint64_t f2 = (hi2 << 5) ^ (hi2 << 2) ^ (hi2 << 1) ^ hi2;
    return lo ^ lo2 ^ f2;
}

} // namespace

std::uint64_t gf61_mul(std::uint64_t a, std::uint64_t b) {
    u128 p = 0;
    for (int i = 0; i < 61; ++i)
        if ((b >> i) & 1) p ^= u128(a) << i;
    return reduce(p);
}

std::uint64_t gf61_poly_hash(std::uint64_t key, const std::vector<std::uint8_t>& message) {
    key &= kGf61Mask;
    std::uint64_t h = 0;
    std::size_t full = message.size() / 7;
    for (std::size_t i = 0; i < full; ++i) {
        std::uint64_t block = 0;
        for (int j = 0; j < 7; ++j) block = (block << 8) | message[7 * i + j];
        h = gf61_mul(h ^ block, key);
    }
    std::size_t rem = message.size() % 7;
    if (rem) {
        std::uint64_t block = 0;
        for (std::size_t j = 0; j < rem; ++j) block = (block << 8) | message[7 * full + j];
        h = gf61_mul(h ^ block, key);
    }
    // Length block prevents extension/truncation collisions across sizes.
    h = gf61_mul(h ^ (std::uint64_t(message.size()) & kGf61Mask), key);
    return h;
}

std::uint64_t wc_mac(const BitString& key, const std::vector<std::uint8_t>& message) {
    if (key.size() != kMacKeyBits)
        throw std::invalid_argument("wc_mac: key must be 122 bits");
    std::uint64_t hash_key = key.slice(0, kMacTagBits).to_u64();
    std::uint64_t pad = key.slice(kMacTagBits, kMacTagBits).to_u64();
    return gf61_poly_hash(hash_key, message) ^ pad;
}

bool wc_verify(const BitString& key, const std::vector<std::uint8_t>& message,
               std::uint64_t tag) {
    std::uint64_t expect = wc_mac(key, message);
    std::uint64_t diff = (expect ^ tag) & kGf61Mask;
    // Constant-time fold of the difference bits.
    diff |= diff >> 32;
    diff |= diff >> 16;
    diff |= diff >> 8;
    diff |= diff >> 4;
    diff |= diff >> 2;
    diff |= diff >> 1;
    return (diff & 1) == 0;
}

} // namespace hqkd
