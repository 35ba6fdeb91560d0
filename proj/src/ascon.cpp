#include "hqkd/ascon.hpp"

#include <bit>
#include <cstring>

namespace hqkd {

namespace {

constexpr std::uint64_t kIv = 0x80400c0600000000ULL;

inline std::uint64_t ror(std::uint64_t x, int n) { return std::rotr(x, n); }

void permute(std::uint64_t s[5], int rounds) {
    for (int r = 12 - rounds; r < 12; ++r) {
        s[2] ^= std::uint64_t(0xf0 - r * 0x10 + r * 0x1);
        s[0] ^= s[4];
        s[4] ^= s[3];
        s[2] ^= s[1];
        std::uint64_t t[5];
        for (int i = 0; i < 5; ++i) t[i] = ~s[i] & s[(i + 1) % 5];
        for (int i = 0; i < 5; ++i) s[i] ^= t[(i + 1) % 5];
        s[1] ^= s[0];
        s[0] ^= s[4];
        s[3] ^= s[2];
        s[2] = ~s[2];
        s[0] ^= ror(s[0], 19) ^ ror(s[0], 28);
        s[1] ^= ror(s[1], 61) ^ ror(s[1], 39);
        s[2] ^= ror(s[2], 1) ^ ror(s[2], 6);
        s[3] ^= ror(s[3], 10) ^ ror(s[3], 17);
        s[4] ^= ror(s[4], 7) ^ ror(s[4], 41);
    }
}

inline std::uint64_t load_be(const std::uint8_t* p, std::size_t len) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < len; ++i) x |= std::uint64_t(p[i]) << (56 - 8 * i);
    return x;
}

inline void store_be(std::uint64_t x, std::uint8_t* p, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) p[i] = std::uint8_t(x >> (56 - 8 * i));
}

// Partial block with 0x80 padding, as a big-endian word.
inline std::uint64_t pad_be(const std::uint8_t* p, std::size_t len) {
    return load_be(p, len) | (std::uint64_t(0x80) << (56 - 8 * len));
}

struct Ctx {
    std::uint64_t s[5];
    std::uint64_t k0, k1;

    Ctx(const std::array<std::uint8_t, 16>& key, const std::array<std::uint8_t, 16>& nonce,
        const std::vector<std::uint8_t>& ad) {
        k0 = load_be(key.data(), 8);
        k1 = load_be(key.data() + 8, 8);
        s[0] = kIv;
        s[1] = k0;
        s[2] = k1;
        s[3] = load_be(nonce.data(), 8);
        s[4] = load_be(nonce.data() + 8, 8);
        permute(s, 12);
        s[3] ^= k0;
        s[4] ^= k1;
        if (!ad.empty()) {
            std::size_t full = ad.size() / 8;
            for (std::size_t i = 0; i < full; ++i) {
                s[0] ^= load_be(ad.data() + 8 * i, 8);
                permute(s, 6);
            }
            s[0] ^= pad_be(ad.data() + 8 * full, ad.size() % 8);
            permute(s, 6);
        }
        s[4] ^= 1;
    }

    std::array<std::uint8_t, 16> tag() {
        s[1] ^= k0;
        s[2] ^= k1;
        permute(s, 12);
        std::array<std::uint8_t, 16> t;
        store_be(s[3] ^ k0, t.data(), 8);
        store_be(s[4] ^ k1, t.data() + 8, 8);
        return t;
    }
};

} // namespace

std::vector<std::uint8_t> ascon128_encrypt(const std::array<std::uint8_t, 16>& key,
                                           const std::array<std::uint8_t, 16>& nonce,
                                           const std::vector<std::uint8_t>& ad,
                                           const std::vector<std::uint8_t>& plaintext) {
    Ctx c(key, nonce, ad);
    std::vector<std::uint8_t> out(plaintext.size() + 16);
    std::size_t full = plaintext.size() / 8;
    for (std::size_t i = 0; i < full; ++i) {
        c.s[0] ^= load_be(plaintext.data() + 8 * i, 8);
        store_be(c.s[0], out.data() + 8 * i, 8);
        permute(c.s, 6);
    }
    std::size_t rem = plaintext.size() % 8;
    c.s[0] ^= pad_be(plaintext.data() + 8 * full, rem);
    store_be(c.s[0], out.data() + 8 * full, rem);
    auto t = c.tag();
    std::memcpy(out.data() + plaintext.size(), t.data(), 16);
    return out;
}

std::optional<std::vector<std::uint8_t>>
ascon128_decrypt(const std::array<std::uint8_t, 16>& key,
                 const std::array<std::uint8_t, 16>& nonce,
                 const std::vector<std::uint8_t>& ad,
                 const std::vector<std::uint8_t>& ct_and_tag) {
    if (ct_and_tag.size() < 16) return std::nullopt;
    std::size_t ct_len = ct_and_tag.size() - 16;
    Ctx c(key, nonce, ad);
    std::vector<std::uint8_t> pt(ct_len);
    std::size_t full = ct_len / 8;
    for (std::size_t i = 0; i < full; ++i) {
        std::uint64_t cb = load_be(ct_and_tag.data() + 8 * i, 8);
        store_be(c.s[0] ^ cb, pt.data() + 8 * i, 8);
        c.s[0] = cb;
        permute(c.s, 6);
    }
    std::size_t rem = ct_len % 8;
    std::uint64_t cb = load_be(ct_and_tag.data() + 8 * full, rem);
    store_be(c.s[0] ^ cb, pt.data() + 8 * full, rem);
    // Keep the capacity-side bits of s[0], splice in the ciphertext bits, pad.
    std::uint64_t keep_mask = rem ? (~std::uint64_t(0)) >> (8 * rem) : ~std::uint64_t(0);
    c.s[0] = cb | (c.s[0] & keep_mask);
    c.s[0] ^= std::uint64_t(0x80) << (56 - 8 * rem);
    auto t = c.tag();
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < 16; ++i) diff |= std::uint8_t(t[i] ^ ct_and_tag[ct_len + i]);
    if (diff != 0) return std::nullopt;
    return pt;
}

} // namespace hqkd
