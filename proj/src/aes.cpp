#include "hqkd/aes.hpp"

namespace hqkd {

namespace {

// S-box built from the field inverse + affine map rather than a transcribed
// table; the KAT suite pins the result.
struct Tables {
    std::uint8_t sbox[256];

    Tables() {
        std::uint8_t pow3[256], log3[256] = {};
        std::uint8_t p = 1;
        for (int i = 0; i < 255; ++i) {
            pow3[i] = p;
            log3[p] = std::uint8_t(i);
            // multiply by 3 = x + 1
            std::uint8_t x2 = std::uint8_t((p << 1) ^ ((p & 0x80) ? 0x1b : 0));
            p = std::uint8_t(x2 ^ p);
        }
        for (int b = 0; b < 256; ++b) {
            std::uint8_t inv = b ? pow3[(255 - log3[b]) % 255] : 0;
            std::uint8_t s = 0x63;
            for (int k = 0; k < 5; ++k)
                s ^= std::uint8_t((inv << k) | (inv >> (8 - k)));
            sbox[b] = s;
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

inline std::uint32_t sub_word(std::uint32_t w) {
    const auto& sb = tables().sbox;
    return std::uint32_t(sb[(w >> 24) & 0xff]) << 24 | std::uint32_t(sb[(w >> 16) & 0xff]) << 16 |
           std::uint32_t(sb[(w >> 8) & 0xff]) << 8 | std::uint32_t(sb[w & 0xff]);
}

inline std::uint8_t xtime(std::uint8_t a) {
    return std::uint8_t((a << 1) ^ ((a & 0x80) ? 0x1b : 0));
}

} // namespace

Aes256::Aes256(const std::array<std::uint8_t, 32>& key) {
    for (int i = 0; i < 8; ++i)
        rk_[i] = std::uint32_t(key[4 * i]) << 24 | std::uint32_t(key[4 * i + 1]) << 16 |
                 std::uint32_t(key[4 * i + 2]) << 8 | std::uint32_t(key[4 * i + 3]);
    std::uint8_t rcon = 1;
    for (int i = 8; i < 60; ++i) {
        std::uint32_t tmp = rk_[i - 1];
        if (i % 8 == 0) {
            tmp = sub_word((tmp << 8) | (tmp >> 24)) ^ (std::uint32_t(rcon) << 24);
            rcon = xtime(rcon);
        } else if (i % 8 == 4) {
            tmp = sub_word(tmp);
        }
        rk_[i] = rk_[i - 8] ^ tmp;
    }
}

void Aes256::encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
    const auto& sb = tables().sbox;
    std::uint8_t st[16];
    for (int i = 0; i < 16; ++i)
        st[i] = std::uint8_t(in[i] ^ (rk_[i / 4] >> (24 - 8 * (i % 4))));
    for (int round = 1; round <= 14; ++round) {
        // SubBytes + ShiftRows
        std::uint8_t b[16];
        for (int c = 0; c < 4; ++c)
            for (int r = 0; r < 4; ++r)
                b[4 * c + r] = sb[st[4 * ((c + r) % 4) + r]];
        if (round < 14) {
            // MixColumns
            for (int c = 0; c < 4; ++c) {
                std::uint8_t* p = b + 4 * c;
                std::uint8_t a0 = p[0], a1 = p[1], a2 = p[2], a3 = p[3];
                std::uint8_t x = std::uint8_t(a0 ^ a1 ^ a2 ^ a3);
                p[0] = std::uint8_t(a0 ^ x ^ xtime(std::uint8_t(a0 ^ a1)));
                p[1] = std::uint8_t(a1 ^ x ^ xtime(std::uint8_t(a1 ^ a2)));
                p[2] = std::uint8_t(a2 ^ x ^ xtime(std::uint8_t(a2 ^ a3)));
                p[3] = std::uint8_t(a3 ^ x ^ xtime(std::uint8_t(a3 ^ a0)));
            }
        }
        for (int i = 0; i < 16; ++i)
            st[i] = std::uint8_t(b[i] ^ (rk_[4 * round + i / 4] >> (24 - 8 * (i % 4))));
    }
    for (int i = 0; i < 16; ++i) out[i] = st[i];
}

} // namespace hqkd
