#pragma once

#include <array>
#include <cstdint>

namespace hqkd {

// AES-256 block encryption (the only direction CTR mode needs).
class Aes256 {
public:
    explicit Aes256(const std::array<std::uint8_t, 32>& key);
    void encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;

private:
    std::array<std::uint32_t, 60> rk_{};
};

} // namespace hqkd
