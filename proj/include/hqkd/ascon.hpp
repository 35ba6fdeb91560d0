#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace hqkd {

// Ascon-128 AEAD (320-bit state, 12/6 rounds, 64-bit rate). Output is
// ciphertext with the 128-bit tag appended.
std::vector<std::uint8_t> ascon128_encrypt(const std::array<std::uint8_t, 16>& key,
                                           const std::array<std::uint8_t, 16>& nonce,
                                           const std::vector<std::uint8_t>& ad,
                                           const std::vector<std::uint8_t>& plaintext);

// Returns the plaintext, or nullopt when the tag does not verify.
std::optional<std::vector<std::uint8_t>>
ascon128_decrypt(const std::array<std::uint8_t, 16>& key,
                 const std::array<std::uint8_t, 16>& nonce,
                 const std::vector<std::uint8_t>& ad,
                 const std::vector<std::uint8_t>& ct_and_tag);

} // namespace hqkd
