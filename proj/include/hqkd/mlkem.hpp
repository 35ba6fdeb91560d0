#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace hqkd {

// ML-KEM-512 (FIPS 203). Deterministic entry points take the seed material
// explicitly so sessions stay reproducible and the known-answer suite can pin
// every byte.

inline constexpr std::size_t kMlKemEkBytes = 800;
inline constexpr std::size_t kMlKemDkBytes = 1632;
inline constexpr std::size_t kMlKemCtBytes = 768;

struct MlKemKeyPair {
    std::vector<std::uint8_t> ek;
    std::vector<std::uint8_t> dk;
};

struct MlKemEncapsResult {
    std::vector<std::uint8_t> ct;
    std::array<std::uint8_t, 32> shared_secret;
};

MlKemKeyPair mlkem512_keygen(const std::array<std::uint8_t, 32>& d,
                             const std::array<std::uint8_t, 32>& z);

// Throws std::invalid_argument when ek is malformed (length or modulus check).
MlKemEncapsResult mlkem512_encaps(const std::vector<std::uint8_t>& ek,
                                  const std::array<std::uint8_t, 32>& m);

// Implicit rejection: a tampered ciphertext yields an unrelated secret rather
// than an error. Throws std::invalid_argument on malformed dk/ct lengths.
std::array<std::uint8_t, 32> mlkem512_decaps(const std::vector<std::uint8_t>& dk,
                                             const std::vector<std::uint8_t>& ct);

} // namespace hqkd
