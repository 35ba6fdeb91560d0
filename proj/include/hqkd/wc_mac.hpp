#pragma once

#include <cstdint>
#include <vector>

#include "hqkd/bits.hpp"

namespace hqkd {

// Wegman–Carter MAC: polynomial evaluation hash over GF(2^61) followed by a
// one-time pad of the hash value. Each tag consumes 122 fresh key bits
// (61-bit hash key + 61-bit pad).

inline constexpr std::size_t kMacTagBits = 61;
inline constexpr std::size_t kMacKeyBits = 2 * kMacTagBits;
inline constexpr std::uint64_t kGf61Mask = (std::uint64_t(1) << 61) - 1;

// Carry-less multiplication modulo x^61 + x^5 + x^2 + x + 1 (irreducible).
std::uint64_t gf61_mul(std::uint64_t a, std::uint64_t b);

// Hash alone (no pad): 7-byte message blocks plus a final length block,
// evaluated by Horner's rule at the 61-bit point `key`.
std::uint64_t gf61_poly_hash(std::uint64_t key, const std::vector<std::uint8_t>& message);

// key must be exactly 122 bits: hash key then pad. Returns the 61-bit tag.
std::uint64_t wc_mac(const BitString& key, const std::vector<std::uint8_t>& message);

// Constant-time recompute-and-compare.
bool wc_verify(const BitString& key, const std::vector<std::uint8_t>& message,
               std::uint64_t tag);

} // namespace hqkd
