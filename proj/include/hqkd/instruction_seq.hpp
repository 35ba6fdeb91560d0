#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqkd/bits.hpp"

namespace hqkd {

// Cipher cascade steps, in the canonical (alphabetical) tag order used for
// lexicographic ranking: AES < ASCON < OTP.
enum class Scheme : std::uint8_t { AES = 0, ASCON = 1, OTP = 2 };

std::string to_string(Scheme s);

// An instruction sequence for security strength n_obs: 3*gamma steps with
// gamma = ceil(n_obs/2) of each scheme and no two adjacent steps equal. The
// family size always covers the 2^n_obs index space (checked at unrank).
struct InstructionSequence {
    std::vector<Scheme> steps;
    unsigned n_obs = 0;
    unsigned gamma = 0;

    std::string tag_string() const;  // e.g. "OTP>AES>ASCON"
    void validate() const;           // balance + adjacency invariants
};

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact count of balanced no-adjacent-repeat words for this n_obs.
// n_obs = 1 is outside the domain.
std::uint64_t count_valid(unsigned n_obs);

// Canonical lexicographic unranking over the valid family. Requires
// index < 2^n_obs and 2^n_obs <= count_valid(n_obs).
InstructionSequence unrank_is(std::uint64_t index, unsigned n_obs);

// Inverse of unrank_is over the full valid family (not just the 2^n_obs
// prefix).
std::uint64_t rank_is(const InstructionSequence& is);

// One-time-pad encryption of the index as an n_obs-bit string; XOR again to
// decrypt.
BitString encrypt_is(std::uint64_t index, const BitString& pad);
std::uint64_t decrypt_is(const BitString& pi, const BitString& pad);

} // namespace hqkd
