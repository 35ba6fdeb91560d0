#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hqkd/bits.hpp"
#include "hqkd/instruction_seq.hpp"
#include "hqkd/keysplit.hpp"

namespace hqkd {

class AuthenticationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientKey : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-cycle counter-block inputs: a fresh random 128-bit base nonce v, a
// 120-bit cycle-unique session id, and the 8-bit per-step counter i.
struct CounterBlock {
    std::array<std::uint8_t, 16> base_nonce_v{};
    std::array<std::uint8_t, 15> sid{};
    std::uint8_t counter_i = 0;
};

// block = v XOR (sid || i). Uniqueness per (sid, i) carries over since v is
// fixed within a cycle.
std::array<std::uint8_t, 16> build_counter_block(const std::array<std::uint8_t, 16>& v,
                                                 const std::array<std::uint8_t, 15>& sid,
                                                 std::uint8_t i);

// Counter-mode keystream XOR. Chunk c of the data (16 bytes each) uses the
// block for counter value i+c, i.e. the low 8-bit field advances once per
// chunk. Throws when the data needs more than 2^8 - i chunks.
std::vector<std::uint8_t> aes_ctr_step(const std::vector<std::uint8_t>& data,
                                       const std::array<std::uint8_t, 32>& key,
                                       const CounterBlock& block);

// Ascon AEAD pass keyed by the KEM-derived 128-bit key; nonce = v'(120)||i(8).
// Output carries the 128-bit tag inline.
std::vector<std::uint8_t> ascon_step(const std::vector<std::uint8_t>& data,
                                     const std::array<std::uint8_t, 16>& key,
                                     const BitString& v_prime, std::uint8_t i,
                                     const std::vector<std::uint8_t>& ad);

// Inverse pass; throws AuthenticationFailure when the tag does not verify.
std::vector<std::uint8_t> ascon_step_decrypt(const std::vector<std::uint8_t>& ct_and_tag,
                                             const std::array<std::uint8_t, 16>& key,
                                             const BitString& v_prime, std::uint8_t i,
                                             const std::vector<std::uint8_t>& ad);

// Bytewise XOR with the leading bits of the key; throws InsufficientKey when
// the key is shorter than the data.
std::vector<std::uint8_t> otp_step(const std::vector<std::uint8_t>& data, const BitString& key);

// Keys for one cascade: one QKD pad per OTP step, the fixed 256-bit AES key,
// and the KEM-derived split.
struct KeyBundle {
    std::vector<BitString> qkd_keys;
    BitString aes_key;  // 256 bits
    SplitSecret split;
};

struct CipherEnvelope {
    std::vector<std::uint8_t> final_ct;
    std::array<std::uint8_t, 15> sid{};
    std::array<std::uint8_t, 16> base_nonce_v{};
    std::vector<std::uint8_t> associated_data;
    std::uint8_t pad_size = 0;
};

// Applies the cascade in IS order; the step counter i starts at 0 and
// advances once per step regardless of scheme. The message is padded to a
// 16-byte multiple first (length byte repeated), and the trailer fields are
// recorded exactly once.
CipherEnvelope he_encrypt(const InstructionSequence& is, const std::vector<std::uint8_t>& m,
                          const KeyBundle& keys, const std::array<std::uint8_t, 15>& sid,
                          const std::array<std::uint8_t, 16>& v,
                          const std::vector<std::uint8_t>& ad);

// Reverse walk; throws AuthenticationFailure / InsufficientKey / PadError.
std::vector<std::uint8_t> he_decrypt(const CipherEnvelope& env, const InstructionSequence& is,
                                     const KeyBundle& keys);

// Wire layout (bit-exact):
// [4B BE ct length][ct][15B sid][16B v][2B BE ad length][ad][1B pad_size]
std::vector<std::uint8_t> envelope_serialize(const CipherEnvelope& env);
CipherEnvelope envelope_parse(const std::vector<std::uint8_t>& wire);

// Ciphertext-growth model of the predecessor design: every PKE layer maps
// each 256-bit block to 6144 bits; AES layers append a 128-bit nonce; OTP
// leaves the size unchanged. The layer schedule is the canonical (rank-0)
// instruction sequence with PKE standing where the cascade uses the AEAD.
struct LegacySizeModel {
    std::vector<std::uint64_t> layer_bits;  // size after each step
    std::uint64_t final_bits = 0;
};

LegacySizeModel legacy_size_model(unsigned n_obs, std::uint64_t msg_bits);

// Exact envelope ciphertext size (bits) of the cascade for comparison:
// padded message plus one 128-bit tag per AEAD step.
std::uint64_t plus_envelope_bits(unsigned n_obs, std::uint64_t msg_bits);

} // namespace hqkd
