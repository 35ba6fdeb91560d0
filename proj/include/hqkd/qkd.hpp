#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqkd/bits.hpp"
#include "hqkd/bounds.hpp"
#include "hqkd/ldpc.hpp"
#include "hqkd/optimizer.hpp"

namespace hqkd {

inline constexpr double kQberAbortThreshold = 0.11;

// Stand-in for the optical layer: correlated sifted keys on a binary
// symmetric channel at the target error rate.
struct RawKeyPair {
    BitString alice_bits;
    BitString bob_bits;
    double true_qber = 0.0;
    std::uint64_t rng_seed = 0;
};

RawKeyPair simulate_raw_keys(std::size_t n_total, double qber, std::uint64_t seed);

struct SampleEstimate {
    double alpha = 0.0;                           // observed QBER on the sample
    std::vector<std::size_t> sample_indices;      // sorted, drawn without replacement
    std::vector<std::size_t> remainder_indices;   // sorted complement
    bool abort_qber = false;                      // alpha above the 0.11 threshold
};

// Draws n positions without replacement (seeded), compares the two strings
// there, and reports the mismatch fraction. The estimate alpha doubles as the
// error-rate parameter delta for everything downstream.
SampleEstimate sample_and_estimate(const RawKeyPair& pair, std::size_t n, std::uint64_t seed);

// t-bit 2-universal verification hash: polynomial evaluation over GF(2^61)
// keyed by the public seed, truncated to t bits. t must be at most 61.
std::uint64_t verify_hash(const BitString& bits, unsigned t, std::uint64_t seed);

bool verify_correction(const BitString& alice_bits, const BitString& bob_bits_corrected,
                       unsigned t, std::uint64_t hash_seed);

// Seed-defined l x m Toeplitz matrix over GF(2) applied to the input
// (m = input length; seed supplies the l+m-1 defining diagonals).
BitString toeplitz_hash(const BitString& input, std::size_t l, const BitString& seed);

// Toeplitz extraction of the final key. Throws when l exceeds the input
// length or the seed has the wrong size.
BitString privacy_amplify(const BitString& key, std::size_t l, const BitString& seed);

enum class SessionStatus {
    completed,
    abort_qber,
    abort_ec_detectable,
    abort_verify,
    abort_infeasible,
};

std::string to_string(SessionStatus s);

struct SessionOutcome {
    SessionStatus status = SessionStatus::abort_infeasible;
    double alpha = 0.0;
    BitString final_key;      // released key; empty unless completed
    BitString final_key_bob;  // receiver-side reconstruction (equal on completion)
    OptimizationResult report;
};

// Full post-processing pass: sample -> estimate (delta := alpha) -> optimize
// key length -> syndrome decode -> verify -> privacy-amplify. All public
// coins (sampling, hash seed, extractor seed) derive from session_seed.
SessionOutcome run_qkd_session(const SecurityParams& params, const RawKeyPair& pair,
                               const OptimizerConfig& opt_cfg, const LdpcCode& code,
                               std::uint64_t session_seed, std::size_t ec_max_iters = 200);

} // namespace hqkd
