#pragma once

#include "hqkd/bits.hpp"

namespace hqkd {

// Fixed 128/120/8 partition of the 256-bit KEM shared secret: cipher key,
// base nonce v', and the reserved counter byte.
struct SplitSecret {
    BitString pqc_key;            // bits [0, 128)
    BitString base_nonce_v_prime; // bits [128, 248)
    BitString counter_seed;       // bits [248, 256)
};

// Throws std::invalid_argument unless secret is exactly 256 bits.
SplitSecret split_shared_secret(const BitString& secret);

// Partition identity: re-concatenation of the three fields.
BitString join_split_secret(const SplitSecret& split);

} // namespace hqkd
