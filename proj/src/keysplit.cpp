#include "hqkd/keysplit.hpp"

#include <stdexcept>

namespace hqkd {

SplitSecret split_shared_secret(const BitString& secret) {
    if (secret.size() != 256)
        throw std::invalid_argument("split_shared_secret: secret must be 256 bits");
    SplitSecret s;
    s.pqc_key = secret.slice(0, 128);
    s.base_nonce_v_prime = secret.slice(128, 120);
    s.counter_seed = secret.slice(248, 8);
    return s;
}

BitString join_split_secret(const SplitSecret& split) {
    BitString out = split.pqc_key;
    out.append(split.base_nonce_v_prime);
    out.append(split.counter_seed);
    return out;
}

} // namespace hqkd
