#include "hqkd/qkd.hpp"

#include <algorithm>
#include <stdexcept>

#include "hqkd/rng.hpp"
#include "hqkd/wc_mac.hpp"

namespace hqkd {

RawKeyPair simulate_raw_keys(std::size_t n_total, double qber, std::uint64_t seed) {
    if (qber < 0.0 || qber > 0.5)
        throw std::invalid_argument("simulate_raw_keys: qber must lie in [0, 0.5]");
    Rng rng(seed);
    RawKeyPair pair;
    pair.true_qber = qber;
    pair.rng_seed = seed;
    pair.alice_bits = BitString(n_total);
    pair.bob_bits = BitString(n_total);
    for (std::size_t i = 0; i < n_total; ++i) {
        bool a = rng.bit();
        pair.alice_bits.set(i, a);
        pair.bob_bits.set(i, rng.uniform01() < qber ? !a : a);
    }
    return pair;
}

SampleEstimate sample_and_estimate(const RawKeyPair& pair, std::size_t n, std::uint64_t seed) {
    std::size_t total = pair.alice_bits.size();
    if (pair.bob_bits.size() != total)
        throw std::invalid_argument("sample_and_estimate: string lengths differ");
    if (n == 0 || n > total)
        throw std::invalid_argument("sample_and_estimate: bad sample size");

    Rng rng(seed);
    SampleEstimate se;
    auto drawn = rng.sample_without_replacement(std::uint32_t(total), std::uint32_t(n));
    se.sample_indices.assign(drawn.begin(), drawn.end());

    std::vector<char> in_sample(total, 0);
    std::size_t mismatches = 0;
    for (auto i : se.sample_indices) {
        in_sample[i] = 1;
        if (pair.alice_bits.get(i) != pair.bob_bits.get(i)) ++mismatches;
    }
    se.remainder_indices.reserve(total - n);
    for (std::size_t i = 0; i < total; ++i)
        if (!in_sample[i]) se.remainder_indices.push_back(i);

    se.alpha = double(mismatches) / double(n);
    se.abort_qber = se.alpha > kQberAbortThreshold;
    return se;
}

std::uint64_t verify_hash(const BitString& bits, unsigned t, std::uint64_t seed) {
    if (t == 0 || t > 61) throw std::invalid_argument("verify_hash: t must lie in [1, 61]");
    std::uint64_t key = seed & kGf61Mask;
    if (key == 0) key = 1;
    // Prefix the bit length so equal padded byte images of different lengths
    // cannot collide trivially.
    std::vector<std::uint8_t> msg(8);
    std::uint64_t nbits = bits.size();
    for (int i = 0; i < 8; ++i) msg[std::size_t(i)] = std::uint8_t(nbits >> (56 - 8 * i));
    const auto& body = bits.bytes();
    msg.insert(msg.end(), body.begin(), body.end());
    return gf61_poly_hash(key, msg) & ((t == 61) ? kGf61Mask : ((std::uint64_t(1) << t) - 1));
}

bool verify_correction(const BitString& alice_bits, const BitString& bob_bits_corrected,
                       unsigned t, std::uint64_t hash_seed) {
    if (alice_bits.size() != bob_bits_corrected.size())
        throw std::invalid_argument("verify_correction: length mismatch");
    return verify_hash(alice_bits, t, hash_seed) == verify_hash(bob_bits_corrected, t, hash_seed);
}

BitString toeplitz_hash(const BitString& input, std::size_t l, const BitString& seed) {
    std::size_t m = input.size();
    if (seed.size() != l + m - 1)
        throw std::invalid_argument("toeplitz_hash: seed must have l+m-1 bits");
    // T[i][j] = seed[i - j + m - 1]; row i of the output is the GF(2) inner
    // product of that diagonal slice with the input.
    BitString out(l);
    for (std::size_t i = 0; i < l; ++i) {
        int parity = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (input.get(j)) parity ^= seed.get(i + m - 1 - j);
        out.set(i, parity);
    }
    return out;
}

BitString privacy_amplify(const BitString& key, std::size_t l, const BitString& seed) {
    if (l == 0) throw std::invalid_argument("privacy_amplify: l must be positive");
    if (l > key.size())
        throw std::invalid_argument("privacy_amplify: l exceeds input length");
    return toeplitz_hash(key, l, seed);
}

std::string to_string(SessionStatus s) {
    switch (s) {
    case SessionStatus::completed: return "completed";
    case SessionStatus::abort_qber: return "abort_qber";
    case SessionStatus::abort_ec_detectable: return "abort_ec_detectable";
    case SessionStatus::abort_verify: return "abort_verify";
    case SessionStatus::abort_infeasible: return "abort_infeasible";
    }
    return "?";
}

namespace {

BitString gather(const BitString& bits, const std::vector<std::size_t>& idx) {
    BitString out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out.set(k, bits.get(idx[k]));
    return out;
}

} // namespace

SessionOutcome run_qkd_session(const SecurityParams& params, const RawKeyPair& pair,
                               const OptimizerConfig& opt_cfg, const LdpcCode& code,
                               std::uint64_t session_seed, std::size_t ec_max_iters) {
    if (pair.alice_bits.size() != std::size_t(params.N))
        throw std::invalid_argument("run_qkd_session: pair length differs from N");
    if (code.rows != std::size_t(params.r))
        throw std::invalid_argument("run_qkd_session: code rows differ from r");
    if (code.cols != std::size_t(params.N - params.n))
        throw std::invalid_argument("run_qkd_session: code columns differ from N-n");

    Rng rng(session_seed);
    SessionOutcome out;

    auto se = sample_and_estimate(pair, std::size_t(params.n), rng.next_u64());
    out.alpha = se.alpha;
    if (se.abort_qber) {
        out.status = SessionStatus::abort_qber;
        return out;
    }

    // Estimation convention: the observed rate is adopted as delta.
    OptimizerConfig cfg = opt_cfg;
    cfg.params = params;
    cfg.params.delta = se.alpha;
    out.report = optimize(cfg);
    if (!out.report.l_max) {
        out.status = SessionStatus::abort_infeasible;
        return out;
    }
    std::size_t l = *out.report.l_max;

    BitString alice_rem = gather(pair.alice_bits, se.remainder_indices);
    BitString bob_rem = gather(pair.bob_bits, se.remainder_indices);

    BitString syndrome = ldpc_syndrome(code, alice_rem);
    auto corrected = ldpc_decode(code, bob_rem, syndrome, std::max(se.alpha, 1e-4), ec_max_iters);
    if (!corrected) {
        out.status = SessionStatus::abort_ec_detectable;
        return out;
    }

    std::uint64_t hash_seed = rng.next_u64();
    if (!verify_correction(alice_rem, *corrected, unsigned(params.t), hash_seed)) {
        out.status = SessionStatus::abort_verify;
        return out;
    }

    BitString pa_seed = rng.bits(l + alice_rem.size() - 1);
    out.final_key = privacy_amplify(alice_rem, l, pa_seed);
    out.final_key_bob = privacy_amplify(*corrected, l, pa_seed);
    out.status = SessionStatus::completed;
    return out;
}

} // namespace hqkd
