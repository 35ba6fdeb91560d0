#include "hqkd/envelope.hpp"

#include <algorithm>

#include "hqkd/aes.hpp"
#include "hqkd/ascon.hpp"

namespace hqkd {

namespace {

std::array<std::uint8_t, 16> ascon_nonce(const BitString& v_prime, std::uint8_t i) {
    if (v_prime.size() != 120)
        throw std::invalid_argument("ascon_step: v' must be 120 bits");
    std::array<std::uint8_t, 16> nonce{};
    const auto& vb = v_prime.bytes();  // 15 bytes
    for (std::size_t k = 0; k < 15; ++k) nonce[k] = vb[k];
    nonce[15] = i;
    return nonce;
}

std::array<std::uint8_t, 32> aes_key_from_bits(const BitString& key) {
    if (key.size() != 256)
        throw std::invalid_argument("aes_ctr_step: key must be 256 bits");
    std::array<std::uint8_t, 32> k{};
    const auto& kb = key.bytes();
    for (std::size_t i = 0; i < 32; ++i) k[i] = kb[i];
    return k;
}

std::array<std::uint8_t, 16> pqc_key_from_bits(const BitString& key) {
    if (key.size() != 128)
        throw std::invalid_argument("ascon_step: key must be 128 bits");
    std::array<std::uint8_t, 16> k{};
    const auto& kb = key.bytes();
    for (std::size_t i = 0; i < 16; ++i) k[i] = kb[i];
    return k;
}

// For each position of the sequence, which OTP occurrence it is (or -1).
std::vector<int> otp_occurrence(const InstructionSequence& is) {
    std::vector<int> occ(is.steps.size(), -1);
    int k = 0;
    for (std::size_t j = 0; j < is.steps.size(); ++j)
        if (is.steps[j] == Scheme::OTP) occ[j] = k++;
    return occ;
}

void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(std::uint8_t(x >> 8));
    v.push_back(std::uint8_t(x));
}

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(std::uint8_t(x >> 24));
    v.push_back(std::uint8_t(x >> 16));
    v.push_back(std::uint8_t(x >> 8));
    v.push_back(std::uint8_t(x));
}

} // namespace

std::array<std::uint8_t, 16> build_counter_block(const std::array<std::uint8_t, 16>& v,
                                                 const std::array<std::uint8_t, 15>& sid,
                                                 std::uint8_t i) {
    std::array<std::uint8_t, 16> block;
    for (std::size_t k = 0; k < 15; ++k) block[k] = std::uint8_t(v[k] ^ sid[k]);
    block[15] = std::uint8_t(v[15] ^ i);
    return block;
}

std::vector<std::uint8_t> aes_ctr_step(const std::vector<std::uint8_t>& data,
                                       const std::array<std::uint8_t, 32>& key,
                                       const CounterBlock& block) {
    std::size_t chunks = (data.size() + 15) / 16;
    if (chunks > std::size_t(256) - block.counter_i)
        throw std::invalid_argument("aes_ctr_step: counter space exhausted (chunks > 2^8 - i)");
    Aes256 aes(key);
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t c = 0; c < chunks; ++c) {
        auto ctr = build_counter_block(block.base_nonce_v, block.sid,
                                       std::uint8_t(block.counter_i + c));
        std::uint8_t ks[16];
        aes.encrypt_block(ctr.data(), ks);
        std::size_t base = 16 * c;
        std::size_t len = std::min<std::size_t>(16, data.size() - base);
        for (std::size_t k = 0; k < len; ++k) out[base + k] = std::uint8_t(data[base + k] ^ ks[k]);
    }
    return out;
}

std::vector<std::uint8_t> ascon_step(const std::vector<std::uint8_t>& data,
                                     const std::array<std::uint8_t, 16>& key,
                                     const BitString& v_prime, std::uint8_t i,
                                     const std::vector<std::uint8_t>& ad) {
    return ascon128_encrypt(key, ascon_nonce(v_prime, i), ad, data);
}

std::vector<std::uint8_t> ascon_step_decrypt(const std::vector<std::uint8_t>& ct_and_tag,
                                             const std::array<std::uint8_t, 16>& key,
                                             const BitString& v_prime, std::uint8_t i,
                                             const std::vector<std::uint8_t>& ad) {
    auto pt = ascon128_decrypt(key, ascon_nonce(v_prime, i), ad, ct_and_tag);
    if (!pt) throw AuthenticationFailure("ascon_step: tag verification failed");
    return *pt;
}

std::vector<std::uint8_t> otp_step(const std::vector<std::uint8_t>& data, const BitString& key) {
    if (key.size() < data.size() * 8)
        throw InsufficientKey("otp_step: key shorter than data (" +
                              std::to_string(key.size()) + " < " +
                              std::to_string(data.size() * 8) + " bits)");
    const auto& kb = key.bytes();
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = std::uint8_t(data[i] ^ kb[i]);
    return out;
}

CipherEnvelope he_encrypt(const InstructionSequence& is, const std::vector<std::uint8_t>& m,
                          const KeyBundle& keys, const std::array<std::uint8_t, 15>& sid,
                          const std::array<std::uint8_t, 16>& v,
                          const std::vector<std::uint8_t>& ad) {
    is.validate();
    std::size_t n_otp = 0;
    for (auto s : is.steps)
        if (s == Scheme::OTP) ++n_otp;
    if (keys.qkd_keys.size() != n_otp)
        throw std::invalid_argument("he_encrypt: need exactly one QKD key per OTP step");

    // Pad to a 16-byte multiple (pad length byte repeated, always >= 1).
    std::uint8_t pad = std::uint8_t(16 - m.size() % 16);
    std::vector<std::uint8_t> data = m;
    data.insert(data.end(), pad, pad);

    // Length check up front: every step operates on the padded message size
    // (AEAD tags accumulate outside the working data), so one pad per OTP
    // step of at least that size is exactly what the cascade needs.
    for (const auto& k : keys.qkd_keys)
        if (k.size() < data.size() * 8)
            throw InsufficientKey("he_encrypt: QKD key shorter than padded message");

    auto aes_key = aes_key_from_bits(keys.aes_key);
    auto pqc_key = pqc_key_from_bits(keys.split.pqc_key);
    auto occ = otp_occurrence(is);

    // Tags are accumulated per AEAD step and concatenated after the working
    // ciphertext; they do not feed subsequent steps, which keeps the cascade
    // size-preserving and the final size independent of step order.
    std::vector<std::uint8_t> tags;
    for (std::size_t j = 0; j < is.steps.size(); ++j) {
        std::uint8_t i = std::uint8_t(j);
        switch (is.steps[j]) {
        case Scheme::OTP:
            data = otp_step(data, keys.qkd_keys[std::size_t(occ[j])]);
            break;
        case Scheme::AES: {
            CounterBlock cb{v, sid, i};
            data = aes_ctr_step(data, aes_key, cb);
            break;
        }
        case Scheme::ASCON: {
            auto ct_tag = ascon_step(data, pqc_key, keys.split.base_nonce_v_prime, i, ad);
            tags.insert(tags.end(), ct_tag.end() - 16, ct_tag.end());
            ct_tag.resize(ct_tag.size() - 16);
            data = std::move(ct_tag);
            break;
        }
        }
    }
    data.insert(data.end(), tags.begin(), tags.end());

    CipherEnvelope env;
    env.final_ct = std::move(data);
    env.sid = sid;
    env.base_nonce_v = v;
    env.associated_data = ad;
    env.pad_size = pad;
    return env;
}

std::vector<std::uint8_t> he_decrypt(const CipherEnvelope& env, const InstructionSequence& is,
                                     const KeyBundle& keys) {
    is.validate();
    std::size_t n_otp = 0;
    for (auto s : is.steps)
        if (s == Scheme::OTP) ++n_otp;
    if (keys.qkd_keys.size() != n_otp)
        throw std::invalid_argument("he_decrypt: need exactly one QKD key per OTP step");

    auto aes_key = aes_key_from_bits(keys.aes_key);
    auto pqc_key = pqc_key_from_bits(keys.split.pqc_key);
    auto occ = otp_occurrence(is);

    // Split the working ciphertext from the accumulated tag suffix (one
    // 16-byte tag per AEAD step, in forward step order).
    std::size_t n_ascon = 0;
    for (auto s : is.steps)
        if (s == Scheme::ASCON) ++n_ascon;
    if (env.final_ct.size() < 16 * n_ascon)
        throw PadError("he_decrypt: ciphertext shorter than its tag suffix");
    std::size_t body = env.final_ct.size() - 16 * n_ascon;
    std::vector<std::uint8_t> data(env.final_ct.begin(), env.final_ct.begin() + long(body));
    std::size_t tag_idx = n_ascon;

    for (std::size_t jr = is.steps.size(); jr-- > 0;) {
        std::uint8_t i = std::uint8_t(jr);
        switch (is.steps[jr]) {
        case Scheme::OTP:
            data = otp_step(data, keys.qkd_keys[std::size_t(occ[jr])]);
            break;
        case Scheme::AES: {
            CounterBlock cb{env.base_nonce_v, env.sid, i};
            data = aes_ctr_step(data, aes_key, cb);
            break;
        }
        case Scheme::ASCON: {
            --tag_idx;
            std::size_t off = body + 16 * tag_idx;
            data.insert(data.end(), env.final_ct.begin() + long(off),
                        env.final_ct.begin() + long(off + 16));
            data = ascon_step_decrypt(data, pqc_key, keys.split.base_nonce_v_prime, i,
                                      env.associated_data);
            break;
        }
        }
    }

    if (env.pad_size < 1 || env.pad_size > 16 || data.size() < env.pad_size ||
        data.size() % 16 != 0)
        throw PadError("he_decrypt: trailer pad_size inconsistent with data");
    for (std::size_t k = data.size() - env.pad_size; k < data.size(); ++k)
        if (data[k] != env.pad_size)
            throw PadError("he_decrypt: padding bytes corrupt");
    data.resize(data.size() - env.pad_size);
    return data;
}

std::vector<std::uint8_t> envelope_serialize(const CipherEnvelope& env) {
    if (env.associated_data.size() > 0xffff)
        throw std::invalid_argument("envelope: associated data too long for wire format");
    std::vector<std::uint8_t> wire;
    wire.reserve(env.final_ct.size() + 38 + env.associated_data.size());
    put_u32(wire, std::uint32_t(env.final_ct.size()));
    wire.insert(wire.end(), env.final_ct.begin(), env.final_ct.end());
    wire.insert(wire.end(), env.sid.begin(), env.sid.end());
    wire.insert(wire.end(), env.base_nonce_v.begin(), env.base_nonce_v.end());
    put_u16(wire, std::uint16_t(env.associated_data.size()));
    wire.insert(wire.end(), env.associated_data.begin(), env.associated_data.end());
    wire.push_back(env.pad_size);
    return wire;
}

CipherEnvelope envelope_parse(const std::vector<std::uint8_t>& wire) {
    auto fail = [] { throw PadError("envelope_parse: truncated or malformed wire bytes"); };
    if (wire.size() < 4) fail();
    std::size_t ct_len = (std::size_t(wire[0]) << 24) | (std::size_t(wire[1]) << 16) |
                         (std::size_t(wire[2]) << 8) | std::size_t(wire[3]);
    std::size_t pos = 4;
    if (wire.size() < pos + ct_len + 15 + 16 + 2 + 1) fail();
    CipherEnvelope env;
    env.final_ct.assign(wire.begin() + long(pos), wire.begin() + long(pos + ct_len));
    pos += ct_len;
    for (std::size_t k = 0; k < 15; ++k) env.sid[k] = wire[pos + k];
    pos += 15;
    for (std::size_t k = 0; k < 16; ++k) env.base_nonce_v[k] = wire[pos + k];
    pos += 16;
    std::size_t ad_len = (std::size_t(wire[pos]) << 8) | std::size_t(wire[pos + 1]);
    pos += 2;
    if (wire.size() != pos + ad_len + 1) fail();
    env.associated_data.assign(wire.begin() + long(pos), wire.begin() + long(pos + ad_len));
    pos += ad_len;
    env.pad_size = wire[pos];
    return env;
}

LegacySizeModel legacy_size_model(unsigned n_obs, std::uint64_t msg_bits) {
    LegacySizeModel model;
    std::uint64_t size = msg_bits;
    auto is = unrank_is(0, n_obs);
    for (auto step : is.steps) {
        switch (step) {
        case Scheme::OTP:
            break;
        case Scheme::AES:
            size += 128;  // nonce travels with every legacy AES layer
            break;
        case Scheme::ASCON:
            size = (size + 255) / 256 * 6144;  // PKE layer: each 256-bit block -> 6144 bits
            break;
        }
        model.layer_bits.push_back(size);
    }
    model.final_bits = size;
    return model;
}

std::uint64_t plus_envelope_bits(unsigned n_obs, std::uint64_t msg_bits) {
    std::uint64_t msg_bytes = (msg_bits + 7) / 8;
    std::uint64_t padded = (msg_bytes / 16 + 1) * 16;
    std::uint64_t gamma = (n_obs + 1) / 2;
    return padded * 8 + gamma * 128;
}

} // namespace hqkd
