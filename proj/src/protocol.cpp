#include "hqkd/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "hqkd/envelope.hpp"
#include "hqkd/frames.hpp"
#include "hqkd/instruction_seq.hpp"
#include "hqkd/keysplit.hpp"
#include "hqkd/mlkem.hpp"
#include "hqkd/qkd.hpp"
#include "hqkd/sha3.hpp"
#include "hqkd/wc_mac.hpp"

namespace hqkd {

std::string to_string(CycleStatus s) {
    switch (s) {
        case CycleStatus::completed: return "completed";
        case CycleStatus::abort_qber: return "abort_qber";
        case CycleStatus::abort_ec_detectable: return "abort_ec_detectable";
        case CycleStatus::abort_verify: return "abort_verify";
        case CycleStatus::abort_infeasible: return "abort_infeasible";
        case CycleStatus::abort_mac: return "abort_mac";
        case CycleStatus::abort_kem_confirm: return "abort_kem_confirm";
        case CycleStatus::abort_channel: return "abort_channel";
    }
    return "unknown";
}

std::vector<std::uint8_t> sample_message_102() {
    static const char* text =
        "Hybrid envelope sample payload: one hundred and two bytes of plain text "
        "used for the cycle roundtrips.";
    std::vector<std::uint8_t> m(text, text + std::strlen(text));
    if (m.size() != 102) throw std::logic_error("sample message must be 102 bytes");
    return m;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Deterministic abort signal raised inside a party; converted to a report status.
struct CycleAbort {
    CycleStatus status;
    bool send_frame;  // false when both sides deduce the abort from shared data
};

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(std::uint8_t(v >> (8 * i)));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t off) {
    if (off + 8 > in.size()) throw FrameError("truncated integer field");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in[off + std::size_t(i)];
    return v;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // splitmix64 over a simple combination; both parties derive identical values.
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0x632be59bd9b4e019ULL * (c + 1);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27; x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Frame exchange with per-frame authentication. Every content frame is
// followed by a MAC frame over its serialized bytes; both ledgers advance in
// lockstep because sender and receiver allocate the tag key at the same
// protocol position.
class AuthLink {
  public:
    AuthLink(Channel& ch, PskLedger& ledger, std::uint64_t cycle_id)
        : ch_(ch), ledger_(ledger), cycle_id_(cycle_id) {}

    void send(FrameType type, std::vector<std::uint8_t> payload) {
        Frame f{type, std::move(payload)};
        auto key = ledger_.allocate(PskPurpose::mac_key, kMacKeyBits, cycle_id_);
        std::uint64_t tag = wc_mac(key, frame_mac_input(f));
        ch_.send_frame(f);
        std::vector<std::uint8_t> mp;
        put_u64(mp, tag);
        ch_.send_frame(Frame{FrameType::MAC, std::move(mp)});
    }

    Frame recv(FrameType expected) {
        Frame f = ch_.recv_frame();
        if (f.type == FrameType::ABORT) {
            CycleStatus st = CycleStatus::abort_channel;
            if (!f.payload.empty()) st = CycleStatus(f.payload[0]);
            throw CycleAbort{st, false};
        }
        Frame m = ch_.recv_frame();
        auto key = ledger_.allocate(PskPurpose::mac_key, kMacKeyBits, cycle_id_);
        if (m.type != FrameType::MAC || m.payload.size() != 8)
            throw CycleAbort{CycleStatus::abort_mac, true};
        std::uint64_t tag = get_u64(m.payload, 0);
        if (!wc_verify(key, frame_mac_input(f), tag))
            throw CycleAbort{CycleStatus::abort_mac, true};
        if (f.type != expected)
            throw CycleAbort{CycleStatus::abort_mac, true};
        return f;
    }

    void send_abort(CycleStatus st) {
        try {
            ch_.send_frame(Frame{FrameType::ABORT, {std::uint8_t(st)}});
        } catch (const ChannelClosed&) {
            // peer already gone; nothing further to do
        }
    }

  private:
    Channel& ch_;
    PskLedger& ledger_;
    std::uint64_t cycle_id_;
};

std::vector<std::uint8_t> kem_confirm_digest(const BitString& secret, char dir,
                                             std::uint64_t cycle_id) {
    std::vector<std::uint8_t> in = secret.bytes();
    in.push_back(std::uint8_t('k'));
    in.push_back(std::uint8_t('c'));
    in.push_back(std::uint8_t(dir));
    put_u64(in, cycle_id);
    auto d = sha3_256(in);
    d.resize(16);
    return d;
}

BitString kem_establish_impl(Role role, AuthLink& link, Rng& rng, std::uint64_t cycle_id,
                             double* pqc_s) {
    auto t0 = Clock::now();
    BitString secret;
    if (role == Role::initiator) {
        std::array<std::uint8_t, 32> d{}, z{};
        auto db = rng.bytes(32);
        auto zb = rng.bytes(32);
        std::copy(db.begin(), db.end(), d.begin());
        std::copy(zb.begin(), zb.end(), z.begin());
        MlKemKeyPair kp = mlkem512_keygen(d, z);
        if (pqc_s) *pqc_s += seconds_since(t0);
        link.send(FrameType::KEM_PK, kp.ek);
        Frame ct = link.recv(FrameType::KEM_CT);
        if (ct.payload.size() != kMlKemCtBytes)
            throw CycleAbort{CycleStatus::abort_kem_confirm, true};
        auto t1 = Clock::now();
        auto ss = mlkem512_decaps(kp.dk, ct.payload);
        if (pqc_s) *pqc_s += seconds_since(t1);
        secret = BitString::from_bytes(std::vector<std::uint8_t>(ss.begin(), ss.end()), 256);
        link.send(FrameType::VERIFY, kem_confirm_digest(secret, 'i', cycle_id));
        Frame back = link.recv(FrameType::VERIFY);
        if (back.payload != kem_confirm_digest(secret, 'r', cycle_id))
            throw CycleAbort{CycleStatus::abort_kem_confirm, true};
    } else {
        Frame pk = link.recv(FrameType::KEM_PK);
        auto t1 = Clock::now();
        std::array<std::uint8_t, 32> m{};
        auto mb = rng.bytes(32);
        std::copy(mb.begin(), mb.end(), m.begin());
        MlKemEncapsResult enc;
        try {
            enc = mlkem512_encaps(pk.payload, m);
        } catch (const std::invalid_argument&) {
            throw CycleAbort{CycleStatus::abort_kem_confirm, true};
        }
        if (pqc_s) *pqc_s += seconds_since(t1);
        secret = BitString::from_bytes(
            std::vector<std::uint8_t>(enc.shared_secret.begin(), enc.shared_secret.end()), 256);
        link.send(FrameType::KEM_CT, enc.ct);
        Frame conf = link.recv(FrameType::VERIFY);
        if (conf.payload != kem_confirm_digest(secret, 'i', cycle_id))
            throw CycleAbort{CycleStatus::abort_kem_confirm, true};
        link.send(FrameType::VERIFY, kem_confirm_digest(secret, 'r', cycle_id));
    }
    return secret;
}

struct SessionKeys {
    std::vector<BitString> keys;  // one per completed session, initiator order
};

// One distillation session, party-split. The remainder string held by each
// party after sampling feeds error correction (responder reconciles toward
// the initiator), a seeded-hash equality check in both directions, and
// privacy amplification with the initiator's extractor seed.
BitString run_session(Role role, const CycleConfig& cfg, AuthLink& link, Rng& rng,
                      std::uint64_t channel_seed, CycleReport& rep) {
    const auto& P = cfg.params;
    RawKeyPair pair = simulate_raw_keys(std::size_t(P.N), cfg.qber, channel_seed);
    const BitString& mine = (role == Role::initiator) ? pair.alice_bits : pair.bob_bits;

    // Sampling: the initiator commits to a seed; both ends expand it to the
    // same index set and exchange the sampled values to agree on alpha exactly.
    std::uint64_t sample_seed = 0;
    BitString peer_sample;
    BitString my_sample;
    std::vector<std::uint32_t> indices;
    if (role == Role::initiator) {
        sample_seed = rng.next_u64();
        Rng sr(sample_seed);
        indices = sr.sample_without_replacement(std::uint32_t(P.N), std::uint32_t(P.n));
        for (std::uint32_t i : indices) my_sample.push_back(mine.get(i));
        std::vector<std::uint8_t> payload;
        put_u64(payload, sample_seed);
        auto pb = my_sample.bytes();
        payload.insert(payload.end(), pb.begin(), pb.end());
        link.send(FrameType::SAMPLE_IDX, std::move(payload));
        Frame back = link.recv(FrameType::SAMPLE_IDX);
        peer_sample = BitString::from_bytes(back.payload, std::size_t(P.n));
    } else {
        Frame f = link.recv(FrameType::SAMPLE_IDX);
        sample_seed = get_u64(f.payload, 0);
        std::vector<std::uint8_t> rest(f.payload.begin() + 8, f.payload.end());
        peer_sample = BitString::from_bytes(rest, std::size_t(P.n));
        Rng sr(sample_seed);
        indices = sr.sample_without_replacement(std::uint32_t(P.N), std::uint32_t(P.n));
        for (std::uint32_t i : indices) my_sample.push_back(mine.get(i));
        link.send(FrameType::SAMPLE_IDX, my_sample.bytes());
    }
    std::size_t mismatches = my_sample.hamming_distance(peer_sample);
    double alpha = double(mismatches) / double(P.n);
    rep.session_alphas.push_back(alpha);
    if (alpha > kQberAbortThreshold) throw CycleAbort{CycleStatus::abort_qber, false};

    // Both parties run the identical deterministic optimization at the
    // realized alpha; an empty result is mutual knowledge, no frame needed.
    auto t0 = Clock::now();
    OptimizerConfig oc = cfg.opt;
    oc.params = P;
    oc.params.delta = alpha;
    OptimizationResult best = optimize(oc);
    rep.qkd_s += seconds_since(t0);
    if (!best.l_max || *best.l_max <= 0)
        throw CycleAbort{CycleStatus::abort_infeasible, false};
    rep.session_reports.push_back(best);
    std::size_t l = std::size_t(*best.l_max);
    rep.session_l.push_back(l);

    // Remainder = positions outside the sample, in ascending order.
    std::vector<bool> sampled(std::size_t(P.N), false);
    for (std::uint32_t i : indices) sampled[i] = true;
    BitString remainder;
    for (std::size_t i = 0; i < std::size_t(P.N); ++i)
        if (!sampled[i]) remainder.push_back(mine.get(i));

    const LdpcCode& code = *cfg.code;
    BitString working = remainder;
    if (role == Role::initiator) {
        auto te = Clock::now();
        BitString syn = ldpc_syndrome(code, remainder);
        rep.qkd_s += seconds_since(te);
        link.send(FrameType::SYNDROME, syn.bytes());
    } else {
        Frame f = link.recv(FrameType::SYNDROME);
        BitString syn = BitString::from_bytes(f.payload, kLdpcRows);
        auto te = Clock::now();
        double ch_qber = std::max(alpha, 1e-4);
        auto corrected = ldpc_decode(code, remainder, syn, ch_qber, cfg.ec_max_iters);
        rep.qkd_s += seconds_since(te);
        if (!corrected) throw CycleAbort{CycleStatus::abort_ec_detectable, true};
        working = *corrected;
    }

    // Correctness check in both directions under a fresh seeded hash.
    if (role == Role::initiator) {
        std::uint64_t vseed = rng.next_u64();
        std::uint64_t h = verify_hash(working, unsigned(P.t), vseed);
        std::vector<std::uint8_t> payload;
        put_u64(payload, vseed);
        put_u64(payload, h);
        link.send(FrameType::VERIFY, std::move(payload));
        Frame back = link.recv(FrameType::VERIFY);
        if (get_u64(back.payload, 0) != h) throw CycleAbort{CycleStatus::abort_verify, true};
    } else {
        Frame f = link.recv(FrameType::VERIFY);
        std::uint64_t vseed = get_u64(f.payload, 0);
        std::uint64_t h_peer = get_u64(f.payload, 8);
        std::uint64_t h = verify_hash(working, unsigned(P.t), vseed);
        if (h != h_peer) throw CycleAbort{CycleStatus::abort_verify, true};
        std::vector<std::uint8_t> payload;
        put_u64(payload, h);
        link.send(FrameType::VERIFY, std::move(payload));
    }

    // Privacy amplification with the initiator's extractor seed.
    std::size_t m = working.size();
    std::size_t seed_bits = l + m - 1;
    BitString pa_seed;
    if (role == Role::initiator) {
        pa_seed = rng.bits(seed_bits);
        link.send(FrameType::PA_SEED, pa_seed.bytes());
    } else {
        Frame f = link.recv(FrameType::PA_SEED);
        pa_seed = BitString::from_bytes(f.payload, seed_bits);
    }
    auto tp = Clock::now();
    BitString key = privacy_amplify(working, l, pa_seed);
    rep.qkd_s += seconds_since(tp);
    rep.qkd_bits_extracted += l;
    return key;
}

CycleReport run_party_impl(Role role, const CycleConfig& cfg, Channel& ch, PskLedger& ledger,
                           std::uint64_t party_seed) {
    if (!cfg.code) throw std::invalid_argument("cycle config requires a parity-check code");
    count_valid(cfg.n_obs);  // rejects unsupported security strengths up front
    CycleReport rep;
    rep.role = role;
    rep.n_obs = cfg.n_obs;
    AuthLink link(ch, ledger, cfg.cycle_id);
    Rng rng(party_seed);
    std::size_t ledger_start = ledger.cursor();

    try {
        // Phase (i): instruction-sequence share under a one-time pad. Both
        // ends allocate the pad before the exchange (its size is fixed by the
        // configuration) so the ledgers stay aligned bit for bit.
        std::uint64_t is_index = 0;
        if (cfg.n_obs > 0) {
            BitString pad = ledger.allocate(PskPurpose::is_pad, cfg.n_obs, cfg.cycle_id);
            if (role == Role::initiator) {
                is_index = rng.next_u64() & ((cfg.n_obs >= 64) ? ~0ULL
                                             : ((1ULL << cfg.n_obs) - 1));
                BitString ct = encrypt_is(is_index, pad);
                std::vector<std::uint8_t> payload{std::uint8_t(cfg.n_obs)};
                auto cb = ct.bytes();
                payload.insert(payload.end(), cb.begin(), cb.end());
                link.send(FrameType::IS_CT, std::move(payload));
            } else {
                Frame f = link.recv(FrameType::IS_CT);
                if (f.payload.empty() || f.payload[0] != cfg.n_obs)
                    throw CycleAbort{CycleStatus::abort_mac, true};
                std::vector<std::uint8_t> rest(f.payload.begin() + 1, f.payload.end());
                BitString ct = BitString::from_bytes(rest, cfg.n_obs);
                is_index = decrypt_is(ct, pad);
            }
        }
        InstructionSequence is = unrank_is(is_index, cfg.n_obs);
        rep.gamma = is.gamma;

        // Phase (iii): one distillation session per pad consumer.
        std::vector<BitString> session_keys;
        std::size_t otp_steps = 0;
        for (const auto st : is.steps)
            if (st == Scheme::OTP) ++otp_steps;
        for (unsigned k = 0; k < is.gamma; ++k) {
            std::uint64_t ch_seed = mix_seed(cfg.seed, cfg.cycle_id, k);
            session_keys.push_back(run_session(role, cfg, link, rng, ch_seed, rep));
        }

        // Phase (iv): lattice KEM establishment and key split.
        BitString ss = kem_establish_impl(role, link, rng, cfg.cycle_id, &rep.pqc_s);
        SplitSecret split = split_shared_secret(ss);

        // Phase (v): hybrid envelope over the sample message.
        KeyBundle bundle;
        bundle.qkd_keys.assign(session_keys.begin(),
                               session_keys.begin() + std::min(otp_steps, session_keys.size()));
        bundle.aes_key = ledger.aes_key(cfg.cycle_id);
        bundle.split = split;
        std::vector<std::uint8_t> ad{0x01};
        put_u64(ad, cfg.cycle_id);

        const std::vector<std::uint8_t>& msg = cfg.message;
        if (role == Role::initiator) {
            std::array<std::uint8_t, 15> sid{};
            std::array<std::uint8_t, 16> v{};
            auto sb = rng.bytes(15);
            auto vb = rng.bytes(16);
            std::copy(sb.begin(), sb.end(), sid.begin());
            std::copy(vb.begin(), vb.end(), v.begin());
            auto t0 = Clock::now();
            CipherEnvelope env = he_encrypt(is, msg, bundle, sid, v, ad);
            rep.he_s += seconds_since(t0);
            auto wire = envelope_serialize(env);
            rep.envelope_bytes = wire.size();
            link.send(FrameType::HE_ENV, std::move(wire));
            // Round-trip proof: the responder returns a one-time MAC over the
            // plaintext it recovered; a match certifies end-to-end delivery.
            // The proof key precedes the frame key in ledger order on both
            // sides (the responder draws it before sending).
            BitString rt_key = ledger.allocate(PskPurpose::mac_key, kMacKeyBits, cfg.cycle_id);
            Frame proof = link.recv(FrameType::VERIFY);
            rep.message_roundtrip_ok = wc_verify(rt_key, msg, get_u64(proof.payload, 0));
            if (!rep.message_roundtrip_ok) throw CycleAbort{CycleStatus::abort_verify, true};
        } else {
            Frame f = link.recv(FrameType::HE_ENV);
            rep.envelope_bytes = f.payload.size();
            CipherEnvelope env = envelope_parse(f.payload);
            if (env.associated_data != ad) throw CycleAbort{CycleStatus::abort_mac, true};
            std::vector<std::uint8_t> recovered;
            auto t0 = Clock::now();
            try {
                recovered = he_decrypt(env, is, bundle);
            } catch (const AuthenticationFailure&) {
                throw CycleAbort{CycleStatus::abort_mac, true};
            } catch (const PadError&) {
                throw CycleAbort{CycleStatus::abort_mac, true};
            }
            rep.he_s += seconds_since(t0);
            BitString rt_key = ledger.allocate(PskPurpose::mac_key, kMacKeyBits, cfg.cycle_id);
            std::vector<std::uint8_t> payload;
            put_u64(payload, wc_mac(rt_key, recovered));
            link.send(FrameType::VERIFY, std::move(payload));
            rep.message_roundtrip_ok = (recovered == msg);
        }
        rep.he_steps = 3u * is.gamma;
        rep.status = CycleStatus::completed;
    } catch (const CycleAbort& a) {
        rep.status = a.status;
        if (a.send_frame) link.send_abort(a.status);
    } catch (const ChannelClosed&) {
        rep.status = CycleStatus::abort_channel;
    } catch (const FrameError&) {
        rep.status = CycleStatus::abort_mac;
        link.send_abort(CycleStatus::abort_mac);
    } catch (const PoolExhausted&) {
        rep.status = CycleStatus::abort_channel;
        link.send_abort(CycleStatus::abort_channel);
    }
    rep.psk_bits_consumed = ledger.cursor() - ledger_start;
    return rep;
}

} // namespace

BitString kem_establish(Role role, Channel& ch, PskLedger& ledger, Rng& rng,
                        std::uint64_t cycle_id) {
    AuthLink link(ch, ledger, cycle_id);
    try {
        return kem_establish_impl(role, link, rng, cycle_id, nullptr);
    } catch (const CycleAbort& a) {
        if (a.send_frame) link.send_abort(a.status);
        throw AuthenticationFailure("kem establishment aborted: " + to_string(a.status));
    }
}

CycleReport run_party(Role role, const CycleConfig& cfg, Channel& ch, PskLedger& ledger,
                      std::uint64_t party_seed) {
    return run_party_impl(role, cfg, ch, ledger, party_seed);
}

std::pair<CycleReport, CycleReport> run_cycle(const CycleConfig& cfg, PskLedger& ledger_a,
                                              PskLedger& ledger_b) {
    auto pair = make_inproc_pair();
    std::unique_ptr<Channel> ch_a = std::move(pair.first);
    std::unique_ptr<Channel> ch_b = std::move(pair.second);
    CycleReport rb;
    std::exception_ptr bob_err;
    std::thread bob([&cfg, &ledger_b, &rb, &ch_b, &bob_err] {
        try {
            rb = run_party(Role::responder, cfg, *ch_b, ledger_b,
                           mix_seed(cfg.seed, cfg.cycle_id, 0xb0b));
        } catch (...) {
            bob_err = std::current_exception();
        }
        ch_b.reset();  // closing unblocks the peer if it is still waiting
    });
    CycleReport ra;
    std::exception_ptr alice_err;
    try {
        ra = run_party(Role::initiator, cfg, *ch_a, ledger_a,
                       mix_seed(cfg.seed, cfg.cycle_id, 0xa11ce));
    } catch (...) {
        alice_err = std::current_exception();
    }
    ch_a.reset();
    bob.join();
    if (alice_err) std::rethrow_exception(alice_err);
    if (bob_err) std::rethrow_exception(bob_err);
    return {ra, rb};
}

std::pair<CycleReport, CycleReport> run_cycle_tcp(const CycleConfig& cfg, PskLedger& ledger_a,
                                                  PskLedger& ledger_b) {
    TcpListener listener(0);
    std::uint16_t port = listener.bound_port();
    CycleReport rb;
    std::exception_ptr bob_err;
    std::thread bob([&cfg, &ledger_b, &rb, &bob_err, &listener] {
        try {
            auto ch = listener.accept_one();
            rb = run_party(Role::responder, cfg, *ch, ledger_b,
                           mix_seed(cfg.seed, cfg.cycle_id, 0xb0b));
        } catch (...) {
            bob_err = std::current_exception();
        }
    });
    CycleReport ra;
    std::exception_ptr alice_err;
    try {
        auto ch = tcp_connect("127.0.0.1", port);
        ra = run_party(Role::initiator, cfg, *ch, ledger_a,
                       mix_seed(cfg.seed, cfg.cycle_id, 0xa11ce));
    } catch (...) {
        alice_err = std::current_exception();
    }
    bob.join();
    if (alice_err) std::rethrow_exception(alice_err);
    if (bob_err) std::rethrow_exception(bob_err);
    return {ra, rb};
}

PskLedger make_shared_ledger(const CycleConfig& cfg, std::size_t cycles,
                             std::uint64_t psk_seed) {
    unsigned gamma = (cfg.n_obs + 1) / 2;
    // Per cycle: IS pad + MAC keys for every authenticated frame (one spare),
    // plus the one-off 256-bit block cipher key.
    std::size_t per_cycle = cfg.n_obs + (8 + 6 * std::size_t(gamma) + 4) * kMacKeyBits;
    std::size_t pool_bits = 256 + cycles * per_cycle + 4096;
    Rng rng(psk_seed);
    return PskLedger(rng.bits(pool_bits));
}

CycleReport merge_reports(CycleReport a, const CycleReport& b) {
    a.qkd_s += b.qkd_s;
    a.pqc_s += b.pqc_s;
    a.he_s += b.he_s;
    a.message_roundtrip_ok = a.message_roundtrip_ok && b.message_roundtrip_ok;
    if (a.status == CycleStatus::completed && b.status != CycleStatus::completed)
        a.status = b.status;
    return a;
}

BatchReport run_batch(const CycleConfig& base_cfg, std::size_t cycles) {
    BatchReport out;
    PskLedger la = make_shared_ledger(base_cfg, cycles, base_cfg.seed ^ 0x505eedULL);
    PskLedger lb = make_shared_ledger(base_cfg, cycles, base_cfg.seed ^ 0x505eedULL);
    for (std::size_t c = 0; c < cycles; ++c) {
        CycleConfig cfg = base_cfg;
        cfg.cycle_id = base_cfg.cycle_id + c;
        auto [ra, rb] = run_cycle(cfg, la, lb);
        CycleReport merged = merge_reports(std::move(ra), rb);
        out.total_qkd_s += merged.qkd_s;
        out.total_pqc_s += merged.pqc_s;
        out.total_he_s += merged.he_s;
        if (merged.status == CycleStatus::completed) {
            ++out.completed;
            out.total_bits_extracted += merged.qkd_bits_extracted;
        }
        out.cycles.push_back(std::move(merged));
    }
    if (out.total_qkd_s > 0)
        out.qkd_key_rate_bits_per_s = double(out.total_bits_extracted) / out.total_qkd_s;
    return out;
}

} // namespace hqkd
