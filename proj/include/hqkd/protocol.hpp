#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hqkd/bits.hpp"
#include "hqkd/bounds.hpp"
#include "hqkd/channel.hpp"
#include "hqkd/ldpc.hpp"
#include "hqkd/optimizer.hpp"
#include "hqkd/psk.hpp"
#include "hqkd/rng.hpp"

namespace hqkd {

enum class Role { initiator, responder };

enum class CycleStatus : std::uint8_t {
    completed = 0,
    abort_qber = 1,
    abort_ec_detectable = 2,
    abort_verify = 3,
    abort_infeasible = 4,
    abort_mac = 5,          // frame MAC or AEAD authentication failure
    abort_kem_confirm = 6,  // shared-secret confirmation mismatch
    abort_channel = 7,      // transport failure / peer vanished
};

std::string to_string(CycleStatus s);

struct CycleConfig {
    SecurityParams params;                // delta is overwritten by measured alpha
    OptimizerConfig opt;                  // pe_type + grid preset
    unsigned n_obs = 4;
    double qber = 0.0644;
    std::vector<std::uint8_t> message;    // defaults to the 102-byte sample text
    std::uint64_t cycle_id = 0;
    std::uint64_t seed = 1;               // shared base seed (channel + psk derivation)
    std::size_t ec_max_iters = 200;
    const LdpcCode* code = nullptr;
};

// The 102-byte sample message used throughout reports and defaults.
std::vector<std::uint8_t> sample_message_102();

struct CycleReport {
    Role role = Role::initiator;
    CycleStatus status = CycleStatus::abort_channel;
    unsigned n_obs = 0;
    unsigned gamma = 0;
    std::vector<double> session_alphas;
    std::vector<std::size_t> session_l;
    std::size_t qkd_bits_extracted = 0;
    std::size_t he_steps = 0;             // 3*gamma on completion
    std::size_t envelope_bytes = 0;       // serialized envelope size
    bool message_roundtrip_ok = false;
    std::size_t psk_bits_consumed = 0;    // this cycle's ledger draw
    double qkd_s = 0, pqc_s = 0, he_s = 0;
    std::vector<OptimizationResult> session_reports;
};

// KEM handshake over the authenticated channel: the initiator generates the
// key pair and decapsulates; the responder encapsulates. Returns the 256-bit
// shared secret (equal on both ends for an honest run).
BitString kem_establish(Role role, Channel& ch, PskLedger& ledger, Rng& rng,
                        std::uint64_t cycle_id);

// One party's half of a full cycle. party_seed drives all of this party's
// private coins. Never throws for protocol-level failures; the report status
// carries the outcome. Transport failures yield abort_channel.
CycleReport run_party(Role role, const CycleConfig& cfg, Channel& ch, PskLedger& ledger,
                      std::uint64_t party_seed);

// Runs both parties over an in-process channel pair (two threads); returns
// (initiator report, responder report).
std::pair<CycleReport, CycleReport> run_cycle(const CycleConfig& cfg, PskLedger& ledger_a,
                                              PskLedger& ledger_b);

// Same, over a loopback TCP connection (ephemeral port).
std::pair<CycleReport, CycleReport> run_cycle_tcp(const CycleConfig& cfg, PskLedger& ledger_a,
                                                  PskLedger& ledger_b);

// Sums the two parties' durations and reconciles status and round-trip flag
// into a single per-cycle record.
CycleReport merge_reports(CycleReport a, const CycleReport& b);

struct BatchReport {
    std::vector<CycleReport> cycles;  // initiator-side reports
    std::size_t completed = 0;
    std::size_t total_bits_extracted = 0;
    double total_qkd_s = 0, total_pqc_s = 0, total_he_s = 0;
    double qkd_key_rate_bits_per_s = 0;  // sum(bits)/sum(qkd time)
};

// Ledger pool sized for `cycles` runs of this configuration.
PskLedger make_shared_ledger(const CycleConfig& cfg, std::size_t cycles,
                             std::uint64_t psk_seed);

BatchReport run_batch(const CycleConfig& base_cfg, std::size_t cycles);

} // namespace hqkd
