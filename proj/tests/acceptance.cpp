// Acceptance gate: eight release criteria, each printed as one PASS/FAIL line
// with its pinned tolerances. The process exit code is the number of failed
// criteria, so the harness stays honest about partial results.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "hqkd/aes.hpp"
#include "hqkd/ascon.hpp"
#include "hqkd/bounds.hpp"
#include "hqkd/channel.hpp"
#include "hqkd/envelope.hpp"
#include "hqkd/instruction_seq.hpp"
#include "hqkd/mlkem.hpp"
#include "hqkd/optimizer.hpp"
#include "hqkd/protocol.hpp"
#include "hqkd/rng.hpp"
#include "hqkd/sha3.hpp"
#include "helpers.hpp"

using namespace hqkd;

namespace {

int g_subfail = 0;

void sub(bool ok, const std::string& text) {
    std::printf("    %s %s\n", ok ? "[ok]  " : "[FAIL]", text.c_str());
    if (!ok) ++g_subfail;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const LdpcCode& artifact_code() {
    static LdpcCode code = [] {
#ifdef HQKD_SOURCE_DIR
        std::filesystem::path p = std::string(HQKD_SOURCE_DIR) + "/data/ldpc_5000x10000.txt";
        if (std::filesystem::exists(p)) return LdpcCode::load(p);
#endif
        return LdpcCode::generate(kLdpcRows, kLdpcCols, kLdpcRowWeight, kLdpcArtifactSeed);
    }();
    return code;
}

OptimizerConfig full_cfg(int s, PeType pe) {
    OptimizerConfig cfg;
    cfg.params = SecurityParams::make(s, 20000, 0.0627);
    cfg.pe_type = pe;
    return cfg; // full 100000 x 1000 grid
}

CycleConfig proto_cfg(std::uint64_t seed, double qber, PeType pe, bool coarse) {
    CycleConfig cfg;
    cfg.params = SecurityParams::make(6, 20000, 0.0627);
    cfg.opt.params = cfg.params;
    cfg.opt.pe_type = pe;
    if (coarse) cfg.opt.coarse();
    cfg.n_obs = 4;
    cfg.qber = qber;
    cfg.message = sample_message_102();
    cfg.seed = seed;
    cfg.cycle_id = seed;
    cfg.code = &artifact_code();
    return cfg;
}

// smallest grid nu admitting any positive key length (coarse grid scan);
// infeasible estimators report +infinity so orderings stay well-defined
double min_feasible_nu(PeType pe, double delta) {
    auto sp = SecurityParams::make(6, 20000, delta);
    double eq = sp.eps_qkd();
    double ea = eps_auth(sp.q, sp.p);
    double ec = eps_ec_and_t(sp.s).second;
    double nu_lo = 1e-6, nu_hi = 0.5 - delta - 1e-6;
    const long P = 2000, M = 100;
    for (long i = 0; i < P; ++i) {
        double nu = nu_lo + (nu_hi - nu_lo) * double(i) / double(P - 1);
        double e_pe = -1;
        if (pe == PeType::serfling) {
            double mu_lo = 1e-7, mu_hi = nu - 1e-7;
            if (mu_hi <= mu_lo) continue;
            for (long j = 0; j < M; ++j) {
                double mu = mu_lo + (mu_hi - mu_lo) * double(j) / double(M - 1);
                double e = eps_pe_serfling(nu, mu, delta, sp.N, sp.n);
                if (e_pe < 0 || e < e_pe) e_pe = e;
            }
        } else if (pe == PeType::chernoff) {
            auto e = eps_pe_chernoff(delta, nu, sp.N, sp.n);
            if (!e) continue;
            e_pe = *e;
        } else {
            e_pe = eps_pe_cp(delta, nu, sp.N, sp.n);
        }
        double B = eq - ec - 2.0 * e_pe - ea;
        auto l = candidate_key_length(B, delta, nu, sp.n, sp.r, sp.t);
        if (!l) continue;
        double epa = eps_pa(*l, sp.t, nu, delta, sp.r, sp.N - sp.n);
        if (ea + ec + epa + 2.0 * e_pe <= eq * (1 + 1e-10)) return nu;
    }
    return std::numeric_limits<double>::infinity();
}

std::vector<std::vector<Scheme>> enumerate_family(unsigned gamma) {
    std::vector<std::vector<Scheme>> out;
    std::vector<Scheme> cur;
    unsigned rem[3] = {gamma, gamma, gamma};
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == std::size_t(3) * gamma) {
            out.push_back(cur);
            return;
        }
        for (unsigned k = 0; k < 3; ++k) {
            if (!rem[k]) continue;
            if (!cur.empty() && unsigned(cur.back()) == k) continue;
            --rem[k];
            cur.push_back(Scheme(k));
            self(self);
            cur.pop_back();
            ++rem[k];
        }
    };
    rec(rec);
    return out;
}

struct C1Result {
    std::map<PeType, OptimizationResult> full;
    bool pass = false;
};

// ---------------------------------------------------------------- criterion 1
bool criterion1(C1Result& out) {
    std::puts("criterion 1: reference working point (s=6, N=2e4, n=1e4, delta=0.0627)");
    const struct {
        PeType pe;
        double nu_target, lN_target;
    } rows[] = {
        {PeType::serfling, 0.043, 0.003},
        {PeType::chernoff, 0.023, 0.027},
        {PeType::cp_exact, 0.006, 0.066},
    };
    int before = g_subfail;
    double full_s = 0, coarse_s = 0;
    for (const auto& row : rows) {
        auto cfg = full_cfg(6, row.pe);
        auto res = optimize(cfg);
        out.full[row.pe] = res;
        full_s += res.elapsed_s;
        // published values carry three decimals; allow the print half-ulp plus
        // one grid step on nu, and the stated +-0.002 on l/N
        double nu_tol = 0.0005 + res.grid_resolution;
        bool has = res.l_max.has_value();
        sub(has, std::string(to_string(row.pe)) + ": positive key length found");
        if (!has) continue;
        double lN = double(*res.l_max) / 20000.0;
        sub(std::fabs(lN - row.lN_target) <= 0.002,
            std::string(to_string(row.pe)) + ": l/N = " + fmt("%.5f", lN) + " within " +
                fmt("%.3f", row.lN_target) + " +- 0.002");
        bool nu_ok = std::fabs(*res.nu_star - row.nu_target) <= nu_tol;
        sub(nu_ok, std::string(to_string(row.pe)) + ": nu* = " + fmt("%.7f", *res.nu_star) +
                       " within " + fmt("%.3f", row.nu_target) + " +- " + fmt("%.6f", nu_tol));
        if (!nu_ok && row.pe == PeType::chernoff) {
            // analysis witness: the published nu is unreachable under the stated
            // formulas; the whole tolerance window admits no positive key at all
            auto sp = cfg.params;
            double eq = sp.eps_qkd(), ea = eps_auth(sp.q, sp.p);
            double ec = eps_ec_and_t(sp.s).second;
            auto e_pe = eps_pe_chernoff(sp.delta, row.nu_target, sp.N, sp.n);
            double B = e_pe ? (eq - ec - 2.0 * *e_pe - ea) : -1.0;
            std::printf("    note: at nu = %.3f the residual budget is %.3e (< 0), so no\n"
                        "    positive key exists there; feasibility starts near nu = 0.0265.\n"
                        "    The published l/N = 0.027 is reproduced exactly at the optimum\n"
                        "    nu* = %.7f, so the row's nu appears inconsistent with its own\n"
                        "    l/N under the stated bound. Kept red rather than widening the\n"
                        "    tolerance; see README for the analysis.\n",
                        row.nu_target, B, *out.full[PeType::chernoff].nu_star);
        }
    }
    for (const auto& row : rows) {
        auto cfg = full_cfg(6, row.pe);
        cfg.coarse();
        coarse_s += optimize(cfg).elapsed_s;
    }
    sub(full_s <= 1800.0, "full-grid runtime " + fmt("%.1f", full_s) + " s <= 1800 s");
    sub(coarse_s <= 300.0, "coarse preset runtime " + fmt("%.2f", coarse_s) + " s <= 300 s");
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2() {
    std::puts("criterion 2: strict target (s=9) at delta = 0.0627");
    int before = g_subfail;
    auto serf = optimize(full_cfg(9, PeType::serfling));
    sub(!serf.l_max.has_value(), "serfling: no positive key length (infeasible)");
    auto cher = optimize(full_cfg(9, PeType::chernoff));
    bool ok = cher.l_max.has_value();
    sub(ok, "chernoff: positive key length found");
    if (ok) {
        double lN = double(*cher.l_max) / 20000.0;
        sub(std::fabs(lN - 0.015) <= 0.002, "chernoff: l/N = " + fmt("%.5f", lN) + " within 0.015 +- 0.002");
    }
    auto cp = optimize(full_cfg(9, PeType::cp_exact));
    ok = cp.l_max.has_value();
    sub(ok, "cp_exact: positive key length found");
    if (ok) {
        double lN = double(*cp.l_max) / 20000.0;
        sub(std::fabs(lN - 0.062) <= 0.002, "cp_exact: l/N = " + fmt("%.5f", lN) + " within 0.062 +- 0.002");
    }
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3(const C1Result& c1) {
    std::puts("criterion 3: estimator ordering nu_cp <= nu_chernoff <= nu_serfling");
    int before = g_subfail;
    for (double delta : {0.02, 0.0375, 0.055, 0.0725, 0.09}) {
        double cp = min_feasible_nu(PeType::cp_exact, delta);
        double ch = min_feasible_nu(PeType::chernoff, delta);
        double se = min_feasible_nu(PeType::serfling, delta);
        sub(cp <= ch && ch <= se,
            "delta = " + fmt("%.4f", delta) + ": minimal feasible nu " + fmt("%.6f", cp) +
                " <= " + fmt("%.6f", ch) + " <= " + fmt("%.6f", se));
    }
    auto at = [&](PeType pe) { return *c1.full.at(pe).nu_star; };
    bool have = c1.full.count(PeType::serfling) && c1.full.at(PeType::serfling).nu_star &&
                c1.full.count(PeType::chernoff) && c1.full.at(PeType::chernoff).nu_star &&
                c1.full.count(PeType::cp_exact) && c1.full.at(PeType::cp_exact).nu_star;
    sub(have && at(PeType::cp_exact) < at(PeType::chernoff) &&
            at(PeType::chernoff) < at(PeType::serfling),
        "reference point: optimal nu* strictly ordered");
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4() {
    std::puts("criterion 4: exact tail enumeration and amplification-bound precision");
    int before = g_subfail;

    // exhaustive hypergeometric check against integer enumeration, N <= 20
    std::array<std::array<std::uint64_t, 21>, 21> C{};
    for (int i = 0; i <= 20; ++i) {
        C[std::size_t(i)][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[std::size_t(i)][std::size_t(j)] = C[std::size_t(i - 1)][std::size_t(j - 1)] +
                                                (j <= i - 1 ? C[std::size_t(i - 1)][std::size_t(j)] : 0);
    }
    std::size_t instances = 0, misses = 0;
    double worst = 0;
    for (long N = 1; N <= 20; ++N)
        for (long K = 0; K <= N; ++K)
            for (long n = 0; n <= N; ++n) {
                std::uint64_t total = C[std::size_t(N)][std::size_t(n)];
                for (long x = -1; x <= n; ++x) {
                    std::uint64_t num = 0;
                    for (long j = 0; j <= x && j <= K; ++j)
                        if (n - j <= N - K)
                            num += C[std::size_t(K)][std::size_t(j)] *
                                   C[std::size_t(N - K)][std::size_t(n - j)];
                    double diff = std::fabs(hypergeom_cdf(x, N, K, n) - double(num) / double(total));
                    worst = std::max(worst, diff);
                    ++instances;
                    if (diff > 1e-13) ++misses;
                }
            }
    sub(misses == 0, "hypergeometric tail: " + std::to_string(instances) +
                         " exhaustive instances, max |diff| = " + fmt("%.2e", worst));

    // amplification bound vs 200-bit references: 12 significant digits
    auto rows = testutil::load_jsonl("pa_bound_oracle.jsonl");
    std::size_t checked = 0;
    double worst_lin = 0, worst_log = 0;
    bool all_ok = true;
    for (const auto& row : rows) {
        long l = row["l"].get<long>();
        int t = row["t"].get<int>();
        double nu = std::strtod(row["nu"].get<std::string>().c_str(), nullptr);
        double delta = std::strtod(row["delta"].get<std::string>().c_str(), nullptr);
        long r = row["r"].get<long>();
        long n = row["n"].get<long>();
        double lg_ref = std::strtod(row["lg2"].get<std::string>().c_str(), nullptr);
        double eps_ref = std::strtod(row["eps"].get<std::string>().c_str(), nullptr);
        if (lg_ref >= 0) {
            all_ok = all_ok && eps_pa(l, t, nu, delta, r, n) == 1.0;
            continue;
        }
        ++checked;
        // equivalent 12-digit statement in log2 space for sub-double values
        double dlg = std::fabs(eps_pa_log2(l, t, nu, delta, r, n) - lg_ref);
        worst_log = std::max(worst_log, dlg * std::log(2.0));
        if (dlg * std::log(2.0) > 1e-12) all_ok = false;
        if (eps_ref >= 1e-300) {
            double rel = std::fabs(eps_pa(l, t, nu, delta, r, n) - eps_ref) / eps_ref;
            worst_lin = std::max(worst_lin, rel);
            if (rel > 1e-12) all_ok = false;
        }
    }
    sub(checked >= 100 && all_ok,
        "amplification bound: " + std::to_string(checked) + " random parameter sets, max rel " +
            fmt("%.2e", worst_lin) + " (linear), " + fmt("%.2e", worst_log) +
            " (log-equivalent), both <= 1e-12");
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5() {
    std::puts("criterion 5: ten seeded cycles, exact-tail estimator, realized-rate check");
    int before = g_subfail;
    std::map<long, long> l_ref_memo; // alpha*1e9 -> re-optimized l
    auto l_ref_at = [&](double alpha) {
        long key = std::lround(alpha * 1e9);
        auto it = l_ref_memo.find(key);
        if (it != l_ref_memo.end()) return it->second;
        auto cfg = full_cfg(6, PeType::cp_exact);
        cfg.params.delta = alpha;
        auto res = optimize(cfg);
        long l = res.l_max ? *res.l_max : -1;
        l_ref_memo[key] = l;
        return l;
    };

    std::size_t completed = 0, rt = 0, within = 0, sessions = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto cfg = proto_cfg(seed, 0.0644, PeType::cp_exact, /*coarse=*/false);
        auto la = make_shared_ledger(cfg, 1, seed ^ 0x9e9e);
        auto lb = make_shared_ledger(cfg, 1, seed ^ 0x9e9e);
        auto [a, b] = run_cycle(cfg, la, lb);
        bool done = a.status == CycleStatus::completed && b.status == CycleStatus::completed;
        if (done) ++completed;
        if (a.message_roundtrip_ok && b.message_roundtrip_ok) ++rt;
        if (!done) continue;
        // identical transcript-derived state on both ends
        if (!(a.session_l == b.session_l && a.session_alphas == b.session_alphas &&
              a.qkd_bits_extracted == b.qkd_bits_extracted))
            continue;
        for (std::size_t k = 0; k < a.session_l.size(); ++k) {
            ++sessions;
            long ref = l_ref_at(a.session_alphas[k]);
            if (ref > 0 && std::fabs(double(a.session_l[k]) - double(ref)) <= 0.10 * double(ref))
                ++within;
        }
    }
    sub(completed == 10, "cycles completed with matching peers: " + std::to_string(completed) + "/10");
    sub(rt == 10, "message round-trips: " + std::to_string(rt) + "/10");
    sub(sessions == 20 && within == sessions,
        "per-session key lengths within +-10% of the re-optimized value at the realized "
        "rate: " + std::to_string(within) + "/" + std::to_string(sessions));
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6() {
    std::puts("criterion 6: hard abort above threshold; tampering always trips the MAC");
    int before = g_subfail;

    std::size_t aborted = 0, clean = 0;
    for (std::uint64_t seed = 101; seed <= 110; ++seed) {
        auto cfg = proto_cfg(seed, 0.15, PeType::cp_exact, /*coarse=*/true);
        auto la = make_shared_ledger(cfg, 1, seed);
        auto lb = make_shared_ledger(cfg, 1, seed);
        auto [a, b] = run_cycle(cfg, la, lb);
        if (a.status == CycleStatus::abort_qber && b.status == CycleStatus::abort_qber) ++aborted;
        if (a.qkd_bits_extracted == 0 && b.qkd_bits_extracted == 0 && a.session_l.empty()) ++clean;
    }
    sub(aborted == 10, "qber 0.15 cycles aborted at the 0.11 threshold: " + std::to_string(aborted) + "/10");
    sub(clean == 10, "no key material released in aborted cycles: " + std::to_string(clean) + "/10");

    std::size_t mac_aborts = 0;
    const std::size_t recv_slots = 24; // responder receive positions in one honest cycle
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto cfg = proto_cfg(1000 + trial, 0.0644, PeType::cp_exact, /*coarse=*/true);
        auto la = make_shared_ledger(cfg, 1, trial);
        auto lb = make_shared_ledger(cfg, 1, trial);
        auto [ca, cb] = make_inproc_pair();
        TamperingChannel tampered(std::move(cb), trial % recv_slots,
                                  [](std::vector<std::uint8_t>& b) { b.back() ^= 0x01; });
        CycleReport rb;
        std::thread bob([&] { rb = run_party(Role::responder, cfg, tampered, lb, 0xb0b); });
        auto ra = run_party(Role::initiator, cfg, *ca, la, 0xa11ce);
        bob.join();
        if (ra.status == CycleStatus::abort_mac && rb.status == CycleStatus::abort_mac &&
            !ra.message_roundtrip_ok)
            ++mac_aborts;
    }
    sub(mac_aborts == 100, "tampered frames aborted via MAC failure: " +
                               std::to_string(mac_aborts) + "/100 trials");
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7() {
    std::puts("criterion 7: flat envelope size, legacy blowup, step count (no wall-clock)");
    int before = g_subfail;

    Rng rng(0x77);
    auto msg = rng.bytes(102);
    const std::size_t padded = 112;
    bool size_ok = true, steps_ok = true;
    for (unsigned n_obs = 2; n_obs <= 10; ++n_obs) {
        unsigned gamma = (n_obs + 1) / 2;
        KeyBundle keys;
        for (unsigned k = 0; k < gamma; ++k) keys.qkd_keys.push_back(rng.bits(padded * 8));
        keys.aes_key = rng.bits(256);
        keys.split = split_shared_secret(rng.bits(256));
        std::array<std::uint8_t, 15> sid{};
        std::array<std::uint8_t, 16> v{};
        std::uint64_t space = std::uint64_t(1) << n_obs;
        for (std::uint64_t idx = 0; idx < std::min<std::uint64_t>(space, 32); ++idx) {
            auto is = unrank_is(idx, n_obs);
            steps_ok = steps_ok && is.steps.size() == 3 * ((n_obs + 1) / 2);
            auto env = he_encrypt(is, msg, keys, sid, v, {0x01});
            size_ok = size_ok && env.final_ct.size() == padded + 16 * gamma;
        }
    }
    sub(size_ok, "envelope body constant at pad(|m|); growth = 16 bytes per authenticated "
                 "step (gamma tags) for n_obs in [2,10]");
    sub(steps_ok, "cascade step count = 3*ceil(n_obs/2) exactly for n_obs in [2,10]");

    // measured on a full protocol run as well
    auto cfg = proto_cfg(77, 0.0644, PeType::cp_exact, /*coarse=*/true);
    cfg.n_obs = 6;
    auto la = make_shared_ledger(cfg, 1, 3);
    auto lb = make_shared_ledger(cfg, 1, 3);
    auto [a, b] = run_cycle(cfg, la, lb);
    sub(a.status == CycleStatus::completed && a.he_steps == 9 && b.he_steps == 9,
        "protocol-measured cascade steps at n_obs = 6: " + std::to_string(a.he_steps) + " = 9");

    bool legacy_ok = true;
    for (unsigned n_obs : {2u, 4u, 6u, 8u, 10u}) {
        auto is = unrank_is(0, n_obs);
        auto model = legacy_size_model(n_obs, 256);
        std::uint64_t prev = 256;
        for (std::size_t k = 0; k < is.steps.size(); ++k) {
            if (is.steps[k] == Scheme::ASCON && model.layer_bits[k] < 24 * prev) legacy_ok = false;
            prev = model.layer_bits[k];
        }
    }
    sub(legacy_ok, "legacy stack model grows >= 24x per public-key layer on 256-bit blocks");
    std::puts("    note: wall-clock step timings are intentionally not reproduced or compared;"
              " only structural counts and sizes are gated.");
    return g_subfail == before;
}

// ---------------------------------------------------------------- criterion 8
bool criterion8() {
    std::puts("criterion 8: primitive vectors, cascade identity, sequence codec");
    int before = g_subfail;
    using testutil::hex;
    using testutil::unhex;
    using testutil::unhex_arr;

    std::size_t aes_bad = 0;
    for (const auto& row : testutil::load_jsonl("aes_kat.jsonl")) {
        auto key = unhex_arr<32>(row["key"].get<std::string>());
        auto pt = unhex(row["pt"].get<std::string>());
        std::uint8_t out[16];
        Aes256(key).encrypt_block(pt.data(), out);
        if (hex({out, out + 16}) != row["ct"].get<std::string>()) ++aes_bad;
    }
    sub(aes_bad == 0, "block cipher vectors: 25 records");

    std::size_t ascon_bad = 0;
    for (const auto& row : testutil::load_jsonl("ascon128_kat.jsonl")) {
        auto key = unhex_arr<16>(row["key"].get<std::string>());
        auto nonce = unhex_arr<16>(row["nonce"].get<std::string>());
        auto ad = unhex(row["ad"].get<std::string>());
        auto pt = unhex(row["pt"].get<std::string>());
        auto ct = ascon128_encrypt(key, nonce, ad, pt);
        auto back = ascon128_decrypt(key, nonce, ad, ct);
        if (hex(ct) != row["ct"].get<std::string>() || !back || *back != pt) ++ascon_bad;
    }
    sub(ascon_bad == 0, "authenticated cipher vectors: 50 records");

    std::size_t sha_bad = 0;
    for (const auto& row : testutil::load_jsonl("sha3_kat.jsonl")) {
        auto msg = unhex(row["msg"].get<std::string>());
        if (hex(sha3_256(msg)) != row["sha3_256"].get<std::string>() ||
            hex(sha3_512(msg)) != row["sha3_512"].get<std::string>() ||
            hex(shake128(msg, 32)) != row["shake128_32"].get<std::string>() ||
            hex(shake256(msg, 64)) != row["shake256_64"].get<std::string>())
            ++sha_bad;
    }
    sub(sha_bad == 0, "digest/xof vectors: 15 records");

    std::size_t kem_bad = 0;
    for (const auto& row : testutil::load_jsonl("mlkem512_kat.jsonl")) {
        auto kp = mlkem512_keygen(unhex_arr<32>(row["d"].get<std::string>()),
                                  unhex_arr<32>(row["z"].get<std::string>()));
        auto enc = mlkem512_encaps(kp.ek, unhex_arr<32>(row["m"].get<std::string>()));
        auto dec = mlkem512_decaps(kp.dk, enc.ct);
        auto rej = mlkem512_decaps(kp.dk, unhex(row["ct_bad"].get<std::string>()));
        if (hex(kp.ek) != row["ek"].get<std::string>() ||
            hex(kp.dk) != row["dk"].get<std::string>() ||
            hex(enc.ct) != row["ct"].get<std::string>() ||
            hex({enc.shared_secret.begin(), enc.shared_secret.end()}) !=
                row["ss"].get<std::string>() ||
            !std::equal(dec.begin(), dec.end(), enc.shared_secret.begin()) ||
            hex({rej.begin(), rej.end()}) != row["ss_bad"].get<std::string>())
            ++kem_bad;
    }
    sub(kem_bad == 0, "encapsulation vectors incl. implicit rejection: 10 records");

    // decrypt(encrypt(m)) identity over 500 randomized (sequence, message) pairs
    Rng rng(0x1d);
    std::size_t rt_bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
        unsigned n_obs = std::array<unsigned, 9>{2, 3, 4, 5, 6, 7, 8, 9, 10}[rng.next_u64() % 9];
        unsigned gamma = (n_obs + 1) / 2;
        auto is = unrank_is(rng.next_u64() % (std::uint64_t(1) << n_obs), n_obs);
        auto m = rng.bytes(rng.next_u64() % 300);
        std::size_t padded_bits = ((m.size() / 16) + 1) * 16 * 8;
        KeyBundle keys;
        for (unsigned k = 0; k < gamma; ++k) keys.qkd_keys.push_back(rng.bits(padded_bits));
        keys.aes_key = rng.bits(256);
        keys.split = split_shared_secret(rng.bits(256));
        std::array<std::uint8_t, 15> sid{};
        auto sb = rng.bytes(15);
        std::copy(sb.begin(), sb.end(), sid.begin());
        std::array<std::uint8_t, 16> v{};
        auto vb = rng.bytes(16);
        std::copy(vb.begin(), vb.end(), v.begin());
        auto env = he_encrypt(is, m, keys, sid, v, rng.bytes(9));
        if (he_decrypt(env, is, keys) != m) ++rt_bad;
    }
    sub(rt_bad == 0, "cascade identity: 500/500 randomized round-trips");

    // sequence codec: exhaustive for n_obs <= 6
    bool codec_ok = true;
    std::size_t codec_checked = 0;
    for (unsigned n_obs : {0u, 2u, 3u, 4u, 5u, 6u}) {
        unsigned gamma = (n_obs + 1) / 2;
        auto family = enumerate_family(gamma);
        codec_ok = codec_ok && family.size() == count_valid(n_obs);
        for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n_obs); ++idx) {
            auto is = unrank_is(idx, n_obs);
            codec_ok = codec_ok && is.steps == family[idx] && rank_is(is) == idx;
            ++codec_checked;
        }
    }
    sub(codec_ok, "sequence rank/unrank: exhaustive round-trip over " +
                      std::to_string(codec_checked) + " indices, n_obs <= 6");
    return g_subfail == before;
}

} // namespace

int main() {
    std::puts("=== acceptance gate ===");
    auto t0 = std::chrono::steady_clock::now();
    C1Result c1;
    struct Row {
        int id;
        bool pass;
    };
    std::vector<Row> rows;
    rows.push_back({1, criterion1(c1)});
    rows.push_back({2, criterion2()});
    rows.push_back({3, criterion3(c1)});
    rows.push_back({4, criterion4()});
    rows.push_back({5, criterion5()});
    rows.push_back({6, criterion6()});
    rows.push_back({7, criterion7()});
    rows.push_back({8, criterion8()});

    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::puts("=== summary ===");
    int failed = 0;
    for (const auto& row : rows) {
        std::printf("[%s] criterion %d\n", row.pass ? "PASS" : "FAIL", row.id);
        if (!row.pass) ++failed;
    }
    std::printf("%d/8 criteria passed in %.1f s\n", 8 - failed, elapsed);
    if (failed)
        std::puts("failing sub-checks are annotated above; the known estimator-table nu "
                  "discrepancy is analyzed in README.md");
    return failed;
}
