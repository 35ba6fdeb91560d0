#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hqkd/envelope.hpp"
#include "hqkd/instruction_seq.hpp"
#include "hqkd/ldpc.hpp"
#include "hqkd/optimizer.hpp"
#include "hqkd/protocol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;   // no positive key length / cycle abort
constexpr int kExitValidation = 3;   // bad flags or parameter domain
constexpr int kExitTolerance = 4;    // reproduction outside pinned tolerance

// Each verb emits exactly one CSV table: a schema comment, a header row and
// data rows. With --out the table goes to the file and the human summary to
// stdout; otherwise the table goes to stdout and the summary to stderr.
struct CsvSink {
    std::string out_path;
    std::ostringstream buf;

    std::ostream& csv() { return buf; }
    std::ostream& human() const {
        return out_path.empty() ? std::cerr : std::cout;
    }
    void flush() {
        if (out_path.empty()) {
            std::cout << buf.str();
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << buf.str();
    }
};

hqkd::LdpcCode load_code(const std::string& path) {
    namespace fs = std::filesystem;
    if (!path.empty() && fs::exists(path)) return hqkd::LdpcCode::load(path);
    // The artifact is reproducible: regenerating from the fixed seed yields
    // the identical matrix, so a missing file is not an error.
    return hqkd::LdpcCode::generate(hqkd::kLdpcRows, hqkd::kLdpcCols,
                                    hqkd::kLdpcRowWeight, hqkd::kLdpcArtifactSeed);
}

hqkd::OptimizerConfig build_opt(const hqkd::SecurityParams& params, const std::string& pe,
                                const std::string& grid, unsigned threads) {
    hqkd::OptimizerConfig oc;
    oc.params = params;
    auto pt = hqkd::pe_type_from_string(pe);
    if (!pt) throw CLI::ValidationError("--pe", "unknown estimator: " + pe);
    oc.pe_type = *pt;
    if (grid == "coarse") oc.coarse();
    else if (grid != "full") throw CLI::ValidationError("--grid", "expected full|coarse");
    oc.threads = threads;
    return oc;
}

int cmd_optimize(CsvSink& sink, const hqkd::SecurityParams& params, const std::string& pe,
                 const std::string& grid, unsigned threads) {
    params.validate();
    auto oc = build_opt(params, pe, grid, threads);
    auto res = hqkd::optimize(oc);
    sink.csv() << "# schema: optimize.v1\n" << hqkd::optimizer_csv_header() << '\n'
               << hqkd::optimizer_csv_row(oc, res) << '\n';
    sink.flush();
    sink.human() << hqkd::feasibility_report(oc, res);
    if (!res.l_max) {
        sink.human() << "no positive key length is feasible for this configuration\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_table1(CsvSink& sink, int s, const std::string& grid, unsigned threads) {
    // Reference operating point: N=2e4, n=1e4, delta=0.0627, r=5000, p=61, q=1.
    auto params = hqkd::SecurityParams::make(s, 20000, 0.0627);
    struct Row { hqkd::PeType pe; double target_loN; };
    // Pinned key-fraction targets for s=6 (tolerance +-0.002). The deviation
    // parameters nu* are reported for inspection but not gated here: the
    // acceptance suite pins them separately, with the one known discrepancy
    // for the relaxed-Chernoff row documented in the README.
    const std::vector<Row> rows = {{hqkd::PeType::serfling, 0.003},
                                   {hqkd::PeType::chernoff, 0.027},
                                   {hqkd::PeType::cp_exact, 0.066}};
    sink.csv() << "# schema: table1.v1\n" << hqkd::optimizer_csv_header() << '\n';
    bool breach = false;
    for (const auto& row : rows) {
        hqkd::OptimizerConfig oc;
        oc.params = params;
        oc.pe_type = row.pe;
        if (grid == "coarse") oc.coarse();
        oc.threads = threads;
        auto res = hqkd::optimize(oc);
        sink.csv() << hqkd::optimizer_csv_row(oc, res) << '\n';
        double loN = res.l_max ? double(*res.l_max) / double(params.N) : 0.0;
        std::string nu = res.nu_star ? std::to_string(*res.nu_star) : "-";
        sink.human() << to_string(row.pe) << ": nu*=" << nu << " l/N=" << loN
                     << " (target " << row.target_loN << " +-0.002)";
        if (s == 6 && std::abs(loN - row.target_loN) > 0.002) {
            sink.human() << "  [OUT OF TOLERANCE]";
            breach = true;
        }
        sink.human() << '\n';
    }
    sink.flush();
    return breach ? kExitTolerance : kExitOk;
}

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(10);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
    return os.str();
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
    return os.str();
}

const char* kCycleCsvHeader =
    "cycle_id,status,n_obs,gamma,alphas,session_l,qkd_bits,qkd_s,pqc_s,he_s,"
    "he_steps,envelope_bytes,roundtrip_ok,psk_bits_consumed";

void cycle_csv_row(std::ostream& os, std::uint64_t id, const hqkd::CycleReport& a) {
    os << id << ',' << to_string(a.status) << ',' << a.n_obs << ',' << a.gamma << ','
       << join_doubles(a.session_alphas) << ',' << join_sizes(a.session_l) << ','
       << a.qkd_bits_extracted << ',' << a.qkd_s << ',' << a.pqc_s << ',' << a.he_s << ','
       << a.he_steps << ',' << a.envelope_bytes << ','
       << (a.message_roundtrip_ok ? 1 : 0) << ',' << a.psk_bits_consumed << '\n';
}

hqkd::CycleConfig build_cycle_cfg(const hqkd::SecurityParams& params, unsigned n_obs,
                                  double qber, const std::string& pe, const std::string& grid,
                                  unsigned threads, std::uint64_t seed,
                                  const std::string& message, const hqkd::LdpcCode* code) {
    hqkd::CycleConfig cfg;
    cfg.params = params;
    cfg.opt = build_opt(params, pe, grid, threads);
    cfg.n_obs = n_obs;
    cfg.qber = qber;
    cfg.seed = seed;
    cfg.code = code;
    cfg.message = message.empty()
                      ? hqkd::sample_message_102()
                      : std::vector<std::uint8_t>(message.begin(), message.end());
    return cfg;
}

int cmd_cycle(CsvSink& sink, hqkd::CycleConfig cfg, const std::string& transport) {
    hqkd::PskLedger la = hqkd::make_shared_ledger(cfg, 1, cfg.seed ^ 0x505eedULL);
    hqkd::PskLedger lb = hqkd::make_shared_ledger(cfg, 1, cfg.seed ^ 0x505eedULL);
    auto [ra, rb] = (transport == "tcp") ? hqkd::run_cycle_tcp(cfg, la, lb)
                                         : hqkd::run_cycle(cfg, la, lb);
    hqkd::CycleReport rep = hqkd::merge_reports(std::move(ra), rb);
    sink.csv() << "# schema: cycle.v1\n" << kCycleCsvHeader << '\n';
    cycle_csv_row(sink.csv(), cfg.cycle_id, rep);
    sink.flush();
    sink.human() << "cycle " << to_string(rep.status) << " (" << transport << "): gamma="
                 << rep.gamma << " qkd_bits=" << rep.qkd_bits_extracted
                 << " envelope_bytes=" << rep.envelope_bytes
                 << " roundtrip=" << (rep.message_roundtrip_ok ? "ok" : "failed") << '\n';
    return rep.status == hqkd::CycleStatus::completed ? kExitOk : kExitInfeasible;
}

int cmd_batch(CsvSink& sink, const hqkd::CycleConfig& cfg, std::size_t cycles) {
    if (cycles == 0) throw CLI::ValidationError("--cycles", "must be >= 1");
    auto rep = hqkd::run_batch(cfg, cycles);
    sink.csv() << "# schema: batch.v1\n" << kCycleCsvHeader << '\n';
    for (std::size_t i = 0; i < rep.cycles.size(); ++i)
        cycle_csv_row(sink.csv(), cfg.cycle_id + i, rep.cycles[i]);
    sink.flush();
    sink.human() << "batch: " << rep.completed << '/' << cycles << " cycles completed, "
                 << rep.total_bits_extracted << " bits extracted, qkd key rate "
                 << rep.qkd_key_rate_bits_per_s << " bits/s\n";
    return kExitOk;
}

int cmd_sweep_nobs(CsvSink& sink, const hqkd::SecurityParams& params,
                   const std::vector<unsigned>& nobs_list, std::size_t cycles, double qber,
                   const std::string& pe, const std::string& grid, unsigned threads,
                   std::uint64_t seed, const hqkd::LdpcCode* code) {
    if (cycles == 0) throw CLI::ValidationError("--cycles", "must be >= 1");
    if (nobs_list.empty()) throw CLI::ValidationError("--nobs-list", "must be non-empty");
    sink.csv() << "# schema: sweep_nobs.v1\n"
               << "n_obs,gamma,cycles,completed,total_bits,qkd_s,pqc_s,he_s,"
                  "qkd_rate_bits_s,avg_envelope_bytes,plus_bits,legacy_bits,"
                  "legacy_over_plus\n";
    for (unsigned n_obs : nobs_list) {
        auto cfg = build_cycle_cfg(params, n_obs, qber, pe, grid, threads, seed, "", code);
        auto rep = hqkd::run_batch(cfg, cycles);
        double env_sum = 0;
        for (const auto& c : rep.cycles) env_sum += double(c.envelope_bytes);
        double env_avg = rep.cycles.empty() ? 0 : env_sum / double(rep.cycles.size());
        std::uint64_t msg_bits = std::uint64_t(cfg.message.size()) * 8;
        std::uint64_t plus = hqkd::plus_envelope_bits(n_obs, msg_bits);
        std::uint64_t legacy = hqkd::legacy_size_model(n_obs, msg_bits).final_bits;
        sink.csv() << n_obs << ',' << (n_obs + 1) / 2 << ',' << cycles << ','
                   << rep.completed << ',' << rep.total_bits_extracted << ','
                   << rep.total_qkd_s << ',' << rep.total_pqc_s << ',' << rep.total_he_s
                   << ',' << rep.qkd_key_rate_bits_per_s << ',' << env_avg << ',' << plus
                   << ',' << legacy << ',' << double(legacy) / double(plus) << '\n';
        sink.human() << "n_obs=" << n_obs << ": " << rep.completed << '/' << cycles
                     << " completed, rate " << rep.qkd_key_rate_bits_per_s << " bits/s\n";
    }
    sink.flush();
    return kExitOk;
}

int cmd_size_model(CsvSink& sink, const std::vector<unsigned>& nobs_list,
                   std::uint64_t msg_bits) {
    if (nobs_list.empty()) throw CLI::ValidationError("--nobs-list", "must be non-empty");
    sink.csv() << "# schema: size_model.v1\n"
               << "n_obs,msg_bits,plus_bits,legacy_bits,legacy_over_plus,legacy_layers\n";
    for (unsigned n_obs : nobs_list) {
        auto legacy = hqkd::legacy_size_model(n_obs, msg_bits);
        std::uint64_t plus = hqkd::plus_envelope_bits(n_obs, msg_bits);
        sink.csv() << n_obs << ',' << msg_bits << ',' << plus << ',' << legacy.final_bits
                   << ',' << double(legacy.final_bits) / double(plus) << ',';
        for (std::size_t i = 0; i < legacy.layer_bits.size(); ++i)
            sink.csv() << (i ? ";" : "") << legacy.layer_bits[i];
        sink.csv() << '\n';
    }
    sink.flush();
    sink.human() << "size model rows: " << nobs_list.size() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-key security calculus and hybrid QKD-PQC cycle toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags (--seed, --out, ...) usable after the verb
    app.set_config("--config")->envname("HQKD_CONFIG");

    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_path;
    app.add_option("--seed", seed, "Deterministic seed for all randomized steps");
    app.add_option("--threads", threads, "Optimizer worker threads (0 = hardware)");
    app.add_option("--out", out_path, "Write the CSV table to this file");

    // Shared finite-key parameters.
    int s = 6;
    long N = 20000;
    double delta = 0.0627;
    int p = 61, q = 1;
    long r = 5000;
    std::string pe = "cp_exact";
    std::string grid = "full";

    auto add_params = [&](CLI::App* cmd, bool with_delta) {
        cmd->add_option("--s", s, "Security exponent (eps_qkd = 10^-s)");
        cmd->add_option("--N", N, "Raw bits per session");
        if (with_delta) cmd->add_option("--delta", delta, "QBER threshold");
        cmd->add_option("--p", p, "MAC tag bits");
        cmd->add_option("--q", q, "MAC tag count");
        cmd->add_option("--r", r, "Error-correction syndrome bits");
        cmd->add_option("--pe", pe, "Estimator: serfling|chernoff|cp_exact");
        cmd->add_option("--grid", grid, "Search grid: full|coarse");
    };

    auto* c_opt = app.add_subcommand("optimize", "Maximize the extractable key length");
    add_params(c_opt, true);

    auto* c_t1 = app.add_subcommand("table1",
                                    "Reproduce the three-estimator reference point");
    c_t1->add_option("--s", s, "Security exponent");
    c_t1->add_option("--grid", grid, "Search grid: full|coarse");

    // Cycle-family flags.
    unsigned n_obs = 4;
    double qber = 0.0644;
    std::size_t cycles = 10;
    std::string transport = "inproc";
    std::string message;
    std::string ldpc_path = "data/ldpc_5000x10000.txt";
    std::vector<unsigned> nobs_list;
    std::uint64_t msg_bits = 816;

    auto add_cycle_flags = [&](CLI::App* cmd) {
        add_params(cmd, false);
        cmd->add_option("--nobs", n_obs, "Security strength (observable count)");
        cmd->add_option("--qber", qber, "Simulated channel error rate");
        cmd->add_option("--message", message, "Payload text (default: 102-byte sample)");
        cmd->add_option("--ldpc", ldpc_path, "Parity-check matrix file");
    };

    auto* c_cyc = app.add_subcommand("cycle", "Run one two-party hybrid cycle");
    add_cycle_flags(c_cyc);
    c_cyc->add_option("--transport", transport, "inproc|tcp");

    auto* c_bat = app.add_subcommand("batch", "Run a batch of cycles and aggregate");
    add_cycle_flags(c_bat);
    c_bat->add_option("--cycles", cycles, "Number of cycles");

    auto* c_swp = app.add_subcommand("sweep-nobs", "Batch per security strength");
    add_cycle_flags(c_swp);
    c_swp->add_option("--cycles", cycles, "Cycles per strength");
    c_swp->add_option("--nobs-list", nobs_list, "Strengths to sweep")->delimiter(',');

    auto* c_sm = app.add_subcommand("size-model", "Ciphertext-growth comparison table");
    c_sm->add_option("--nobs-list", nobs_list, "Strengths to tabulate")->delimiter(',');
    c_sm->add_option("--msg-bits", msg_bits, "Message size in bits");

    auto* c_exp = app.add_subcommand("export", "Write a named table to --out");
    std::string what = "table1";
    c_exp->add_option("--what", what, "table1|sweep-nobs|size-model");
    add_cycle_flags(c_exp);
    c_exp->add_option("--cycles", cycles, "Cycles per strength (sweeps)");
    c_exp->add_option("--nobs-list", nobs_list, "Strengths (sweeps/size model)");
    c_exp->add_option("--msg-bits", msg_bits, "Message size in bits (size model)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    CsvSink sink;
    sink.out_path = out_path;
    try {
        if (app.got_subcommand(c_opt)) {
            auto params = hqkd::SecurityParams::make(s, N, delta, p, q, r);
            return cmd_optimize(sink, params, pe, grid, threads);
        }
        if (app.got_subcommand(c_t1)) {
            return cmd_table1(sink, s, grid, threads);
        }
        if (app.got_subcommand(c_cyc) || app.got_subcommand(c_bat) ||
            app.got_subcommand(c_swp)) {
            auto params = hqkd::SecurityParams::make(s, N, 0.0627, p, q, r);
            auto code = load_code(ldpc_path);
            if (app.got_subcommand(c_cyc)) {
                auto cfg =
                    build_cycle_cfg(params, n_obs, qber, pe, grid, threads, seed, message, &code);
                return cmd_cycle(sink, cfg, transport);
            }
            if (app.got_subcommand(c_bat)) {
                auto cfg =
                    build_cycle_cfg(params, n_obs, qber, pe, grid, threads, seed, message, &code);
                return cmd_batch(sink, cfg, cycles);
            }
            if (nobs_list.empty()) nobs_list = {2, 4, 6};
            return cmd_sweep_nobs(sink, params, nobs_list, cycles, qber, pe, grid, threads,
                                  seed, &code);
        }
        if (app.got_subcommand(c_sm)) {
            if (nobs_list.empty()) nobs_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
            return cmd_size_model(sink, nobs_list, msg_bits);
        }
        if (app.got_subcommand(c_exp)) {
            if (out_path.empty())
                throw CLI::ValidationError("--out", "export requires an output file");
            if (what == "table1") return cmd_table1(sink, s, grid, threads);
            if (what == "sweep-nobs") {
                auto params = hqkd::SecurityParams::make(s, N, 0.0627, p, q, r);
                auto code = load_code(ldpc_path);
                if (nobs_list.empty()) nobs_list = {2, 4, 6};
                return cmd_sweep_nobs(sink, params, nobs_list, cycles, qber, pe, grid,
                                      threads, seed, &code);
            }
            if (what == "size-model") {
                if (nobs_list.empty()) nobs_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
                return cmd_size_model(sink, nobs_list, msg_bits);
            }
            throw CLI::ValidationError("--what", "unknown table: " + what);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    return kExitOk;
}
