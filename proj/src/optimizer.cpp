#include "hqkd/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hqkd {

const char* to_string(PeType t) {
    switch (t) {
        case PeType::serfling: return "serfling";
        case PeType::chernoff: return "chernoff";
        case PeType::cp_exact: return "cp_exact";
    }
    return "?";
}

std::optional<PeType> pe_type_from_string(const std::string& s) {
    if (s == "serfling") return PeType::serfling;
    if (s == "chernoff") return PeType::chernoff;
    if (s == "cp_exact" || s == "cp") return PeType::cp_exact;
    return std::nullopt;
}

std::optional<long> candidate_key_length(double B, double delta, double nu,
                                         long n, long r, int t) {
    if (!(B > 0.0)) return std::nullopt;
    double H = binary_entropy(delta + nu);
    double l_est = std::log2(4.0 * B * B) + double(n) * (1.0 - H) - double(r) - double(t);
    if (!(l_est > 0.0)) return std::nullopt;
    long l = long(std::floor(l_est));
    if (l <= 0) return std::nullopt;
    return l;
}

namespace {

struct Best {
    long l = -1;
    double nu = 0, mu = -1;
    EpsilonBudget budget;

    // larger l wins; ties broken toward smaller nu, then smaller mu
    bool beats(const Best& o) const {
        if (l != o.l) return l > o.l;
        if (nu != o.nu) return nu < o.nu;
        return mu < o.mu;
    }
};

struct GridCtx {
    const OptimizerConfig& cfg;
    double eps_qkd, e_auth, e_ec;
    double nu_lo, nu_hi, nu_step;
    long P;

    explicit GridCtx(const OptimizerConfig& c) : cfg(c) {
        const auto& sp = c.params;
        eps_qkd = sp.eps_qkd();
        e_auth = eps_auth(sp.q, sp.p);
        e_ec = eps_ec_and_t(sp.s).second;
        nu_lo = c.nu_lo;
        nu_hi = 0.5 - sp.delta - 1e-6;
        P = c.nu_grid_points;
        nu_step = (P > 1) ? (nu_hi - nu_lo) / double(P - 1) : 0.0;
    }

    double nu_at(long i) const {
        return nu_lo + (nu_hi - nu_lo) * double(i) / double(P - 1);
    }

    // Budget check for one (nu, eps_pe) candidate; updates best in place.
    void consider(double nu, double mu, double e_pe, Best& best) const {
        const auto& sp = cfg.params;
        double B = eps_qkd - e_ec - 2.0 * e_pe - e_auth;
        auto l = candidate_key_length(B, sp.delta, nu, sp.n, sp.r, sp.t);
        if (!l) return;
        double e_pa = eps_pa(*l, sp.t, nu, sp.delta, sp.r, sp.N - sp.n);
        double e_total = e_auth + e_ec + e_pa + 2.0 * e_pe;
        if (e_total > eps_qkd * (1.0 + cfg.slack)) return;
        Best cand;
        cand.l = *l;
        cand.nu = nu;
        cand.mu = mu;
        cand.budget = EpsilonBudget{e_auth, e_ec, e_pa, e_pe, e_total, eps_qkd};
        if (cand.beats(best)) best = cand;
    }
};

Best scan_serfling_range(const GridCtx& g, long i0, long i1) {
    Best best;
    const auto& sp = g.cfg.params;
    long M = g.cfg.mu_grid_points;
    for (long i = i0; i < i1; ++i) {
        double nu = g.nu_at(i);
        double mu_lo = 1e-7, mu_hi = nu - 1e-7;
        if (mu_hi <= mu_lo) continue;
        for (long j = 0; j < M; ++j) {
            double mu = (M > 1) ? mu_lo + (mu_hi - mu_lo) * double(j) / double(M - 1)
                                : mu_lo;
            double e_pe = eps_pe_serfling(nu, mu, sp.delta, sp.N, sp.n);
            g.consider(nu, mu, e_pe, best);
        }
    }
    return best;
}

} // namespace

OptimizationResult optimize(const OptimizerConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& sp = cfg.params;
    sp.validate();
    if (sp.n != sp.N / 2)
        throw std::invalid_argument("optimize: n must equal floor(N/2)");
    if (cfg.nu_grid_points < 2)
        throw std::invalid_argument("optimize: nu_grid_points must be >= 2");

    GridCtx g(cfg);
    Best best;

    switch (cfg.pe_type) {
        case PeType::serfling: {
            unsigned T = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
            T = std::max(1u, std::min<unsigned>(T, 64));
            if (T == 1 || g.P < 256) {
                best = scan_serfling_range(g, 0, g.P);
            } else {
                std::vector<Best> parts(T);
                std::vector<std::thread> th;
                long chunk = (g.P + T - 1) / T;
                for (unsigned k = 0; k < T; ++k) {
                    long i0 = long(k) * chunk, i1 = std::min<long>(i0 + chunk, g.P);
                    if (i0 >= i1) break;
                    th.emplace_back([&, k, i0, i1] { parts[k] = scan_serfling_range(g, i0, i1); });
                }
                for (auto& t : th) t.join();
                for (const auto& p : parts)
                    if (p.l >= 0 && (best.l < 0 || p.beats(best))) best = p;
            }
            break;
        }
        case PeType::chernoff: {
            for (long i = 0; i < g.P; ++i) {
                double nu = g.nu_at(i);
                auto e_pe = eps_pe_chernoff(sp.delta, nu, sp.N, sp.n, cfg.chernoff_tol);
                if (!e_pe) continue;
                g.consider(nu, -1.0, *e_pe, best);
            }
            break;
        }
        case PeType::cp_exact: {
            // eps_pe_cp depends on nu only through the integer K: walk the
            // grid once, evaluating each distinct K a single time.
            long last_K = -1;
            double last_eps = 1.0;
            for (long i = 0; i < g.P; ++i) {
                double nu = g.nu_at(i);
                long K = cp_error_count(sp.delta, nu, sp.N, sp.n, cfg.cp.model);
                if (K != last_K) {
                    last_K = K;
                    last_eps = eps_pe_cp(sp.delta, nu, sp.N, sp.n, cfg.cp);
                }
                g.consider(nu, -1.0, last_eps, best);
            }
            break;
        }
    }

    OptimizationResult res;
    res.grid_resolution = g.nu_step;
    if (best.l >= 0) {
        res.l_max = best.l;
        res.nu_star = best.nu;
        if (best.mu >= 0) res.mu_star = best.mu;
        res.budget = best.budget;
    } else {
        res.budget.eps_qkd = g.eps_qkd;
        res.budget.eps_auth = g.e_auth;
        res.budget.eps_ec = g.e_ec;
    }
    res.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string feasibility_report(const OptimizerConfig& cfg, const OptimizationResult& res) {
    std::ostringstream os;
    const auto& sp = cfg.params;
    os.precision(12);
    os << "pe_type=" << to_string(cfg.pe_type) << " s=" << sp.s << " N=" << sp.N
       << " n=" << sp.n << " delta=" << sp.delta << "\n";
    if (res.l_max) {
        os << "l=" << *res.l_max << " l/N=" << double(*res.l_max) / double(sp.N)
           << " nu*=" << *res.nu_star;
        if (res.mu_star) os << " mu*=" << *res.mu_star;
        os << "\n";
    } else {
        os << "no positive key length is feasible (all candidate B <= 0 or l <= 0)\n";
    }
    const auto& b = res.budget;
    os << "eps_auth=" << b.eps_auth << " eps_ec=" << b.eps_ec << " eps_pa=" << b.eps_pa
       << " eps_pe=" << b.eps_pe << "\n";
    os << "eps_total=" << b.eps_total << " eps_qkd=" << b.eps_qkd << "\n";
    os << "grid_step=" << res.grid_resolution << " elapsed_s=" << res.elapsed_s << "\n";
    return os.str();
}

std::string optimizer_csv_header() {
    return "pe_type,s,N,n,delta,nu_star,mu_star,l,l_over_N,"
           "eps_auth,eps_ec,eps_pa,eps_pe,eps_total,eps_qkd,elapsed_s";
}

std::string optimizer_csv_row(const OptimizerConfig& cfg, const OptimizationResult& res) {
    std::ostringstream os;
    os.precision(12);
    const auto& sp = cfg.params;
    os << to_string(cfg.pe_type) << ',' << sp.s << ',' << sp.N << ',' << sp.n << ','
       << sp.delta << ',';
    if (res.nu_star) os << *res.nu_star;
    os << ',';
    if (res.mu_star) os << *res.mu_star;
    os << ',';
    if (res.l_max) os << *res.l_max;
    os << ',';
    if (res.l_max) os << double(*res.l_max) / double(sp.N);
    os << ',';
    const auto& b = res.budget;
    os << b.eps_auth << ',' << b.eps_ec << ',' << b.eps_pa << ',' << b.eps_pe << ','
       << b.eps_total << ',' << b.eps_qkd << ',' << res.elapsed_s;
    return os.str();
}

} // namespace hqkd
