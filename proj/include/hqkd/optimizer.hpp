#pragma once

#include <optional>
#include <string>

#include "hqkd/bounds.hpp"

namespace hqkd {

enum class PeType { serfling, chernoff, cp_exact };

const char* to_string(PeType t);
std::optional<PeType> pe_type_from_string(const std::string& s);

struct OptimizerConfig {
    SecurityParams params;
    PeType pe_type = PeType::cp_exact;
    long nu_grid_points = 100000;   // full ("golden") grid
    long mu_grid_points = 1000;     // serfling only
    double nu_lo = 1e-6;
    double slack = 1e-10;           // budget tolerance multiplier
    CpOptions cp;
    double chernoff_tol = 1e-9;
    unsigned threads = 0;           // 0 = hardware concurrency

    // CI preset: 2000 nu points, 100 mu points.
    OptimizerConfig& coarse() {
        nu_grid_points = 2000;
        mu_grid_points = 100;
        return *this;
    }
};

struct OptimizationResult {
    std::optional<long> l_max;          // none = no feasible grid point
    std::optional<double> nu_star;
    std::optional<double> mu_star;      // serfling only
    EpsilonBudget budget;
    double grid_resolution = 0;         // nu step
    double elapsed_s = 0;
};

// floor(log2(4 B^2) + n(1 - h2(delta+nu)) - r - t); none when B <= 0 or the
// result is <= 0. Algebraic inverse of eps_pa <= B.
std::optional<long> candidate_key_length(double B, double delta, double nu,
                                         long n, long r, int t);

// Scans the nu grid (and mu grid for serfling), evaluates the selected
// eps_pe, computes B and the candidate l, re-verifies the full budget
// including eps_pa, and returns the maximum feasible l with witnesses.
// Deterministic for a fixed config (parallel reduction uses the tie-break
// larger l, then smaller nu, then smaller mu).
OptimizationResult optimize(const OptimizerConfig& cfg);

// Human-readable epsilon breakdown for audit output.
std::string feasibility_report(const OptimizerConfig& cfg, const OptimizationResult& res);

std::string optimizer_csv_header();
std::string optimizer_csv_row(const OptimizerConfig& cfg, const OptimizationResult& res);

} // namespace hqkd
