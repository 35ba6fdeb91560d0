#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace hqkd {

// Fixed parameter tuple feeding every failure-probability bound.
//   s      composable exponent, eps_qkd = 10^-s
//   N      raw (sifted) bits per session
//   n      sampled bits, default floor(N/2)
//   p, q   MAC tag bits and tag count (eps_auth = q*2^-p)
//   r      syndrome bits disclosed by error correction
//   t      verification exponent, forced to ceil((s+2)*log2(10))
//   delta  QBER threshold, set equal to the measured alpha; must be <= 0.11
struct SecurityParams {
    int s = 6;
    long N = 20000;
    long n = 10000;
    int p = 61;
    int q = 1;
    long r = 5000;
    int t = 27;
    double delta = 0.0627;

    static SecurityParams make(int s, long N, double delta,
                               int p = 61, int q = 1, long r = 5000);
    void validate() const;  // throws std::invalid_argument
    double eps_qkd() const;
};

struct EpsilonBudget {
    double eps_auth = 0, eps_ec = 0, eps_pa = 0, eps_pe = 0;
    double eps_total = 0;
    double eps_qkd = 0;
};

// -x log2 x - (1-x) log2 (1-x), 0 log 0 = 0. Domain error outside [0,1].
double binary_entropy(double x);

// q * 2^-p, clamped to 1.
double eps_auth(int q, int p);

// t = ceil((s+2) log2 10), eps_ec = 2^-t.
std::pair<int, double> eps_ec_and_t(int s);

// Privacy-amplification failure: (1/2) sqrt(2^E),
// E = -(n)(1 - h2(delta+nu)) + r + t + l, with n the *remainder* size
// (callers pass N - n_sampled). Evaluated in log space.
double eps_pa(long l, int t, double nu, double delta, long r, long n);

// log2 of the same quantity (= E/2 - 1); never under/overflows.
double eps_pa_log2(long l, int t, double nu, double delta, long r, long n);

// Serfling + hypergeometric tail: sqrt(theta1 + theta2), clamped to [0,1].
double eps_pe_serfling(double nu, double mu, double delta, long N, long n);

// Relaxed-Chernoff deviation bound on the total QBER.
// kappa = (2/(9n)) ln(1/eps).
double gamma_plus_chernoff(double delta, double eps, long n);

// nu = N (gamma_plus - delta) / (N - n).
double nu_from_gamma(double gamma_plus, double delta, long N, long n);

// Inverts gamma_plus/nu_from_gamma by bisection on y in [0,1000]
// (eps = e^-y), at most 2000 iterations. nullopt when the target nu is not
// bracketed within tolerance (no convergence).
std::optional<double> eps_pe_chernoff(double delta, double nu, long N, long n,
                                      double tol = 1e-9);

// Lower hypergeometric tail P[X <= x_obs] for X ~ Hypergeom(N, K, n).
// Exact big-integer arithmetic when N <= exact_threshold, log-space
// (lgamma) summation above it. Negative x_obs is the empty sum (0).
double hypergeom_cdf(long x_obs, long N, long K, long n,
                     long exact_threshold = 200);

// Maps the deviation parameter nu to the hypothesized total error count K
// for the exact tail evaluation.
//   calibrated    K = round(N*delta + (N+n)*nu)  — reproduces the reference
//                 optimizer results bundled with the test suite (default)
//   conservative  K = round(N*delta + (N-n)*nu)  — smaller K, larger tail
//                 for the same nu
enum class CpDeviationModel { calibrated, conservative };

struct CpOptions {
    CpDeviationModel model = CpDeviationModel::calibrated;
    bool round_x_obs = false;  // false: x_obs = floor(delta*n) (normative)
    long exact_threshold = 200;
};

double eps_pe_cp(double delta, double nu, long N, long n, const CpOptions& opt = {});

// K for the given options, clamped to [0, N]. Exposed for tests/reports.
long cp_error_count(double delta, double nu, long N, long n,
                    CpDeviationModel model = CpDeviationModel::calibrated);

} // namespace hqkd
