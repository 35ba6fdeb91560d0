#include "hqkd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hqkd {

namespace {

constexpr double kLog2_10 = 3.321928094887362347870319429489390175864831393024580612054;

// lgamma(k+1) cache so hypergeometric terms cost three lookups. Grows
// monotonically; thread-local to keep the bounds functions pure/concurrent.
double lg_fact(long k) {
    thread_local std::vector<double> cache{0.0, 0.0};  // lgamma(1), lgamma(2)
    if (std::size_t(k) >= cache.size()) {
        std::size_t old = cache.size();
        cache.resize(std::size_t(k) + 1);
        for (std::size_t i = old; i < cache.size(); ++i)
            cache[i] = std::lgamma(double(i) + 1.0);
    }
    return cache[std::size_t(k)];
}

double lg_choose(long a, long b) {
    if (b < 0 || b > a) return -HUGE_VAL;
    return lg_fact(a) - lg_fact(b) - lg_fact(a - b);
}

} // namespace

SecurityParams SecurityParams::make(int s, long N, double delta, int p, int q, long r) {
    SecurityParams sp;
    sp.s = s;
    sp.N = N;
    sp.n = N / 2;
    sp.p = p;
    sp.q = q;
    sp.r = r;
    sp.t = eps_ec_and_t(s).first;
    sp.delta = delta;
    sp.validate();
    return sp;
}

void SecurityParams::validate() const {
    if (s < 1) throw std::invalid_argument("SecurityParams: s must be >= 1");
    if (N <= 0 || n <= 0 || n >= N)
        throw std::invalid_argument("SecurityParams: need 0 < n < N");
    if (p < 1 || q < 1) throw std::invalid_argument("SecurityParams: p,q must be >= 1");
    if (r < 1) throw std::invalid_argument("SecurityParams: r must be >= 1");
    if (delta < 0.0 || delta > 0.11)
        throw std::invalid_argument("SecurityParams: delta outside [0, 0.11]");
    if (t != eps_ec_and_t(s).first)
        throw std::invalid_argument("SecurityParams: t inconsistent with s");
}

double SecurityParams::eps_qkd() const { return std::pow(10.0, -double(s)); }

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy: x outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eps_auth(int q, int p) {
    if (q < 1 || p < 1) throw std::invalid_argument("eps_auth: q,p must be >= 1");
    double v = double(q) * std::exp2(-double(p));
    return std::min(v, 1.0);
}

std::pair<int, double> eps_ec_and_t(int s) {
    if (s < 1) throw std::invalid_argument("eps_ec_and_t: s must be >= 1");
    int t = int(std::ceil(double(s + 2) * kLog2_10));
    return {t, std::exp2(-double(t))};
}

double eps_pa_log2(long l, int t, double nu, double delta, long r, long n) {
    if (l <= 0) throw std::invalid_argument("eps_pa: l must be > 0");
    if (delta + nu >= 0.5) throw std::invalid_argument("eps_pa: delta + nu must be < 1/2");
    // Accumulate the exponent in extended precision: n scales the entropy
    // rounding error by ~10^4, which otherwise eats into the last couple of
    // significant digits of the final 2^(E/2-1).
    long double x = (long double)delta + (long double)nu;
    long double h = -(x * std::log2(x) + (1.0L - x) * std::log2(1.0L - x));
    long double E = -(long double)n * (1.0L - h) + r + t + l;
    return double(E / 2.0L - 1.0L);
}

double eps_pa(long l, int t, double nu, double delta, long r, long n) {
    double lg = eps_pa_log2(l, t, nu, delta, r, n);
    if (lg >= 0.0) return 1.0;  // vacuous bound
    return std::exp2(lg);
}

double eps_pe_serfling(double nu, double mu, double delta, long N, long n) {
    if (!(mu > 0.0) || !(mu < nu)) throw std::invalid_argument("eps_pe_serfling: need 0 < mu < nu");
    if (delta + mu >= 1.0) throw std::invalid_argument("eps_pe_serfling: delta + mu must be < 1");
    double theta1 =
        std::exp(-2.0 * double(N) * double(n) * mu * mu / double(N - n + 1));
    double m_err = std::floor(double(N) * (delta + mu));
    double gam = 1.0 / (m_err + 1.0) + 1.0 / (double(N) - m_err + 1.0);
    double dev = double(N - n) * (nu - mu);
    double theta2 = std::exp(-2.0 * gam * (dev * dev - 1.0));
    return std::min(1.0, std::sqrt(theta1 + theta2));
}

namespace {

double gamma_plus_from_kappa(double delta, double kappa) {
    double root = std::sqrt(kappa * (kappa + delta - delta * delta));
    return (3.0 * kappa + (1.0 - 2.0 * kappa) * delta + 3.0 * root) / (1.0 + 4.0 * kappa);
}

} // namespace

double gamma_plus_chernoff(double delta, double eps, long n) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("gamma_plus_chernoff: eps in (0,1)");
    if (n < 1) throw std::invalid_argument("gamma_plus_chernoff: n >= 1");
    double kappa = (2.0 / (9.0 * double(n))) * std::log(1.0 / eps);
    return gamma_plus_from_kappa(delta, kappa);
}

double nu_from_gamma(double gamma_plus, double delta, long N, long n) {
    if (gamma_plus < delta) throw std::invalid_argument("nu_from_gamma: gamma_plus < delta");
    if (n >= N) throw std::invalid_argument("nu_from_gamma: n < N required");
    return double(N) * (gamma_plus - delta) / double(N - n);
}

std::optional<double> eps_pe_chernoff(double delta, double nu, long N, long n, double tol) {
    if (!(nu > 0.0)) throw std::invalid_argument("eps_pe_chernoff: nu > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("eps_pe_chernoff: tol > 0");
    // kappa is computed from y directly (kappa = 2y/(9n), i.e. eps = e^-y)
    // so the search stays stable where e^-y underflows double precision.
    auto nu_pred_at = [&](double y) {
        double kappa = 2.0 * y / (9.0 * double(n));
        return nu_from_gamma(gamma_plus_from_kappa(delta, kappa), delta, N, n);
    };
    double lo = 0.0, hi = 1000.0, mid = 0.0;
    for (int it = 0; it < 2000; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // bracket collapsed in double precision
        double nu_pred = nu_pred_at(mid);
        if (std::fabs(nu_pred - nu) < tol) return std::exp(-mid);
        if (nu_pred < nu) lo = mid; else hi = mid;
    }
    if (std::fabs(nu_pred_at(mid) - nu) < tol) return std::exp(-mid);
    return std::nullopt;
}

namespace {

double hypergeom_cdf_exact(long x_obs, long N, long K, long n) {
    namespace mp = boost::multiprecision;
    // Sum_{x} C(K,x) C(N-K, n-x) as exact integers over the common
    // denominator C(N,n); binomial recurrences keep every division exact.
    long x_lo = std::max(0L, n - (N - K));
    long x_hi = std::min(n, K);
    if (x_obs >= x_hi) return 1.0;
    mp::cpp_int a;  // C(K, x)
    mp::cpp_int b;  // C(N-K, n-x)
    auto choose = [](long m, long k) {
        mp::cpp_int c = 1;
        if (k < 0 || k > m) return mp::cpp_int(0);
        k = std::min(k, m - k);
        for (long i = 0; i < k; ++i) { c *= (m - i); c /= (i + 1); }
        return c;
    };
    a = choose(K, x_lo);
    b = choose(N - K, n - x_lo);
    mp::cpp_int num = 0;
    for (long x = x_lo; x <= std::min(x_obs, x_hi); ++x) {
        num += a * b;
        // advance to x+1
        a = a * (K - x) / (x + 1);
        if (n - x - 1 >= 0) b = b * mp::cpp_int(n - x) / mp::cpp_int(N - K - (n - x) + 1);
    }
    mp::cpp_int den = choose(N, n);
    return mp::cpp_rational(num, den).convert_to<double>();
}

double hypergeom_cdf_log(long x_obs, long N, long K, long n) {
    long x_lo = std::max(0L, n - (N - K));
    long x_hi = std::min(n, K);
    if (x_obs >= x_hi) return 1.0;
    double lgden = lg_choose(N, n);
    double sum = 0.0, comp = 0.0;  // Kahan
    for (long x = x_lo; x <= x_obs; ++x) {
        double term = std::exp(lg_choose(K, x) + lg_choose(N - K, n - x) - lgden);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::min(1.0, sum);
}

} // namespace

double hypergeom_cdf(long x_obs, long N, long K, long n, long exact_threshold) {
    if (N < 0 || K < 0 || K > N || n < 0 || n > N)
        throw std::invalid_argument("hypergeom_cdf: parameter range");
    if (x_obs < 0) return 0.0;
    long x_lo = std::max(0L, n - (N - K));
    if (x_obs < x_lo) return 0.0;
    if (N <= exact_threshold) return hypergeom_cdf_exact(x_obs, N, K, n);
    return hypergeom_cdf_log(x_obs, N, K, n);
}

long cp_error_count(double delta, double nu, long N, long n, CpDeviationModel model) {
    double mult = (model == CpDeviationModel::calibrated) ? double(N + n) : double(N - n);
    long K = std::lround(double(N) * delta + mult * nu);
    return std::clamp(K, 0L, N);
}

double eps_pe_cp(double delta, double nu, long N, long n, const CpOptions& opt) {
    if (nu < 0.0) throw std::invalid_argument("eps_pe_cp: nu >= 0");
    long K = cp_error_count(delta, nu, N, n, opt.model);
    double dx = delta * double(n);
    long x_obs = opt.round_x_obs ? std::lround(dx) : long(std::floor(dx));
    return hypergeom_cdf(x_obs, N, K, n, opt.exact_threshold);
}

} // namespace hqkd
