#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "hqkd/bounds.hpp"
#include "helpers.hpp"

using namespace hqkd;

TEST_CASE("binary entropy basics and pinned values") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    // 200-bit reference evaluations
    CHECK(binary_entropy(0.0627) == doctest::Approx(0.33807095278569297242).epsilon(1e-14));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.81127812445913286391).epsilon(1e-14));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.49991595816452799731).epsilon(1e-14));
    // symmetry and monotonicity on [0, 1/2]
    for (double x : {0.01, 0.1, 0.3, 0.49}) {
        CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-15));
        CHECK(binary_entropy(x) < binary_entropy(x + 0.005));
    }
}

TEST_CASE("authentication failure term") {
    CHECK(eps_auth(1, 61) == doctest::Approx(std::exp2(-61.0)).epsilon(1e-15));
    CHECK(eps_auth(3, 61) == doctest::Approx(3.0 * std::exp2(-61.0)).epsilon(1e-15));
    CHECK(eps_auth(4, 2) == 1.0);   // 4 * 2^-2 = 1, clamp boundary
    CHECK(eps_auth(100, 2) == 1.0); // clamped
}

TEST_CASE("verification exponent tracks the composable target") {
    auto [t6, e6] = eps_ec_and_t(6);
    CHECK(t6 == 27);
    CHECK(e6 == doctest::Approx(std::exp2(-27.0)).epsilon(1e-15));
    auto [t9, e9] = eps_ec_and_t(9);
    CHECK(t9 == 37);
    CHECK(e9 == doctest::Approx(std::exp2(-37.0)).epsilon(1e-15));
    // 2^-t must sit below 10^-(s+1) so the verification term never dominates
    for (int s = 1; s <= 12; ++s) {
        auto [t, e] = eps_ec_and_t(s);
        CHECK(e < std::pow(10.0, -(s + 1)));
        CHECK(std::exp2(-(t - 1.0)) >= std::pow(10.0, -(s + 2)));
    }
}

TEST_CASE("security parameter validation") {
    auto sp = SecurityParams::make(6, 20000, 0.0627);
    CHECK(sp.N == 20000);
    CHECK(sp.n == 10000);
    CHECK(sp.t == 27);
    CHECK(sp.eps_qkd() == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK_NOTHROW(sp.validate());

    auto bad = sp;
    bad.delta = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sp;
    bad.n = 30000;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sp;
    bad.s = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("privacy amplification bound against 200-bit references") {
    auto rows = testutil::load_jsonl("pa_bound_oracle.jsonl");
    REQUIRE(rows.size() >= 100);
    double worst_lg = 0.0, worst_lin = 0.0;
    for (const auto& row : rows) {
        long l = row["l"].get<long>();
        int t = row["t"].get<int>();
        double nu = std::strtod(row["nu"].get<std::string>().c_str(), nullptr);
        double delta = std::strtod(row["delta"].get<std::string>().c_str(), nullptr);
        long r = row["r"].get<long>();
        long n = row["n"].get<long>();
        double lg_ref = std::strtod(row["lg2"].get<std::string>().c_str(), nullptr);
        double eps_ref = std::strtod(row["eps"].get<std::string>().c_str(), nullptr);

        double lg = eps_pa_log2(l, t, nu, delta, r, n);
        worst_lg = std::max(worst_lg, std::fabs(lg - lg_ref));
        CHECK(std::fabs(lg - lg_ref) <= 2e-11);

        double eps = eps_pa(l, t, nu, delta, r, n);
        if (lg_ref >= 0.0) {
            CHECK(eps == 1.0);
        } else if (eps_ref >= 1e-300) {
            worst_lin = std::max(worst_lin, std::fabs(eps - eps_ref) / eps_ref);
            CHECK(eps == doctest::Approx(eps_ref).epsilon(1e-12));
        } else {
            CHECK(eps == 0.0); // below double range; log form above carries the value
        }
    }
    MESSAGE("max |log2 deviation| = ", worst_lg, ", max linear rel = ", worst_lin);
}

TEST_CASE("privacy amplification domain checks") {
    CHECK_THROWS_AS(eps_pa(0, 27, 0.01, 0.06, 5000, 10000), std::invalid_argument);
    CHECK_THROWS_AS(eps_pa(10, 27, 0.45, 0.06, 5000, 10000), std::invalid_argument);
    // vacuous regime clamps to exactly 1
    CHECK(eps_pa(100000, 27, 0.02, 0.05, 1000, 4000) == 1.0);
}

TEST_CASE("sampling tail bound, two-sided form") {
    // 200-bit reference evaluations at the working population sizes
    CHECK(eps_pe_serfling(0.04, 0.025, 0.0627, 20000, 10000) ==
          doctest::Approx(3.813743847672286715e-6).epsilon(1e-12));
    CHECK(eps_pe_serfling(0.043, 0.027, 0.0627, 20000, 10000) ==
          doctest::Approx(4.9196142694229545036e-7).epsilon(1e-12));
    CHECK(eps_pe_serfling(0.08, 0.05, 0.0627, 20000, 10000) ==
          doctest::Approx(2.9143182917630966541e-20).epsilon(1e-12));
    // clamp and domain
    CHECK(eps_pe_serfling(0.002, 0.001, 0.0627, 20000, 10000) == 1.0);
    CHECK_THROWS_AS(eps_pe_serfling(0.01, 0.01, 0.0627, 20000, 10000), std::invalid_argument);
    CHECK_THROWS_AS(eps_pe_serfling(0.01, -0.1, 0.0627, 20000, 10000), std::invalid_argument);
    // monotone: widening the gap nu - mu can only shrink the bound; equality
    // is possible once the mu-only term dominates the sum
    double a = eps_pe_serfling(0.05, 0.025, 0.0627, 20000, 10000);
    double b = eps_pe_serfling(0.06, 0.025, 0.0627, 20000, 10000);
    CHECK(b <= a);
    // strictly decreasing where the deviation term still dominates
    double c = eps_pe_serfling(0.026, 0.025, 0.0627, 20000, 10000);
    double d = eps_pe_serfling(0.030, 0.025, 0.0627, 20000, 10000);
    CHECK(d < c);
}

TEST_CASE("relaxed concentration bound closed form and inversion") {
    // 200-bit reference of the closed-form deviation map
    double g1 = gamma_plus_chernoff(0.0627, 1e-7, 10000);
    CHECK(g1 == doctest::Approx(0.077424585312299096814).epsilon(1e-13));
    CHECK(nu_from_gamma(g1, 0.0627, 20000, 10000) ==
          doctest::Approx(0.029449170624598193628).epsilon(1e-13));
    double g2 = gamma_plus_chernoff(0.0627, 1e-10, 10000);
    CHECK(nu_from_gamma(g2, 0.0627, 20000, 10000) ==
          doctest::Approx(0.035657339817335054881).epsilon(1e-13));

    // numeric inversion: eps_pe_chernoff must invert the forward map
    for (double nu : {0.02, 0.028, 0.04, 0.08}) {
        auto eps = eps_pe_chernoff(0.0627, nu, 20000, 10000);
        REQUIRE(eps.has_value());
        double back = nu_from_gamma(gamma_plus_chernoff(0.0627, *eps, 10000), 0.0627, 20000, 10000);
        CHECK(std::fabs(back - nu) <= 2e-9);
    }
    // larger nu -> smaller failure probability
    auto lo = eps_pe_chernoff(0.0627, 0.02, 20000, 10000);
    auto hi = eps_pe_chernoff(0.0627, 0.05, 20000, 10000);
    REQUIRE((lo && hi));
    CHECK(*hi < *lo);
    CHECK_THROWS_AS(eps_pe_chernoff(0.0627, -0.1, 20000, 10000), std::invalid_argument);
}

TEST_CASE("exact tail estimator: error count models") {
    // calibrated: K = round(N*delta + (N+n)*nu)
    CHECK(cp_error_count(0.0627, 0.006, 20000, 10000, CpDeviationModel::calibrated) ==
          std::lround(20000 * 0.0627 + 30000 * 0.006));
    // conservative: K = round(N*delta + (N-n)*nu)
    CHECK(cp_error_count(0.0627, 0.006, 20000, 10000, CpDeviationModel::conservative) ==
          std::lround(20000 * 0.0627 + 10000 * 0.006));
    // clamped to the population
    CHECK(cp_error_count(0.9, 10.0, 100, 50, CpDeviationModel::calibrated) == 100);

    // the bound is exactly the hypergeometric left tail at x_obs = floor(delta*n)
    CpOptions opt;
    double direct = hypergeom_cdf(long(std::floor(0.0627 * 10000)), 20000,
                                  cp_error_count(0.0627, 0.006, 20000, 10000), 10000);
    CHECK(eps_pe_cp(0.0627, 0.006, 20000, 10000, opt) == direct);
    // more claimed errors -> observing few gets less likely
    CHECK(eps_pe_cp(0.0627, 0.010, 20000, 10000) < eps_pe_cp(0.0627, 0.004, 20000, 10000));
}
