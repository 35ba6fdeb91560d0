#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "hqkd/optimizer.hpp"

using namespace hqkd;

namespace {

OptimizerConfig coarse_cfg(int s, PeType pe) {
    OptimizerConfig cfg;
    cfg.params = SecurityParams::make(s, 20000, 0.0627);
    cfg.pe_type = pe;
    cfg.coarse();
    return cfg;
}

} // namespace

TEST_CASE("pe type names round-trip") {
    CHECK(pe_type_from_string("serfling") == PeType::serfling);
    CHECK(pe_type_from_string("chernoff") == PeType::chernoff);
    CHECK(pe_type_from_string("cp_exact") == PeType::cp_exact);
    CHECK(pe_type_from_string("cp") == PeType::cp_exact);
    CHECK(!pe_type_from_string("gauss").has_value());
    CHECK(std::string(to_string(PeType::serfling)) == "serfling");
}

TEST_CASE("coarse grid optimum: two-sided sampling bound") {
    auto res = optimize(coarse_cfg(6, PeType::serfling));
    REQUIRE(res.l_max.has_value());
    CHECK(*res.l_max == 58);
    CHECK(*res.nu_star == doctest::Approx(0.0430964007004).epsilon(1e-9));
    REQUIRE(res.mu_star.has_value());
    CHECK(*res.mu_star == doctest::Approx(0.0274249549911).epsilon(1e-9));
    CHECK(res.grid_resolution == doctest::Approx(0.00021875837919).epsilon(1e-9));
    // released budget must respect the composable target
    CHECK(res.budget.eps_total <= res.budget.eps_qkd * (1 + 1e-9));
    CHECK(res.budget.eps_qkd == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("coarse grid optimum: relaxed concentration bound") {
    auto res = optimize(coarse_cfg(6, PeType::chernoff));
    REQUIRE(res.l_max.has_value());
    CHECK(*res.l_max == 541);
    CHECK(*res.nu_star == doctest::Approx(0.0280020725363).epsilon(1e-9));
    CHECK(!res.mu_star.has_value());
}

TEST_CASE("coarse grid optimum: exact tail estimator") {
    auto res = optimize(coarse_cfg(6, PeType::cp_exact));
    REQUIRE(res.l_max.has_value());
    CHECK(*res.l_max == 1317);
    CHECK(*res.nu_star == doctest::Approx(0.00612623461731).epsilon(1e-9));
}

TEST_CASE("tighter estimators keep more key") {
    auto serf = optimize(coarse_cfg(6, PeType::serfling));
    auto cher = optimize(coarse_cfg(6, PeType::chernoff));
    auto cp = optimize(coarse_cfg(6, PeType::cp_exact));
    REQUIRE((serf.l_max && cher.l_max && cp.l_max));
    CHECK(*serf.l_max < *cher.l_max);
    CHECK(*cher.l_max < *cp.l_max);
    CHECK(*cp.nu_star < *cher.nu_star);
    CHECK(*cher.nu_star < *serf.nu_star);
}

TEST_CASE("strict target starves the loosest estimator") {
    auto res = optimize(coarse_cfg(9, PeType::serfling));
    CHECK(!res.l_max.has_value());
    CHECK(!res.nu_star.has_value());
    // the tighter estimators still find key at s = 9
    CHECK(optimize(coarse_cfg(9, PeType::chernoff)).l_max.has_value());
    CHECK(optimize(coarse_cfg(9, PeType::cp_exact)).l_max.has_value());
}

TEST_CASE("thread count never changes the answer") {
    for (PeType pe : {PeType::serfling, PeType::cp_exact}) {
        auto cfg1 = coarse_cfg(6, pe);
        cfg1.threads = 1;
        auto cfg8 = coarse_cfg(6, pe);
        cfg8.threads = 8;
        auto a = optimize(cfg1);
        auto b = optimize(cfg8);
        REQUIRE((a.l_max && b.l_max));
        CHECK(*a.l_max == *b.l_max);
        CHECK(*a.nu_star == *b.nu_star); // exact double equality: same grid points
        if (a.mu_star) CHECK(*a.mu_star == *b.mu_star);
    }
}

TEST_CASE("candidate length is the budget-exhausting maximum") {
    auto cfg = coarse_cfg(6, PeType::cp_exact);
    auto res = optimize(cfg);
    REQUIRE(res.l_max.has_value());
    const auto& sp = cfg.params;
    double B = res.budget.eps_qkd - res.budget.eps_ec - 2.0 * res.budget.eps_pe -
               res.budget.eps_auth;
    auto l = candidate_key_length(B, sp.delta, *res.nu_star, sp.n, sp.r, sp.t);
    REQUIRE(l.has_value());
    CHECK(*l == *res.l_max);
    // one more bit would overdraw the budget
    double over = res.budget.eps_auth + res.budget.eps_ec + 2.0 * res.budget.eps_pe +
                  eps_pa(*l + 1, sp.t, *res.nu_star, sp.delta, sp.r, sp.N - sp.n);
    CHECK(over > res.budget.eps_qkd);
    // negative or zero budget yields nothing
    CHECK(!candidate_key_length(0.0, sp.delta, 0.01, sp.n, sp.r, sp.t).has_value());
    CHECK(!candidate_key_length(-1e-9, sp.delta, 0.01, sp.n, sp.r, sp.t).has_value());
}

TEST_CASE("optimizer rejects malformed configurations") {
    auto cfg = coarse_cfg(6, PeType::cp_exact);
    cfg.params.n = 9000; // optimizer requires the half split
    CHECK_THROWS_AS(optimize(cfg), std::invalid_argument);
    cfg = coarse_cfg(6, PeType::cp_exact);
    cfg.nu_grid_points = 1;
    CHECK_THROWS_AS(optimize(cfg), std::invalid_argument);
}

TEST_CASE("csv schema is stable") {
    CHECK(optimizer_csv_header() ==
          "pe_type,s,N,n,delta,nu_star,mu_star,l,l_over_N,eps_auth,eps_ec,eps_pa,eps_pe,"
          "eps_total,eps_qkd,elapsed_s");
    auto cfg = coarse_cfg(6, PeType::chernoff);
    auto res = optimize(cfg);
    auto row = optimizer_csv_row(cfg, res);
    CHECK(row.find("chernoff,6,20000,10000,") == 0);
    CHECK(row.find("541") != std::string::npos);
    // infeasible rows stay parseable
    auto cfg9 = coarse_cfg(9, PeType::serfling);
    auto row9 = optimizer_csv_row(cfg9, optimize(cfg9));
    CHECK(row9.find("serfling,9,") == 0);
}

TEST_CASE("feasibility report names the verdict") {
    auto cfg = coarse_cfg(6, PeType::cp_exact);
    auto rep = feasibility_report(cfg, optimize(cfg));
    CHECK(!rep.empty());
    CHECK(rep.find("l/N=") != std::string::npos);
    CHECK(rep.find("nu*=") != std::string::npos);
    CHECK(rep.find("eps_total=") != std::string::npos);
    auto cfg9 = coarse_cfg(9, PeType::serfling);
    auto rep9 = feasibility_report(cfg9, optimize(cfg9));
    CHECK(rep9.find("no positive key") != std::string::npos);
}
