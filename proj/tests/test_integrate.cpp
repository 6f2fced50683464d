#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sigmak/integrate.hpp"

using namespace sigmak;

TEST_CASE("integration matches the closed-form bubble, K = 1") {
    const ProblemParams p(5, 2);
    const auto K = CurvatureModel::constant(1.0);
    const double lambda = 3.0;
    const auto bub = standard_bubble(p, lambda, 1.0);
    const auto prof = integrate(p, K, bub.state_at(-8.0), 8.0);

    CHECK(prof.stats().termination == "reached-t-end");
    double worst = 0.0;
    for (std::size_t i = 0; i < prof.size(); ++i)
        worst = std::max(worst, std::fabs(prof.xi()[i] - bub.xi(prof.grid()[i])));
    for (double t = -7.9; t < 8.0; t += 0.173)  // off-node dense output
        worst = std::max(worst, std::fabs(prof.xi_at(t) - bub.xi(t)));
    CHECK(worst < 1e-8);

    // exactly one critical point, a minimum, at t = -ln lambda
    int ncrit = 0;
    for (const auto& e : prof.events()) {
        if (e.kind == Event::Kind::CriticalMin || e.kind == Event::Kind::CriticalMax ||
            e.kind == Event::Kind::CriticalFlat) {
            ++ncrit;
            CHECK(e.kind == Event::Kind::CriticalMin);
            CHECK_THAT(e.t, Catch::Matchers::WithinAbs(-std::log(lambda), 1e-9));
        }
    }
    CHECK(ncrit == 1);

    // stored node triples satisfy the equation to near machine precision
    CHECK(prof.stats().max_node_residual < 1e-12);
}

TEST_CASE("integration matches ln cosh for K = 2^{-k} binom(n,k)") {
    const ProblemParams p(5, 2);
    const auto K = CurvatureModel::constant(p.round_sigma());
    const auto f = round_profile();
    const auto prof = integrate(p, K, f.state_at(-5.0), 5.0);
    double worst = 0.0;
    for (double t = -5.0; t <= 5.0; t += 0.11)
        worst = std::max(worst, std::fabs(prof.xi_at(t) - log_cosh(t)));
    CHECK(worst < 1e-8);
    // one critical point at t = 0
    REQUIRE(prof.events().size() == 1);
    CHECK_THAT(prof.events()[0].t, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("cone-boundary guard terminates with an event, not an error") {
    const ProblemParams p(5, 2);
    const auto K = CurvatureModel::constant(2.5);
    // start high: xiddot ~ -kappa, the slope runs toward -1
    const auto init = CylState::from_xidot(0.0, 6.0, 0.0);
    const auto prof = integrate(p, K, init, 40.0);
    CHECK(prof.stats().terminated_by_event);
    CHECK(prof.stats().termination == "cone-boundary");
    REQUIRE_FALSE(prof.events().empty());
    const auto& last = prof.events().back();
    CHECK(last.kind == Event::Kind::ConeBoundary);
    CHECK(std::fabs(last.state.xidot) > 1.0 - 2e-9);
    CHECK(prof.t_end() < 40.0);
}

TEST_CASE("blow-down cap terminates") {
    const ProblemParams p(5, 2);
    const auto K = CurvatureModel::constant(2.5);
    IntegrateOptions opt;
    opt.xi_cap = 8.0;
    opt.psi_guard = 300.0;  // keep the cone guard out of the way
    const auto init = CylState::from_xidot(0.0, 7.0, 0.5);
    const auto prof = integrate(p, K, init, 80.0, opt);
    CHECK(prof.stats().termination == "blow-down");
    CHECK_THAT(prof.xi().back(), Catch::Matchers::WithinAbs(8.0, 1e-6));
}

TEST_CASE("flat-pole K: integrated trajectory is consistent across tolerances") {
    const ProblemParams p(7, 2);
    auto K = CurvatureModel::flat_pole(p, 1.0, 0.3, 3.0, 1.2, 0.4, 3.0);
    const auto bub = standard_bubble(p, 1.0, K.south_value());
    IntegrateOptions loose, tight;
    loose.rtol = loose.atol = 1e-6;
    tight.rtol = tight.atol = 1e-12;
    const auto a = integrate(p, K, bub.state_at(-10.0), 2.0, loose);
    const auto b = integrate(p, K, bub.state_at(-10.0), 2.0, tight);
    CHECK(std::fabs(a.xi_at(1.5) - b.xi_at(1.5)) < 1e-5);
    CHECK(a.stats().max_node_residual < 1e-11);
    // the dense-interpolant defect is small but nonzero (honest diagnostic)
    CHECK(b.stats().max_defect < 1e-6);
}

TEST_CASE("deep tower passage: psi chart resolves near-cone dynamics") {
    // ln cosh + tiny perturbation pushed far up: the trajectory rides
    // |xidot| within ~e^{-2 xi} of 1 without tripping anything when the
    // guard is lifted.
    const ProblemParams p(9, 2);
    const auto K = CurvatureModel::constant(p.round_sigma());
    IntegrateOptions opt;
    opt.psi_guard = 500.0;
    opt.xi_cap = 1e6;
    // straight-line degenerate-like climb: start on the bubble and follow it
    const auto f = round_profile(20.0);  // min at t=-20, xi(0)=lcosh(20) ~ 19.3
    const auto prof = integrate(p, K, f.state_at(-24.0), 0.0, opt);
    CHECK(std::fabs(prof.xi_at(0.0) - log_cosh(20.0)) < 1e-7);
    CHECK(std::fabs(prof.psi_at(0.0) - 20.0) < 1e-7);
    CHECK(prof.stats().max_node_residual < 1e-11);
}

TEST_CASE("profile_from_closed_form carries dense data and events interface") {
    const ProblemParams p(5, 2);
    const auto bub = standard_bubble(p, 2.0, 4.0);
    const auto prof = profile_from_closed_form(p, bub, -10.0, 10.0, 401);
    for (double t = -9.9; t < 10.0; t += 0.31)
        CHECK_THAT(prof.xi_at(t), Catch::Matchers::WithinAbs(bub.xi(t), 1e-10));
    CHECK(prof.contains(0.0));
    CHECK_FALSE(prof.contains(11.0));
}
