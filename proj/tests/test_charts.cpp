#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sigmak/charts.hpp"

using namespace sigmak;

TEST_CASE("theta_to_t: values, antisymmetry, monotonicity, domain") {
    CHECK_THAT(theta_to_t(kPi / 2), Catch::Matchers::WithinAbs(0.0, 1e-15));
    // ln cot(pi/6) = ln sqrt(3)
    CHECK_THAT(theta_to_t(kPi / 3), Catch::Matchers::WithinRel(0.5 * std::log(3.0), 1e-14));
    CHECK_THAT(theta_to_t(0.3) + theta_to_t(kPi - 0.3), Catch::Matchers::WithinAbs(0.0, 1e-13));
    double prev = theta_to_t(1e-3);
    for (int i = 1; i <= 400; ++i) {
        const double th = 1e-3 + (kPi - 2e-3) * i / 400.0;
        const double t = theta_to_t(th);
        CHECK(t < prev);
        prev = t;
    }
    CHECK_THROWS_AS(theta_to_t(0.0), std::domain_error);
    CHECK_THROWS_AS(theta_to_t(kPi), std::domain_error);
    CHECK_THROWS_AS(theta_to_t(-0.5), std::domain_error);
}

TEST_CASE("chart round trips to 1e-12") {
    for (int i = 0; i <= 200; ++i) {
        const double th = 1e-3 + (kPi - 2e-3) * i / 200.0;
        CHECK_THAT(t_to_theta(theta_to_t(th)), Catch::Matchers::WithinAbs(th, 1e-12));
    }
    for (double t = -10.0; t <= 10.0; t += 0.37)
        CHECK_THAT(theta_to_t(t_to_theta(t)), Catch::Matchers::WithinAbs(t, 1e-12));
    // r = cot(theta/2) and t = ln r agree through ChartPoint
    const auto cp = ChartPoint::from_theta(0.8);
    CHECK_THAT(cp.r, Catch::Matchers::WithinRel(1.0 / std::tan(0.4), 1e-14));
    CHECK_THAT(cp.t, Catch::Matchers::WithinRel(std::log(cp.r), 1e-14));
    CHECK_THAT(sin_theta_of_t(cp.t), Catch::Matchers::WithinRel(std::sin(0.8), 1e-13));
    CHECK_THAT(cos_theta_of_t(cp.t), Catch::Matchers::WithinRel(std::cos(0.8), 1e-13));
}

TEST_CASE("round sphere: v = 1 gives the stereographic factor and xi = ln cosh t") {
    const ProblemParams p(5, 2);
    // u(r) = (2/(1+r^2))^{(n-2)/2}
    CHECK_THAT(v_to_u(1.0, 0.0, p), Catch::Matchers::WithinRel(std::pow(2.0, 1.5), 1e-14));
    CHECK_THAT(v_to_u(1.0, 2.0, p), Catch::Matchers::WithinRel(std::pow(0.4, 1.5), 1e-14));
    for (double t = -8.0; t <= 8.0; t += 0.53) {
        const auto cp = ChartPoint::from_t(t);
        const auto s = triple_from_v(1.0, cp, p);
        CHECK_THAT(s.xi, Catch::Matchers::WithinAbs(log_cosh(t), 1e-12));
    }
    // v = const c shifts xi by -(2/(n-2)) ln c, uniformly
    const double c = 3.7;
    double diff0 = 0.0;
    bool first = true;
    for (double t = -6.0; t <= 6.0; t += 0.41) {
        const auto s = triple_from_v(c, ChartPoint::from_t(t), p);
        const double diff = s.xi - log_cosh(t);
        if (first) {
            diff0 = diff;
            first = false;
        }
        CHECK_THAT(diff, Catch::Matchers::WithinAbs(diff0, 1e-10));
    }
    CHECK_THAT(diff0, Catch::Matchers::WithinAbs(-2.0 / 3.0 * std::log(c), 1e-12));
}

TEST_CASE("convert_profile round trips and errors") {
    const ProblemParams p(7, 2);
    SampledProfile vprof;
    vprof.chart = Chart::Spherical;
    for (int i = 0; i <= 120; ++i) {
        const double th = 1e-3 + (kPi - 2e-3) * i / 120.0;
        vprof.x.push_back(th);
        vprof.value.push_back(1.0 + 0.3 * std::sin(th));  // arbitrary positive profile
    }
    const auto xiprof = convert_profile(vprof, Chart::Cylindrical, p);
    CHECK(xiprof.x.front() < xiprof.x.back());
    const auto uprof = convert_profile(xiprof, Chart::Euclidean, p);
    const auto back = convert_profile(uprof, Chart::Spherical, p);
    REQUIRE(back.size() == vprof.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK_THAT(back.x[i], Catch::Matchers::WithinAbs(vprof.x[i], 1e-11));
        CHECK_THAT(back.value[i], Catch::Matchers::WithinRel(vprof.value[i], 1e-10));
    }

    SampledProfile bad = vprof;
    bad.value[3] = -1.0;
    CHECK_THROWS(convert_profile(bad, Chart::Cylindrical, p));

    SampledProfile near_pole = vprof;
    near_pole.x[0] = 1e-9;  // inside the default pole margin
    CHECK_THROWS(convert_profile(near_pole, Chart::Cylindrical, p));
}
