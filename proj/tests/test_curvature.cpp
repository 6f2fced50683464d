#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sigmak/curvature.hpp"

using namespace sigmak;

TEST_CASE("flat-pole family") {
    const ProblemParams p(5, 2);
    CHECK_THROWS(CurvatureModel::flat_pole(p, 1.0, 0.0, 2.0, 1.0, 0.0, 2.0));
    CHECK_THROWS(CurvatureModel::flat_pole(p, 1.0, -0.1, 1.5, 1.0, -0.1, 2.0));  // beta < 2
    CHECK_THROWS(CurvatureModel::flat_pole(p, 1.0, -0.1, 2.0, 1.0, -0.1, 5.0));  // beta >= n

    auto K = CurvatureModel::flat_pole(p, 1.0, -0.1, 2.0, 1.0, -0.1, 2.0);
    // pure-power branch value at theta = 0.1
    const double t01 = theta_to_t(0.1);
    CHECK_THAT(K(t01), Catch::Matchers::WithinRel(1.0 - 0.001, 1e-12));

    // cylindrical expansion: (K_cyl(t) - K(0))/e^{-2t} -> 2^2 a1 as t -> +inf
    const double r10 = (K(10.0) - 1.0) / std::exp(-2.0 * 10.0);
    const double r14 = (K(14.0) - 1.0) / std::exp(-2.0 * 14.0);
    CHECK_THAT(r10, Catch::Matchers::WithinRel(4.0 * (-0.1), 1e-7));
    CHECK_THAT(r14, Catch::Matchers::WithinRel(4.0 * (-0.1), 1e-10));

    // log-expansion residual decreases monotonically toward the pole
    double prev = 1e300;
    for (double t = 4.0; t <= 20.0; t += 1.0) {
        const double res =
            std::fabs(K(t) - 1.0 - std::pow(2.0, 2.0) * (-0.1) * std::exp(-2.0 * t)) /
            std::exp(-2.0 * t);
        CHECK(res <= prev + 1e-14);
        prev = res;
    }

    CHECK(K.derivative_consistency() < 1e-6);
    CHECK(K.positivity_floor() > 0.0);
    CHECK(K.north().a == -0.1);
    CHECK(K.south().beta == 2.0);

    // positivity rejection: a large negative dip
    CHECK_THROWS(CurvatureModel::flat_pole(p, 1.0, -10.0, 2.0, 1.0, -0.1, 2.0));
}

TEST_CASE("non-existence family") {
    const ProblemParams p(7, 2);  // n-2k = 3
    const double eps = 0.05, T = 3.0;
    auto K = CurvatureModel::nonexistence(p, eps, T, 3.0, 3.0);

    CHECK_THAT(K(-T - 1.0), Catch::Matchers::WithinRel(0.5, 1e-13));
    CHECK_THAT(K(0.0), Catch::Matchers::WithinRel(eps, 1e-13));
    CHECK_THAT(K(T), Catch::Matchers::WithinRel(eps, 1e-13));
    CHECK_THAT(K(-T - 2.0), Catch::Matchers::WithinRel(1.0 - 0.5 * std::exp(-3.0), 1e-13));

    // symmetric construction when beta1 = beta2
    for (double t = 0.1; t <= T + 6.0; t += 0.37)
        CHECK_THAT(K(t) - K(-t), Catch::Matchers::WithinAbs(0.0, 1e-12));

    // derivative signs per the two bands, and |K'| <= 2
    for (double t = -T - 6.0; t <= -T; t += 0.05) {
        CHECK(K.deriv(t) <= 1e-15);
        CHECK(std::fabs(K.deriv(t)) <= 2.0 + 1e-12);
    }
    for (double t = T; t <= T + 6.0; t += 0.05) CHECK(K.deriv(t) >= -1e-15);

    CHECK(K.derivative_consistency() < 1e-6);
    CHECK_FALSE(CurvatureModel::nonexistence(p, 1e-12 * std::exp(-11.0 * 3.0), 3.0, 3.0, 3.0)
                    .eps_above_threshold());
    CHECK(CurvatureModel::nonexistence(p, 0.05, 3.0, 3.0, 3.0).eps_above_threshold());

    // 1/b1 + 1/b2 >= 2/(n-2k) enforced: for n=9,k=2 (n-2k=5), b1=b2=6 fails
    const ProblemParams p92(9, 2);
    CHECK_THROWS(CurvatureModel::nonexistence(p92, 0.05, 3.0, 6.0, 6.0));
}

TEST_CASE("non-compact family") {
    const ProblemParams p(5, 2);
    CHECK_THROWS(CurvatureModel::noncompact(p, 0.01, 0.6));      // beta >= (n-2k)/2 = 0.5 -> also beta<2
    CHECK_THROWS(CurvatureModel::noncompact(ProblemParams(9, 2), 0.01, 2.5));  // = (n-2k)/2

    const ProblemParams p92(9, 2);
    auto K = CurvatureModel::noncompact(p92, 0.01, 2.0);
    CHECK_THAT(K(-3.0), Catch::Matchers::WithinRel(9.0 - 0.01 * std::exp(-6.0), 1e-13));
    CHECK_THAT(K(0.7) - K(-0.7), Catch::Matchers::WithinAbs(0.0, 1e-14));  // J even
    // Jdot(-2) = -2 e^{-4}
    CHECK_THAT(K.deriv(-2.0) / 0.01, Catch::Matchers::WithinRel(-2.0 * std::exp(-4.0), 1e-12));
    CHECK(K.deriv(0.0) == 0.0);
    CHECK(K.derivative_consistency() < 1e-6);
    CHECK(K.positivity_floor() > 0.0);

    // n=5,k=2 has (n-2k)/2 = 0.5 < 2: no admissible beta at all
    CHECK_THROWS(CurvatureModel::noncompact(p, 0.01, 2.0));
}

TEST_CASE("perturbation family") {
    const ProblemParams p(7, 2);
    auto Kstar = CurvatureModel::flat_pole(p, 1.0, 0.2, 2.0, 1.5, -0.3, 2.5);
    auto K0 = CurvatureModel::perturbation(p, Kstar, 0.0, 4, 2.0);
    for (double t = -8.0; t <= 8.0; t += 0.7)
        CHECK_THAT(K0(t), Catch::Matchers::WithinAbs(2.0 + Kstar(t), 1e-14));

    const double gamma = 0.8;
    auto K = CurvatureModel::perturbation(p, Kstar, gamma, 3, 2.0);
    // equator: x^{n+1} = 0, no contribution
    CHECK_THAT(K(0.0), Catch::Matchers::WithinAbs(2.0 + Kstar(0.0), 1e-14));
    // theta = pi/3: (cos theta)^{2m} = (1/2)^6
    const double t3 = theta_to_t(kPi / 3.0);
    CHECK_THAT(K(t3) - 2.0 - Kstar(t3),
               Catch::Matchers::WithinRel(gamma * std::pow(0.5, 6.0), 1e-12));
    CHECK(K.derivative_consistency() < 1e-6);
    // m must exceed both exponents
    CHECK_THROWS(CurvatureModel::perturbation(p, Kstar, 1.0, 2, 2.0));
    // positivity failure
    CHECK_THROWS(CurvatureModel::perturbation(p, Kstar, -50.0, 3, 0.0));
}

TEST_CASE("constant and tabulated") {
    auto K = CurvatureModel::constant(2.5);
    CHECK(K(3.0) == 2.5);
    CHECK(K.deriv(-1.0) == 0.0);
    CHECK_THROWS(CurvatureModel::constant(0.0));

    std::vector<double> t, v;
    for (int i = 0; i <= 60; ++i) {
        t.push_back(-6.0 + 0.2 * i);
        v.push_back(2.0 + std::exp(-t.back() * t.back() / 4.0));
    }
    auto Ktab = CurvatureModel::tabulated(t, v);
    CHECK_THAT(Ktab(0.1), Catch::Matchers::WithinRel(2.0 + std::exp(-0.01 / 4.0), 1e-4));
    CHECK(Ktab.derivative_consistency(5.0) < 1e-2);  // interpolation-level accuracy only
}
