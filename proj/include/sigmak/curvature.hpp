// Prescribed-curvature families, each with exact first derivatives in the
// cylindrical chart and pole-flatness metadata.
//
// Families:
//   constant          K == K0
//   flat-pole         K(theta) = K(0)+a1 theta^b1 / K(pi)+a2 (pi-theta)^b2
//                     with a smooth monotone blend between cut angles
//   nonexistence      the two-branch / flat-plateau model with unit
//                     transition bands
//   noncompact        2^{-k} binom(n,k) + eps*J with J even, J = -e^{beta t}
//                     on t <= -1
//   perturbation      C + K_* + gamma*(cos theta)^{2m}
//   tabulated         monotone-cubic through (t, K) samples
#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sigmak/charts.hpp"
#include "sigmak/interp.hpp"
#include "sigmak/mathfn.hpp"
#include "sigmak/params.hpp"
#include "sigmak/quadrature.hpp"

namespace sigmak {

// Cut angles bounding the smooth monotone blend of the flat-pole family.
struct BlendSpec {
    double theta1 = 1.0;        // end of the north pure-power region
    double theta2 = kPi - 1.0;  // start of the south pure-power region
};

// Leading pole behavior K ~ K(pole) + a * dist^beta with a remainder bound
// (|R| + dist|R'|)/dist^beta <= bound(dist) on dist <= region.
struct PoleFlatness {
    double a = 0.0;
    double beta = 2.0;
    double region = 0.0;  // theta-extent of validity; 0 = not declared
    std::function<double(double)> remainder_bound;  // of theta-distance
    bool declared() const { return region > 0.0; }
};

class CurvatureModel {
  public:
    CurvatureModel() = default;

    double operator()(double t) const { return K_(t); }
    double deriv(double t) const { return Kd_(t); }

    double north_value() const { return K_north_; }  // K_cyl(+inf)
    double south_value() const { return K_south_; }  // K_cyl(-inf)
    const PoleFlatness& north() const { return north_; }
    const PoleFlatness& south() const { return south_; }
    double positivity_floor() const { return floor_; }
    const std::string& descriptor() const { return descriptor_; }
    bool eps_above_threshold() const { return eps_warn_; }

    // --- factories ---------------------------------------------------------

    static CurvatureModel constant(double value) {
        if (!(value > 0.0)) throw std::invalid_argument("constant K must be positive");
        CurvatureModel m;
        m.K_ = [value](double) { return value; };
        m.Kd_ = [](double) { return 0.0; };
        m.K_north_ = m.K_south_ = value;
        m.floor_ = value;
        m.descriptor_ = describe("constant", {{"value", value}});
        return m;
    }

    static CurvatureModel flat_pole(const ProblemParams& p, double K0, double a1,
                                    double beta1, double Kpi, double a2, double beta2,
                                    BlendSpec blend = {});

    static CurvatureModel nonexistence(const ProblemParams& p, double eps, double T,
                                       double beta1, double beta2,
                                       double eps_warn_threshold = 1e-6);

    static CurvatureModel noncompact(const ProblemParams& p, double eps, double beta,
                                     double eps0 = 1e-3);

    static CurvatureModel perturbation(const ProblemParams& p, const CurvatureModel& Kstar,
                                       double gamma, int m, double C);

    static CurvatureModel tabulated(std::vector<double> t, std::vector<double> K);

    // Max relative deviation between the analytic derivative and a central
    // difference, sampled on a grid over |t| <= span.
    double derivative_consistency(double span = 30.0, int samples = 601,
                                  double fd_step = 1e-5) const {
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double t = -span + 2.0 * span * i / (samples - 1);
            const double fd = ((*this)(t + fd_step) - (*this)(t - fd_step)) / (2 * fd_step);
            const double an = deriv(t);
            const double scale = std::max({std::fabs(an), std::fabs(fd), 1e-8});
            worst = std::max(worst, std::fabs(an - fd) / scale);
        }
        return worst;
    }

  private:
    static std::string describe(const char* family,
                                std::initializer_list<std::pair<const char*, double>> kv) {
        std::string s = std::string("{\"family\":\"") + family + "\"";
        char buf[64];
        for (const auto& [k, v] : kv) {
            std::snprintf(buf, sizeof buf, ",\"%s\":%.17g", k, v);
            s += buf;
        }
        s += "}";
        return s;
    }

    std::function<double(double)> K_, Kd_;
    PoleFlatness north_, south_;
    double K_north_ = 1.0, K_south_ = 1.0;
    double floor_ = 0.0;
    bool eps_warn_ = false;
    std::string descriptor_;
};

// ---------------------------------------------------------------------------

inline CurvatureModel CurvatureModel::flat_pole(const ProblemParams& p, double K0, double a1,
                                                double beta1, double Kpi, double a2,
                                                double beta2, BlendSpec blend) {
    if (a1 == 0.0 || a2 == 0.0)
        throw std::invalid_argument("flat_pole: a1, a2 must be nonzero");
    if (!(beta1 >= 2.0 && beta1 < p.n && beta2 >= 2.0 && beta2 < p.n))
        throw std::invalid_argument("flat_pole: exponents must lie in [2, n)");
    if (!(K0 > 0.0 && Kpi > 0.0))
        throw std::invalid_argument("flat_pole: pole values must be positive");
    if (!(blend.theta1 > 0.0 && blend.theta2 < kPi && blend.theta1 < blend.theta2))
        throw std::invalid_argument("flat_pole: bad blend cut angles");

    const double th1 = blend.theta1, th2 = blend.theta2;
    auto branchN = [=](double th) { return K0 + a1 * std::exp(beta1 * std::log(th)); };
    auto branchN_d = [=](double th) {
        return a1 * beta1 * std::exp((beta1 - 1.0) * std::log(th));
    };
    auto branchS = [=](double th) { return Kpi + a2 * std::exp(beta2 * std::log(kPi - th)); };
    auto branchS_d = [=](double th) {
        return -a2 * beta2 * std::exp((beta2 - 1.0) * std::log(kPi - th));
    };

    auto K_theta = [=](double th) {
        if (th <= th1) return branchN(th);
        if (th >= th2) return branchS(th);
        const double w = (th - th1) / (th2 - th1);
        const double s = smooth_step(w);
        return (1.0 - s) * branchN(th) + s * branchS(th);
    };
    auto Kd_theta = [=](double th) {
        if (th <= th1) return branchN_d(th);
        if (th >= th2) return branchS_d(th);
        const double w = (th - th1) / (th2 - th1);
        const double s = smooth_step(w);
        const double sd = smooth_step_deriv(w) / (th2 - th1);
        return sd * (branchS(th) - branchN(th)) + (1.0 - s) * branchN_d(th) +
               s * branchS_d(th);
    };

    CurvatureModel m;
    m.K_ = [K_theta](double t) { return K_theta(t_to_theta(t)); };
    // dK/dt = K'(theta) dtheta/dt with dtheta/dt = -sin theta = -sech t.
    m.Kd_ = [Kd_theta](double t) { return -Kd_theta(t_to_theta(t)) / std::cosh(t); };
    m.K_north_ = K0;
    m.K_south_ = Kpi;
    m.north_ = PoleFlatness{a1, beta1, th1, [](double) { return 0.0; }};
    m.south_ = PoleFlatness{a2, beta2, kPi - th2, [](double) { return 0.0; }};

    double floor = K_theta(1e-9);
    for (int i = 0; i <= 20000; ++i) {
        const double th = 1e-9 + (kPi - 2e-9) * i / 20000.0;
        floor = std::min(floor, K_theta(th));
    }
    if (!(floor > 0.0))
        throw std::invalid_argument("flat_pole: requested coefficients make K non-positive");
    m.floor_ = floor;
    m.descriptor_ = describe("flat_pole", {{"K0", K0},
                                           {"a1", a1},
                                           {"beta1", beta1},
                                           {"Kpi", Kpi},
                                           {"a2", a2},
                                           {"beta2", beta2},
                                           {"theta_cut1", th1},
                                           {"theta_cut2", th2}});
    return m;
}

namespace detail {

// C^infty monotone band taking the value branch(0)=1/2 with the branch's
// full jet at x=0 down to the constant eps with a flat jet at x=1.
// Built as h(x) = 1/2 + int_0^x h', h' = L'(x)(1-S(x/a)) - c*b(x) with b a
// normalized interior bump; c makes the total drop exact.
struct NonexistBand {
    double beta, eps, a, c;
    // cumulative table of h on [0,1]
    std::vector<double> grid, h;

    static double bump(double x) {
        return (x > 0.0 && x < 1.0) ? std::exp(-1.0 / (x * (1.0 - x))) : 0.0;
    }

    void build(double beta_, double eps_) {
        beta = beta_;
        eps = eps_;
        a = std::min(0.6, 1.1 / beta);
        const double bump_mass =
            integrate_gk([](double x) { return bump(x); }, 0.0, 1.0, 1e-14, 1e-14).value;
        const double cutoff_drop =
            integrate_gk(
                [this](double x) {
                    return 0.5 * beta * std::exp(beta * x) * (1.0 - smooth_step(x / a));
                },
                0.0, 1.0, 1e-14, 1e-14)
                .value;
        c = (0.5 - eps - cutoff_drop) / bump_mass;
        if (c < 0.0)
            throw std::invalid_argument("nonexistence: band cannot be made monotone");
        const int m = 4096;
        grid.resize(m + 1);
        std::vector<double> hp(m + 1);
        for (int i = 0; i <= m; ++i) {
            grid[i] = double(i) / m;
            hp[i] = slope(grid[i]);
        }
        h = cumulative_uniform(hp, 1.0 / m);
        for (auto& v : h) v += 0.5;
        double worst = 0.0;
        for (int i = 0; i <= m; ++i) worst = std::max(worst, std::fabs(hp[i]));
        if (worst > 2.0)
            throw std::invalid_argument(
                "nonexistence: |dK/dt| <= 2 cannot hold on the transition band for this "
                "exponent");
    }

    double slope(double x) const {
        return -0.5 * beta * std::exp(beta * x) * (1.0 - smooth_step(x / a)) -
               c * bump(x);
    }

    double value(double x) const {
        if (x <= 0.0) return 0.5;
        if (x >= 1.0) return eps;
        const double fx = x * (grid.size() - 1);
        const std::size_t i = std::min<std::size_t>(std::size_t(fx), grid.size() - 2);
        return hermite3(x, grid[i], grid[i + 1], h[i], h[i + 1], slope(grid[i]),
                        slope(grid[i + 1]));
    }
};

}  // namespace detail

inline CurvatureModel CurvatureModel::nonexistence(const ProblemParams& p, double eps,
                                                   double T, double beta1, double beta2,
                                                   double eps_warn_threshold) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("nonexistence: need 0<eps<1/2");
    if (!(T >= 1.0)) throw std::invalid_argument("nonexistence: need T >= 1");
    if (!(beta1 >= 2.0 && beta1 < p.n && beta2 >= 2.0 && beta2 < p.n))
        throw std::invalid_argument("nonexistence: exponents must lie in [2, n)");
    if (1.0 / beta1 + 1.0 / beta2 < 2.0 / (p.n - 2 * p.k))
        throw std::invalid_argument(
            "nonexistence: 1/beta1 + 1/beta2 >= 2/(n-2k) required");

    auto bandL = std::make_shared<detail::NonexistBand>();
    bandL->build(beta2, eps);
    auto bandR = std::make_shared<detail::NonexistBand>();
    bandR->build(beta1, eps);

    CurvatureModel m;
    m.eps_warn_ = eps * std::exp((p.n + 2 * p.k) * T) > eps_warn_threshold;
    m.K_ = [=](double t) {
        if (t <= -T - 1.0) return 1.0 - 0.5 * std::exp(beta2 * (t + T + 1.0));
        if (t < -T) return bandL->value(t + T + 1.0);
        if (t <= T) return eps;
        if (t < T + 1.0) return bandR->value(-(t - T - 1.0));
        return 1.0 - 0.5 * std::exp(-beta1 * (t - T - 1.0));
    };
    m.Kd_ = [=](double t) {
        if (t <= -T - 1.0) return -0.5 * beta2 * std::exp(beta2 * (t + T + 1.0));
        if (t < -T) return bandL->slope(t + T + 1.0);
        if (t <= T) return 0.0;
        if (t < T + 1.0) return -bandR->slope(-(t - T - 1.0));
        return 0.5 * beta1 * std::exp(-beta1 * (t - T - 1.0));
    };
    m.K_north_ = m.K_south_ = 1.0;
    const double aN = -std::pow(2.0, -beta1 - 1.0) * std::exp(beta1 * (T + 1.0));
    const double aS = -std::pow(2.0, -beta2 - 1.0) * std::exp(beta2 * (T + 1.0));
    auto coarse_bound = [](double aval, double beta) {
        return [aval, beta](double dist) { return 3.0 * std::fabs(aval) * beta * beta * dist * dist; };
    };
    m.north_ = PoleFlatness{aN, beta1, 0.3, coarse_bound(aN, beta1)};
    m.south_ = PoleFlatness{aS, beta2, 0.3, coarse_bound(aS, beta2)};
    m.floor_ = eps;
    m.descriptor_ = describe("nonexistence", {{"eps", eps},
                                              {"T", T},
                                              {"beta1", beta1},
                                              {"beta2", beta2}});
    return m;
}

inline CurvatureModel CurvatureModel::noncompact(const ProblemParams& p, double eps,
                                                 double beta, double eps0) {
    if (!(beta >= 2.0 && beta < 0.5 * (p.n - 2 * p.k)))
        throw std::invalid_argument("noncompact: need 2 <= beta < (n-2k)/2");
    if (!(eps > 0.0)) throw std::invalid_argument("noncompact: eps must be positive");
    const double base = p.round_sigma();
    if (!(eps < base)) throw std::invalid_argument("noncompact: eps too large for positivity");

    // J(t) = -exp(beta*g(t)) on t<=0 with g(t)=t for t<=-1 and
    // g(t) = t(1-S(t+1)) on [-1,0]; even extension. J(0) = -1, Jdot <= 0 on
    // t <= 0, flat to all orders at 0.
    auto g = [](double t) {
        if (t <= -1.0) return t;
        return t * (1.0 - smooth_step(t + 1.0));
    };
    auto gd = [](double t) {
        if (t <= -1.0) return 1.0;
        return (1.0 - smooth_step(t + 1.0)) - t * smooth_step_deriv(t + 1.0);
    };
    auto J = [=](double t) { return -std::exp(beta * g(-std::fabs(t))); };
    auto Jd = [=](double t) {
        const double s = -std::fabs(t);
        const double d = -beta * gd(s) * std::exp(beta * g(s));  // dJ/dt at s<=0
        return t <= 0.0 ? d : -d;
    };

    CurvatureModel m;
    m.eps_warn_ = eps > eps0;
    m.K_ = [=](double t) { return base + eps * J(t); };
    m.Kd_ = [=](double t) { return eps * Jd(t); };
    m.K_north_ = m.K_south_ = base;
    const double a = -eps * std::pow(2.0, -beta);
    auto coarse_bound = [a, beta](double dist) {
        return 3.0 * std::fabs(a) * beta * beta * dist * dist;
    };
    m.north_ = PoleFlatness{a, beta, 0.3, coarse_bound};
    m.south_ = PoleFlatness{a, beta, 0.3, coarse_bound};
    m.floor_ = base - eps;
    m.descriptor_ = describe("noncompact", {{"eps", eps}, {"beta", beta},
                                            {"n", double(p.n)}, {"k", double(p.k)}});
    return m;
}

inline CurvatureModel CurvatureModel::perturbation(const ProblemParams&,
                                                   const CurvatureModel& Kstar, double gamma,
                                                   int mdeg, double C) {
    const double b1 = Kstar.north().beta, b2 = Kstar.south().beta;
    if (!(mdeg > b1 && mdeg > b2))
        throw std::invalid_argument("perturbation: m must exceed both flatness exponents");
    auto Ks = Kstar.K_;
    auto Ksd = Kstar.Kd_;
    CurvatureModel m;
    // x^{n+1} = cos theta = tanh t in the cylindrical chart.
    m.K_ = [=](double t) {
        const double x = std::tanh(t);
        return C + Ks(t) + gamma * std::pow(x, 2 * mdeg);
    };
    m.Kd_ = [=](double t) {
        const double x = std::tanh(t);
        const double sech2 = 1.0 - x * x;
        return Ksd(t) + gamma * 2.0 * mdeg * std::pow(x, 2 * mdeg - 1) * sech2;
    };
    m.K_north_ = C + Kstar.north_value() + gamma;
    m.K_south_ = C + Kstar.south_value() + gamma;
    m.north_ = Kstar.north();
    m.south_ = Kstar.south();
    double floor = m.K_(0.0);
    for (int i = 0; i <= 20000; ++i) {
        const double t = -30.0 + 60.0 * i / 20000.0;
        floor = std::min(floor, m.K_(t));
    }
    floor = std::min({floor, m.K_north_, m.K_south_});
    if (!(floor > 0.0))
        throw std::invalid_argument("perturbation: offset C too small for positivity");
    m.floor_ = floor;
    m.descriptor_ = describe("perturbation", {{"gamma", gamma},
                                              {"m", double(mdeg)},
                                              {"C", C}});
    return m;
}

inline CurvatureModel CurvatureModel::tabulated(std::vector<double> t, std::vector<double> K) {
    auto fn = std::make_shared<SampledFunction>(std::move(t), std::move(K));
    double floor = fn->values()[0];
    for (double v : fn->values()) floor = std::min(floor, v);
    if (!(floor > 0.0)) throw std::invalid_argument("tabulated: K must be positive");
    CurvatureModel m;
    const double t0 = fn->grid().front(), t1 = fn->grid().back();
    const double v0 = fn->values().front(), v1 = fn->values().back();
    m.K_ = [=](double x) {
        if (x <= t0) return v0;
        if (x >= t1) return v1;
        return (*fn)(x);
    };
    m.Kd_ = [=](double x) {
        if (x <= t0 || x >= t1) return 0.0;
        return fn->deriv(x);
    };
    m.K_north_ = v1;
    m.K_south_ = v0;
    m.floor_ = floor;
    m.descriptor_ = describe("tabulated", {{"samples", double(fn->grid().size())}});
    return m;
}

}  // namespace sigmak
