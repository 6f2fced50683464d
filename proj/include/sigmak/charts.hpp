// The three coordinate charts (spherical theta, Euclidean r, cylindrical t)
// and conversions between the solution representations v, u, xi.
//
// Conventions: r = cot(theta/2), t = ln r, so t -> +inf at theta=0 (north)
// and t -> -inf at theta=pi (south). All angles in radians, logs natural.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmak/params.hpp"

namespace sigmak {

enum class Chart { Spherical, Euclidean, Cylindrical };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Spherical: return "spherical";
        case Chart::Euclidean: return "euclidean";
        default: return "cylindrical";
    }
}

// Default guard half-width around the poles for chart conversions.
inline constexpr double kDefaultPoleMargin = 1e-6;

inline double theta_to_t(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("theta_to_t: theta must lie in (0, pi)");
    return std::log(std::tan(0.5 * (kPi - theta)));  // = ln cot(theta/2)
}

inline double t_to_theta(double t) { return 2.0 * std::atan(std::exp(-t)); }

inline double theta_to_r(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("theta_to_r: theta must lie in (0, pi)");
    return 1.0 / std::tan(0.5 * theta);
}

inline double r_to_t(double r) {
    if (!(r > 0.0)) throw std::domain_error("r_to_t: r must be positive");
    return std::log(r);
}

// One point carried consistently in all three charts.
struct ChartPoint {
    double theta, r, t;

    static ChartPoint from_theta(double theta) {
        ChartPoint p;
        p.theta = theta;
        p.r = theta_to_r(theta);
        p.t = theta_to_t(theta);
        return p;
    }
    static ChartPoint from_t(double t) {
        ChartPoint p;
        p.t = t;
        p.r = std::exp(t);
        p.theta = t_to_theta(t);
        return p;
    }
};

// sin(theta) and cos(theta) in terms of t: sech t and tanh t.
inline double sin_theta_of_t(double t) { return 1.0 / std::cosh(t); }
inline double cos_theta_of_t(double t) { return std::tanh(t); }

// Pointwise conversions between the three solution values at one point.
// u = (2/(1+r^2))^{(n-2)/2} v,  xi = -(2/(n-2)) ln u - ln r.
struct SolutionTriple {
    double v, u, xi;
};

inline double v_to_u(double v, double r, const ProblemParams& p) {
    if (!(v > 0.0)) throw std::domain_error("v_to_u: conformal factor must be positive");
    return std::pow(2.0 / (1.0 + r * r), 0.5 * (p.n - 2)) * v;
}

inline double u_to_v(double u, double r, const ProblemParams& p) {
    if (!(u > 0.0)) throw std::domain_error("u_to_v: conformal factor must be positive");
    return std::pow(2.0 / (1.0 + r * r), -0.5 * (p.n - 2)) * u;
}

inline double u_to_xi(double u, double t, const ProblemParams& p) {
    if (!(u > 0.0)) throw std::domain_error("u_to_xi: conformal factor must be positive");
    return -2.0 / (p.n - 2) * std::log(u) - t;
}

inline double xi_to_u(double xi, double t, const ProblemParams& p) {
    return std::exp(-0.5 * (p.n - 2) * (xi + t));
}

inline SolutionTriple triple_from_v(double v, const ChartPoint& at, const ProblemParams& p) {
    SolutionTriple s;
    s.v = v;
    s.u = v_to_u(v, at.r, p);
    s.xi = u_to_xi(s.u, at.t, p);
    return s;
}

inline SolutionTriple triple_from_xi(double xi, const ChartPoint& at, const ProblemParams& p) {
    SolutionTriple s;
    s.xi = xi;
    s.u = xi_to_u(xi, at.t, p);
    s.v = u_to_v(s.u, at.r, p);
    return s;
}

// A sampled scalar profile in one chart (abscissa increasing).
struct SampledProfile {
    Chart chart = Chart::Cylindrical;
    std::vector<double> x;      // theta, r, or t
    std::vector<double> value;  // v, u, or xi

    std::size_t size() const { return x.size(); }
};

// Pointwise conversion of a sampled profile to another chart, applying the
// exact algebraic relations. Grids are re-expressed in the target abscissa;
// order is flipped when the chart map reverses orientation (theta vs t).
inline SampledProfile convert_profile(const SampledProfile& in, Chart target,
                                      const ProblemParams& p,
                                      double pole_margin = kDefaultPoleMargin) {
    SampledProfile out;
    out.chart = target;
    const std::size_t n = in.size();
    out.x.resize(n);
    out.value.resize(n);

    auto point_at = [&](std::size_t i) {
        switch (in.chart) {
            case Chart::Spherical: {
                const double th = in.x[i];
                if (!(th >= pole_margin && th <= kPi - pole_margin))
                    throw std::domain_error("convert_profile: theta too close to a pole");
                return ChartPoint::from_theta(th);
            }
            case Chart::Euclidean:
                return ChartPoint::from_t(r_to_t(in.x[i]));
            default:
                return ChartPoint::from_t(in.x[i]);
        }
    };

    const bool flip = (in.chart == Chart::Spherical) != (target == Chart::Spherical);
    for (std::size_t i = 0; i < n; ++i) {
        const ChartPoint at = point_at(i);
        SolutionTriple tr;
        switch (in.chart) {
            case Chart::Spherical: tr = triple_from_v(in.value[i], at, p); break;
            case Chart::Euclidean:
                tr.u = in.value[i];
                tr.v = u_to_v(tr.u, at.r, p);
                tr.xi = u_to_xi(tr.u, at.t, p);
                break;
            default: tr = triple_from_xi(in.value[i], at, p); break;
        }
        const std::size_t j = flip ? n - 1 - i : i;
        switch (target) {
            case Chart::Spherical:
                out.x[j] = at.theta;
                out.value[j] = tr.v;
                break;
            case Chart::Euclidean:
                out.x[j] = at.r;
                out.value[j] = tr.u;
                break;
            default:
                out.x[j] = at.t;
                out.value[j] = tr.xi;
                break;
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(out.x[i] < out.x[i + 1]))
            throw std::runtime_error("convert_profile: output grid not increasing");
    return out;
}

}  // namespace sigmak
