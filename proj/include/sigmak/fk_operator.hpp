// The cylindrical fully nonlinear operator
//
//   F_k[xi] = 2^{1-k} binom(n-1,k-1) e^{2k xi} (1-xidot^2)^{k-1}
//             (xiddot + (n-2k)/(2k) (1-xidot^2)),
//
// its inversion for xiddot, the closed-form profiles solving F_k = const,
// and the monitored functionals Hbar, H, m, m_{b,c}.
//
// States carry psi = artanh(xidot) alongside xidot: on deep trajectories
// 1-xidot^2 underflows while psi stays O(|xi|), so every formula here is
// evaluated through exp/log combinations of psi.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "sigmak/curvature.hpp"
#include "sigmak/mathfn.hpp"
#include "sigmak/params.hpp"

namespace sigmak {

struct CylState {
    double t = 0.0;
    double xi = 0.0;
    double xidot = 0.0;  // = tanh(psi), clamped into (-1,1)
    double psi = 0.0;    // authoritative near the cone boundary

    static CylState from_xidot(double t, double xi, double xidot) {
        if (!(std::fabs(xidot) < 1.0))
            throw std::domain_error("CylState: |xidot| < 1 required (cone condition)");
        CylState s;
        s.t = t;
        s.xi = xi;
        s.xidot = xidot;
        s.psi = std::atanh(xidot);
        return s;
    }

    static CylState from_psi(double t, double xi, double psi) {
        CylState s;
        s.t = t;
        s.xi = xi;
        s.psi = psi;
        double xd = std::tanh(psi);
        const double lim = one_minus_ulp();
        if (xd >= 1.0) xd = lim;
        if (xd <= -1.0) xd = -lim;
        s.xidot = xd;
        return s;
    }

    // ln(1 - xidot^2) = -2 ln cosh psi
    double log_one_minus_xidot_sq() const { return -2.0 * log_cosh(psi); }
    double one_minus_xidot_sq() const { return std::exp(log_one_minus_xidot_sq()); }
};

// --- operator and its inversion --------------------------------------------

// Raw algebraic form; adequate away from the cone boundary.
inline double eval_fk(const ProblemParams& p, double xi, double xidot, double xiddot) {
    if (!(std::fabs(xidot) < 1.0))
        throw std::domain_error("eval_fk: |xidot| < 1 required (cone condition)");
    const double w = 1.0 - xidot * xidot;
    return p.fk_prefactor() * std::exp(2.0 * p.k * xi) * std::pow(w, p.k - 1) *
           (xiddot + p.kappa() * w);
}

// Stable form through psi.
inline double eval_fk(const ProblemParams& p, const CylState& s, double xiddot) {
    const double lw = s.log_one_minus_xidot_sq();
    return p.fk_prefactor() * std::exp(2.0 * p.k * s.xi + (p.k - 1) * lw) *
           (xiddot + p.kappa() * std::exp(lw));
}

// xiddot solved from F_k[xi] = K:
//   xiddot = 2^{k-1} binom(n-1,k-1)^{-1} K e^{-2k xi} (1-xidot^2)^{1-k}
//            - (n-2k)/(2k) (1-xidot^2).
inline double ode_rhs(const ProblemParams& p, double K_value, const CylState& s) {
    if (!(K_value > 0.0)) throw std::domain_error("ode_rhs: K must be positive");
    const double lc = log_cosh(s.psi);
    return p.rhs_prefactor() * K_value * std::exp(2.0 * (p.k - 1) * lc - 2.0 * p.k * s.xi) -
           p.kappa() * std::exp(-2.0 * lc);
}

// d(psi)/dt for the integrator's (xi, psi) chart:
//   psidot = xiddot cosh^2 psi = c_K K e^{2k(ln cosh psi - xi)} - (n-2k)/(2k).
inline double psi_rhs(const ProblemParams& p, double K_value, double xi, double psi) {
    return p.rhs_prefactor() * K_value * std::exp(2.0 * p.k * (log_cosh(psi) - xi)) -
           p.kappa();
}

// At a critical point (xidot = 0), xiddot < 0 iff e^{-2k xi} K is below this.
inline double critical_concavity_threshold(const ProblemParams& p) {
    return p.kappa() / p.rhs_prefactor();
}

// --- closed-form profiles ---------------------------------------------------

// A trajectory known in closed form: xi, psi, xiddot as functions of t.
struct ClosedFormProfile {
    std::function<double(double)> xi;
    std::function<double(double)> psi;
    std::function<double(double)> xiddot;

    CylState state_at(double t) const { return CylState::from_psi(t, xi(t), psi(t)); }
};

// Xi(t) = -ln(e^t/(1+e^{2t})) - ln(2^{1/2} binom(n,k)^{1/2k}); solves F_k = 1.
inline double xi_standard(const ProblemParams& p, double t) {
    return log_cosh(t) + 0.5 * std::log(2.0) - std::log(p.binom_nk()) / (2.0 * p.k);
}

// min Xi = Xi(0) = ln(2^{1/2} binom(n,k)^{-1/2k}).
inline double xi_standard_min(const ProblemParams& p) { return xi_standard(p, 0.0); }

// t -> Xi(t + ln lambda) + (1/2k) ln K0; solves F_k = K0 identically.
inline ClosedFormProfile standard_bubble(const ProblemParams& p, double lambda, double K0) {
    if (!(lambda > 0.0 && K0 > 0.0))
        throw std::invalid_argument("standard_bubble: lambda, K0 must be positive");
    const double shift = std::log(lambda);
    const double offset = std::log(K0) / (2.0 * p.k);
    ClosedFormProfile f;
    f.xi = [=](double t) { return xi_standard(p, t + shift) + offset; };
    f.psi = [=](double t) { return t + shift; };
    f.xiddot = [=](double t) { return std::exp(-2.0 * log_cosh(t + shift)); };
    return f;
}

// t -> ln cosh(t + shift); the round family, F_k = 2^{-k} binom(n,k).
inline ClosedFormProfile round_profile(double shift = 0.0) {
    ClosedFormProfile f;
    f.xi = [=](double t) { return log_cosh(t + shift); };
    f.psi = [=](double t) { return t + shift; };
    f.xiddot = [=](double t) { return std::exp(-2.0 * log_cosh(t + shift)); };
    return f;
}

// xihat(t) = -(2k/(n-2k)) ln(a e^{-(n-2k)t/2k} + b e^{(n-2k)t/2k});
// solves F_k = 0 identically, with |xihat_dot| <= 1.
inline ClosedFormProfile degenerate_profile(const ProblemParams& p, double a, double b) {
    if (a < 0.0 || b < 0.0 || a + b <= 0.0)
        throw std::invalid_argument("degenerate_profile: need a,b >= 0, a+b > 0");
    const double kap = p.kappa();
    const double pow_coef = 2.0 * p.k / double(p.n - 2 * p.k);  // = 1/kappa
    ClosedFormProfile f;
    if (a == 0.0 || b == 0.0) {
        // single exponential: xi = -pow_coef * (ln coef +- kappa t) = -+ t - pow_coef ln coef
        const double sgn = (a == 0.0) ? -1.0 : 1.0;  // xidot
        const double coef = (a == 0.0) ? b : a;
        const double off = pow_coef * std::log(coef);
        f.xi = [=](double t) { return sgn * t - off; };
        f.psi = [=](double) { return sgn * 1.0e4; };  // tanh saturates to +-1
        f.xiddot = [](double) { return 0.0; };
        return f;
    }
    const double la = std::log(a), lb = std::log(b);
    f.xi = [=](double t) {
        const double e1 = la - kap * t, e2 = lb + kap * t;
        const double m = std::max(e1, e2);
        return -pow_coef * (m + std::log1p(std::exp(std::min(e1, e2) - m)));
    };
    // xidot = (a e^{-kap t} - b e^{kap t})/(a e^{-kap t} + b e^{kap t})
    //       = tanh((ln(a/b))/2 - kap t)
    f.psi = [=](double t) { return 0.5 * (la - lb) - kap * t; };
    f.xiddot = [=, psi = f.psi](double t) {
        return -kap * std::exp(-2.0 * log_cosh(psi(t)));
    };
    return f;
}

// --- monitored functionals ---------------------------------------------------

enum class FunctionalKind { Hbar, H, Mass, MassBC };

// Hbar = 2^{-k} binom(n,k) e^{(2k-n)xi} (1-xidot^2)^k - e^{-n xi}
inline double hbar_value(const ProblemParams& p, const CylState& s) {
    const double lw = s.log_one_minus_xidot_sq();
    return p.round_sigma() * std::exp((2.0 * p.k - p.n) * s.xi + p.k * lw) -
           std::exp(-p.n * s.xi);
}

// H = 2^{-k} binom(n,k) e^{(2k-n)xi} (1-xidot^2)^k - K(t) e^{-n xi}
inline double h_value(const ProblemParams& p, double K_value, const CylState& s) {
    const double lw = s.log_one_minus_xidot_sq();
    return p.round_sigma() * std::exp((2.0 * p.k - p.n) * s.xi + p.k * lw) -
           K_value * std::exp(-p.n * s.xi);
}

// m = 2^{1-k} binom(n,k)/n (1+xidot)^k e^{(n-2k)(t-xi)/2}
inline double mass_value(const ProblemParams& p, const CylState& s) {
    const double lp = log_one_plus_tanh(s.psi);
    return 2.0 * p.round_sigma() / p.n *
           std::exp(p.k * lp + 0.5 * (p.n - 2 * p.k) * (s.t - s.xi));
}

// m_{b,c} = 2^{1-k} binom(n,k)/n (1-xidot)^{-k(b+c)} (1+xidot)^{-k(b-c)}
//           e^{(n-2k)(b xi + c t)}
inline double mass_bc_value(const ProblemParams& p, double b, double c, const CylState& s) {
    const double lp = log_one_plus_tanh(s.psi);
    const double lm = log_one_minus_tanh(s.psi);
    return 2.0 * p.round_sigma() / p.n *
           std::exp(-p.k * (b + c) * lm - p.k * (b - c) * lp +
                    (p.n - 2 * p.k) * (b * s.xi + c * s.t));
}

inline double eval_functional(FunctionalKind kind, const ProblemParams& p, double K_value,
                              const CylState& s, double b = 0.0, double c = 0.0) {
    switch (kind) {
        case FunctionalKind::Hbar: return hbar_value(p, s);
        case FunctionalKind::H: return h_value(p, K_value, s);
        case FunctionalKind::Mass: return mass_value(p, s);
        default: return mass_bc_value(p, b, c, s);
    }
}

}  // namespace sigmak
