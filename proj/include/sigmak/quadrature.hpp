// Quadrature: adaptive Gauss-Kronrod (G7,K15) for smooth integrands,
// tanh-sinh for endpoint-singular ones, and cumulative quadrature on
// uniform grids for the Green-representation solves.
#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sigmak {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimate
    int evaluations = 0;
};

namespace detail {
// QUADPACK dqk15 constants.
inline const double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline const double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline const double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct GkCell {
    double a, b, value, error;
    bool operator<(const GkCell& o) const { return error < o.error; }
};

template <class F>
inline GkCell gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resg = 0.0, resk = 0.0;
    const double fc = f(c);
    resg += kWg[3] * fc;
    resk += kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    GkCell cell;
    cell.a = a;
    cell.b = b;
    cell.value = resk * h;
    const double diff = std::fabs(resk - resg) * std::fabs(h);
    cell.error = std::pow(200.0 * diff, 1.5);
    if (cell.error > diff) cell.error = diff;
    if (cell.error < 1e-300) cell.error = diff;
    return cell;
}
}  // namespace detail

// Adaptive G7K15 on [a,b].
template <class F>
inline QuadResult integrate_gk(const F& f, double a, double b, double atol = 1e-12,
                               double rtol = 1e-12, int max_cells = 4000) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<detail::GkCell> heap;
    auto first = detail::gk15(f, a, b);
    out.evaluations = 15;
    double total = first.value, err = first.error;
    heap.push(first);
    while (int(heap.size()) < max_cells) {
        if (err <= std::max(atol, rtol * std::fabs(total))) break;
        auto worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        auto l = detail::gk15(f, worst.a, m);
        auto r = detail::gk15(f, m, worst.b);
        out.evaluations += 30;
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    out.value = total;
    out.error = std::fabs(err);
    return out;
}

// tanh-sinh quadrature on (0,1); handles integrable endpoint singularities.
template <class F>
inline QuadResult integrate_tanh_sinh01(const F& f, int levels = 12) {
    // x(u) = 1/2 + 1/2 tanh( (pi/2) sinh u ), weight = derivative.
    QuadResult out;
    const double umax = 4.0;
    double prev = 0.0;
    for (int lev = 3; lev <= levels; ++lev) {
        const double h = umax / std::ldexp(1.0, lev - 1);
        double sum = 0.0;
        const int m = 1 << (lev - 1);
        for (int i = -m; i <= m; ++i) {
            const double u = i * h;
            const double sh = std::sinh(u);
            const double w = 0.5 * (3.14159265358979323846 / 2.0) * std::cosh(u) /
                             std::pow(std::cosh((3.14159265358979323846 / 2.0) * sh), 2);
            // x in (0,1); evaluate distances to endpoints stably
            const double ex = std::exp(-3.14159265358979323846 * sh);
            const double x = 1.0 / (1.0 + ex);          // = sigma(pi sinh u)
            const double one_minus_x = ex / (1.0 + ex);
            if (x <= 0.0 || one_minus_x <= 0.0 || w < 1e-300) continue;
            sum += w * f(x, one_minus_x);
            ++out.evaluations;
        }
        const double val = sum * h;
        out.error = std::fabs(val - prev);
        prev = val;
        out.value = val;
        if (lev > 6 && out.error < 1e-14 * (1.0 + std::fabs(val))) break;
    }
    return out;
}

// Integral over (0, infinity) via r = x/(1-x) and tanh-sinh.
template <class F>
inline QuadResult integrate_tanh_sinh_0inf(const F& f, int levels = 12) {
    auto g = [&](double x, double one_minus_x) {
        const double r = x / one_minus_x;
        return f(r) / (one_minus_x * one_minus_x);
    };
    return integrate_tanh_sinh01(g, levels);
}

// Cumulative integral of samples on a uniform grid, 4th order: each cell is
// integrated with the cubic through its four nearest samples.
inline std::vector<double> cumulative_uniform(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("cumulative_uniform: need >= 4 samples");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double inc;
        if (i == 0)
            inc = h / 24.0 * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
        else if (i + 2 < n)
            inc = h / 24.0 * (-f[i - 1] + 13 * f[i] + 13 * f[i + 1] - f[i + 2]);
        else
            inc = h / 24.0 * (f[i - 2] - 5 * f[i - 1] + 19 * f[i] + 9 * f[i + 1]);
        out[i + 1] = out[i] + inc;
    }
    return out;
}

}  // namespace sigmak
