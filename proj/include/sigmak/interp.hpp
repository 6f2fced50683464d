// Interpolation on strictly increasing grids: cubic Hermite when derivatives
// are stored with the samples, Fritsch-Carlson monotone otherwise, and a
// two-point quintic Hermite used by the integrator's dense output.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sigmak {

inline std::size_t find_interval(const std::vector<double>& grid, double x) {
    if (grid.size() < 2) throw std::invalid_argument("interp: need >= 2 samples");
    if (x < grid.front() || x > grid.back())
        throw std::out_of_range("interp: query outside grid span");
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t i = std::size_t(it - grid.begin());
    if (i == 0) i = 1;
    if (i == grid.size()) i = grid.size() - 1;
    return i - 1;
}

// Cubic Hermite on [x0,x1] from endpoint values and first derivatives.
inline double hermite3(double x, double x0, double x1, double y0, double y1,
                       double d0, double d1) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return y0 * (2 * s3 - 3 * s2 + 1) + y1 * (-2 * s3 + 3 * s2) +
           h * (d0 * (s3 - 2 * s2 + s) + d1 * (s3 - s2));
}

inline double hermite3_deriv(double x, double x0, double x1, double y0, double y1,
                             double d0, double d1) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    return (y0 * (6 * s2 - 6 * s) + y1 * (-6 * s2 + 6 * s)) / h +
           d0 * (3 * s2 - 4 * s + 1) + d1 * (3 * s2 - 2 * s);
}

// Quintic Hermite on [x0,x1] from values, first and second derivatives at
// both endpoints. Written in the shifted monomial basis; the coefficients
// solve the 6x6 two-point Taylor system.
struct Quintic {
    double x0 = 0.0, c[6] = {0, 0, 0, 0, 0, 0};

    static Quintic fit(double x0, double x1, double y0, double y1, double d0,
                       double d1, double s0, double s1) {
        const double h = x1 - x0;
        Quintic q;
        q.x0 = x0;
        q.c[0] = y0;
        q.c[1] = d0;
        q.c[2] = 0.5 * s0;
        // remaining three from conditions at x1
        const double h2 = h * h;
        const double r0 = y1 - (y0 + d0 * h + 0.5 * s0 * h2);
        const double r1 = d1 - (d0 + s0 * h);
        const double r2 = s1 - s0;
        q.c[3] = (10 * r0 - 4 * r1 * h + 0.5 * r2 * h2) / (h * h2);
        q.c[4] = (-15 * r0 + 7 * r1 * h - r2 * h2) / (h2 * h2);
        q.c[5] = (6 * r0 - 3 * r1 * h + 0.5 * r2 * h2) / (h2 * h2 * h);
        return q;
    }

    double value(double x) const {
        const double u = x - x0;
        return c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))));
    }
    double deriv(double x) const {
        const double u = x - x0;
        return c[1] + u * (2 * c[2] + u * (3 * c[3] + u * (4 * c[4] + u * 5 * c[5])));
    }
    double deriv2(double x) const {
        const double u = x - x0;
        return 2 * c[2] + u * (6 * c[3] + u * (12 * c[4] + u * 20 * c[5]));
    }
};

// Fritsch-Carlson slopes: monotone cubic interpolation for data without
// stored derivatives.
inline std::vector<double> monotone_slopes(const std::vector<double>& x,
                                           const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0)
            d[i] = 0.0;
        else {
            const double w1 = 2 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2 * (x[i] - x[i - 1]);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return d;
}

// A sampled function of one variable on a strictly increasing grid; the
// derivative channel is optional (monotone slopes are fitted if absent).
class SampledFunction {
  public:
    SampledFunction() = default;
    SampledFunction(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        check();
        d_ = monotone_slopes(x_, y_);
    }
    SampledFunction(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(dy)) {
        check();
        if (d_.size() != x_.size())
            throw std::invalid_argument("SampledFunction: derivative size mismatch");
    }

    double operator()(double x) const {
        const std::size_t i = find_interval(x_, x);
        return hermite3(x, x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1]);
    }
    double deriv(double x) const {
        const std::size_t i = find_interval(x_, x);
        return hermite3_deriv(x, x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1]);
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& derivs() const { return d_; }

  private:
    void check() const {
        if (x_.size() != y_.size() || x_.size() < 2)
            throw std::invalid_argument("SampledFunction: bad sizes");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i)
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("SampledFunction: grid not strictly increasing");
    }

    std::vector<double> x_, y_, d_;
};

}  // namespace sigmak
