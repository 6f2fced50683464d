// Adaptive Dormand-Prince 5(4) integration of the cylindrical ODE with
// quintic-Hermite dense output and event detection.
//
// The integration chart is y = (xi, psi) with psi = artanh(xidot):
//   xi'  = tanh psi
//   psi' = 2^{k-1} binom(n-1,k-1)^{-1} K(t) e^{2k(ln cosh psi - xi)} - (n-2k)/2k
// which stays smooth and well-scaled arbitrarily close to the cone boundary
// |xidot| = 1. Events: critical points (psi = 0), cone-boundary approach
// (|psi| >= guard), blow-down (xi >= cap).
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmak/curvature.hpp"
#include "sigmak/fk_operator.hpp"
#include "sigmak/interp.hpp"
#include "sigmak/params.hpp"

namespace sigmak {

struct Event {
    enum class Kind { CriticalMin, CriticalMax, CriticalFlat, ConeBoundary, BlowDown };
    Kind kind;
    double t;
    CylState state;
};

inline const char* event_kind_name(Event::Kind k) {
    switch (k) {
        case Event::Kind::CriticalMin: return "critical-min";
        case Event::Kind::CriticalMax: return "critical-max";
        case Event::Kind::CriticalFlat: return "critical-flat";
        case Event::Kind::ConeBoundary: return "cone-boundary";
        default: return "blow-down";
    }
}

struct IntegratorStats {
    int accepted = 0;
    int rejected = 0;
    int rhs_evaluations = 0;
    double max_defect = 0.0;          // mid-step |F_k - K| of the dense interpolant
    double max_node_residual = 0.0;   // node |F_k - K| of the stored triples
    bool terminated_by_event = false;
    std::string termination;
};

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double psi_guard = 10.721959926508964;  // artanh(1 - 1e-9)
    double xi_cap = 200.0;
    double h_init = 1e-3;
    double h_min = 1e-13;
    double h_max = 0.5;
    long max_steps = 4000000;
    double flat_xiddot_tol = 1e-8;  // tangential-zero flag threshold
};

// An integrated (or closed-form-sampled) trajectory with dense output.
class CylProfile {
  public:
    const std::vector<double>& grid() const { return t_; }
    const std::vector<double>& xi() const { return xi_; }
    const std::vector<double>& xidot() const { return xidot_; }
    const std::vector<double>& psi() const { return psi_; }
    const std::vector<double>& xiddot() const { return xiddot_; }
    const std::vector<Event>& events() const { return events_; }
    const IntegratorStats& stats() const { return stats_; }

    double t_begin() const { return t_.front(); }
    double t_end() const { return t_.back(); }
    std::size_t size() const { return t_.size(); }

    CylState state(std::size_t i) const { return CylState::from_psi(t_[i], xi_[i], psi_[i]); }

    double xi_at(double t) const { return qxi_[step_index(t)].value(t); }
    double psi_at(double t) const { return qpsi_[step_index(t)].value(t); }
    double xidot_at(double t) const { return std::tanh(psi_at(t)); }
    // second derivative from the dense psi channel: xi'' = sech^2(psi) psi'
    double xiddot_at(double t) const {
        const std::size_t i = step_index(t);
        const double ps = qpsi_[i].value(t);
        return std::exp(-2.0 * log_cosh(ps)) * qpsi_[i].deriv(t);
    }
    CylState state_at(double t) const {
        return CylState::from_psi(t, xi_at(t), psi_at(t));
    }

    bool contains(double t) const { return t >= t_.front() && t <= t_.back(); }

    // --- construction ---
    void append_node(double t, double xi, double psi, double xiddot) {
        if (!t_.empty() && !(t > t_.back()))
            throw std::invalid_argument("CylProfile: nodes must be strictly increasing");
        t_.push_back(t);
        xi_.push_back(xi);
        psi_.push_back(psi);
        double xd = std::tanh(psi);
        const double lim = one_minus_ulp();
        if (xd >= 1.0) xd = lim;
        if (xd <= -1.0) xd = -lim;
        xidot_.push_back(xd);
        xiddot_.push_back(xiddot);
    }
    void append_step(const Quintic& qxi, const Quintic& qpsi) {
        qxi_.push_back(qxi);
        qpsi_.push_back(qpsi);
    }
    void add_event(Event e) { events_.push_back(std::move(e)); }
    IntegratorStats& mutable_stats() { return stats_; }

  private:
    std::size_t step_index(double t) const {
        if (qxi_.empty()) throw std::out_of_range("CylProfile: no dense data");
        const std::size_t i = find_interval(t_, t);
        return std::min(i, qxi_.size() - 1);
    }

    std::vector<double> t_, xi_, xidot_, psi_, xiddot_;
    std::vector<Quintic> qxi_, qpsi_;
    std::vector<Event> events_;
    IntegratorStats stats_;
};

namespace detail {

struct Derivs {
    double xid, psid;       // first derivatives of the channels
    double xidd, psidd;     // second derivatives (for dense output)
};

inline Derivs channel_derivs(const ProblemParams& p, const CurvatureModel& K, double t,
                             double xi, double psi) {
    Derivs d;
    const double lc = log_cosh(psi);
    const double th = std::tanh(psi);
    const double E = p.rhs_prefactor() * K(t) * std::exp(2.0 * p.k * (lc - xi));
    d.xid = th;
    d.psid = E - p.kappa();
    const double sech2 = std::exp(-2.0 * lc);
    d.xidd = sech2 * d.psid;
    // E' = E [ Kdot/K + 2k (tanh(psi) psi' - xi') ] = E [Kdot/K + 2k tanh(psi)(psi'-1)]
    d.psidd = E * (K.deriv(t) / K(t) + 2.0 * p.k * th * (d.psid - 1.0));
    return d;
}

// One DOPRI5 step from (t, y); returns error-normalized estimate.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    // stage coefficients
    static double step(const ProblemParams& p, const CurvatureModel& K, double t,
                       const std::array<double, 2>& y, double h,
                       const std::array<double, 2>& k1, std::array<double, 2>& ynew,
                       std::array<double, 2>& k7, double atol, double rtol, int& nfev) {
        auto f = [&](double tt, const std::array<double, 2>& yy) {
            ++nfev;
            const double lc = log_cosh(yy[1]);
            return std::array<double, 2>{
                std::tanh(yy[1]),
                p.rhs_prefactor() * K(tt) * std::exp(2.0 * p.k * (lc - yy[0])) - p.kappa()};
        };
        std::array<double, 2> k2, k3, k4, k5, k6, yt;
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (1.0 / 5) * k1[i];
        k2 = f(t + c2 * h, yt);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (3.0 / 40 * k1[i] + 9.0 / 40 * k2[i]);
        k3 = f(t + c3 * h, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (44.0 / 45 * k1[i] - 56.0 / 15 * k2[i] + 32.0 / 9 * k3[i]);
        k4 = f(t + c4 * h, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (19372.0 / 6561 * k1[i] - 25360.0 / 2187 * k2[i] +
                                64448.0 / 6561 * k3[i] - 212.0 / 729 * k4[i]);
        k5 = f(t + c5 * h, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (9017.0 / 3168 * k1[i] - 355.0 / 33 * k2[i] +
                                46732.0 / 5247 * k3[i] + 49.0 / 176 * k4[i] -
                                5103.0 / 18656 * k5[i]);
        k6 = f(t + h, yt);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                                  125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                  11.0 / 84 * k6[i]);
        k7 = f(t + h, ynew);
        // embedded 4th order
        double err = 0.0;
        const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        for (int i = 0; i < 2; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        return std::sqrt(0.5 * err);
    }
};

template <class F>
inline double brent_root(const F& f, double a, double b, double fa, double fb,
                         double tol = 1e-13, int maxit = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::runtime_error("brent_root: not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxit; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, pq, q;
            if (a == c) {
                pq = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                pq = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) q = -q;
            pq = std::fabs(pq);
            if (2.0 * pq < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = pq / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

// roots of a dense-output channel on [ta,tb] by sign-scanning + brent
template <class F>
inline void scan_roots(const F& f, double ta, double tb, std::vector<double>& out,
                       int scan = 16) {
    double prev_t = ta, prev_f = f(ta);
    for (int i = 1; i <= scan; ++i) {
        const double t = ta + (tb - ta) * i / scan;
        const double ft = f(t);
        if (prev_f == 0.0)
            out.push_back(prev_t);
        else if (prev_f * ft < 0.0)
            out.push_back(brent_root(f, prev_t, t, prev_f, ft));
        prev_t = t;
        prev_f = ft;
    }
}

}  // namespace detail

// Integrate F_k[xi] = K from `init` forward to t_end. Critical points are
// recorded as events; reaching the cone guard or the blow-down cap
// terminates the trajectory with a terminal event (not an error).
inline CylProfile integrate(const ProblemParams& p, const CurvatureModel& K,
                            const CylState& init, double t_end,
                            const IntegrateOptions& opt = {}) {
    if (!(t_end > init.t))
        throw std::invalid_argument("integrate: t_end must exceed init.t");

    CylProfile prof;
    IntegratorStats& st = prof.mutable_stats();

    double t = init.t;
    std::array<double, 2> y = {init.xi, init.psi};
    auto d0 = detail::channel_derivs(p, K, t, y[0], y[1]);
    st.rhs_evaluations += 1;
    prof.append_node(t, y[0], y[1], d0.xidd);

    std::array<double, 2> k1 = {d0.xid, d0.psid};
    double h = std::min(opt.h_init, t_end - t);

    for (long step = 0; step < opt.max_steps; ++step) {
        if (t >= t_end) break;
        h = std::min(h, t_end - t);
        if (h < opt.h_min)
            throw std::runtime_error("integrate: step-size collapse at t=" + std::to_string(t));

        std::array<double, 2> ynew, k7;
        const double err = detail::Dopri5::step(p, K, t, y, h, k1, ynew, k7, opt.atol,
                                                opt.rtol, st.rhs_evaluations);
        const bool bad = !std::isfinite(err) || !std::isfinite(ynew[0]) ||
                         !std::isfinite(ynew[1]) || !std::isfinite(k7[0]) ||
                         !std::isfinite(k7[1]);
        if (bad || err > 1.0) {
            ++st.rejected;
            h *= bad ? 0.2 : std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // dense output for both channels over [t, t+h]
        auto d1 = detail::channel_derivs(p, K, t + h, ynew[0], ynew[1]);
        ++st.rhs_evaluations;
        const Quintic qxi = Quintic::fit(t, t + h, y[0], ynew[0], d0.xid, d1.xid, d0.xidd, d1.xidd);
        const Quintic qpsi =
            Quintic::fit(t, t + h, y[1], ynew[1], d0.psid, d1.psid, d0.psidd, d1.psidd);

        // terminal events first: cone guard and blow-down
        double t_stop = t + h;
        Event::Kind stop_kind{};
        bool stop = false;
        {
            std::vector<double> roots;
            auto g = [&](double tt) { return std::fabs(qpsi.value(tt)) - opt.psi_guard; };
            if (g(t + h) >= 0.0 || g(t) >= 0.0) {
                detail::scan_roots(g, t, t + h, roots);
                if (roots.empty() && g(t + h) >= 0.0) roots.push_back(t + h);
            }
            for (double r : roots)
                if (!stop || r < t_stop) {
                    t_stop = r;
                    stop_kind = Event::Kind::ConeBoundary;
                    stop = true;
                }
            roots.clear();
            auto b = [&](double tt) { return qxi.value(tt) - opt.xi_cap; };
            if (b(t + h) >= 0.0) {
                detail::scan_roots(b, t, t + h, roots);
                if (roots.empty()) roots.push_back(t + h);
                for (double r : roots)
                    if (!stop || r < t_stop) {
                        t_stop = r;
                        stop_kind = Event::Kind::BlowDown;
                        stop = true;
                    }
            }
        }

        // critical points: psi = 0 inside (t, t_stop]
        {
            std::vector<double> roots;
            detail::scan_roots([&](double tt) { return qpsi.value(tt); }, t, t_stop, roots);
            for (double r : roots) {
                if (r <= t + 1e-14 || r > t_stop) continue;
                const double xiv = qxi.value(r);
                const double psv = qpsi.value(r);
                const CylState s = CylState::from_psi(r, xiv, psv);
                const double xidd = ode_rhs(p, K(r), s);
                Event ev;
                ev.t = r;
                ev.state = s;
                if (std::fabs(xidd) < opt.flat_xiddot_tol)
                    ev.kind = Event::Kind::CriticalFlat;
                else
                    ev.kind = xidd > 0.0 ? Event::Kind::CriticalMin : Event::Kind::CriticalMax;
                prof.add_event(ev);
            }
        }

        if (stop) {
            // truncate the step at the event and finish
            const double xiv = qxi.value(t_stop), psv = qpsi.value(t_stop);
            auto dstop = detail::channel_derivs(p, K, t_stop, xiv, psv);
            ++st.rhs_evaluations;
            if (t_stop > t) {
                prof.append_node(t_stop, xiv, psv, dstop.xidd);
                prof.append_step(qxi, qpsi);
            }
            Event ev;
            ev.t = t_stop;
            ev.kind = stop_kind;
            ev.state = CylState::from_psi(t_stop, xiv, psv);
            prof.add_event(ev);
            st.terminated_by_event = true;
            st.termination = event_kind_name(stop_kind);
            ++st.accepted;
            return prof;
        }

        // mid-step collocation defect of the dense interpolant (diagnostic)
        {
            const double tm = t + 0.5 * h;
            const double ps = qpsi.value(tm);
            const double xidd = std::exp(-2.0 * log_cosh(ps)) * qpsi.deriv(tm);
            const CylState sm = CylState::from_psi(tm, qxi.value(tm), ps);
            st.max_defect =
                std::max(st.max_defect, std::fabs(eval_fk(p, sm, xidd) - K(tm)));
        }

        t += h;
        y = ynew;
        k1 = k7;
        d0 = d1;
        prof.append_node(t, y[0], y[1], d1.xidd);
        prof.append_step(qxi, qpsi);
        ++st.accepted;

        {
            const CylState sn = CylState::from_psi(t, y[0], y[1]);
            st.max_node_residual = std::max(
                st.max_node_residual, std::fabs(eval_fk(p, sn, d1.xidd) - K(t)));
        }

        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
        h = std::min(h, opt.h_max);
    }
    if (t < t_end) throw std::runtime_error("integrate: max step count exceeded");
    st.termination = "reached-t-end";
    return prof;
}

// Sample a closed-form trajectory into a CylProfile (exact nodes, quintic
// dense pieces from analytic derivatives). psi is linear in t for all the
// closed forms here, so the psi channel is fitted with zero curvature.
inline CylProfile profile_from_closed_form(const ProblemParams& p, const ClosedFormProfile& f,
                                           double t0, double t1, int samples = 801) {
    if (!(t1 > t0) || samples < 2)
        throw std::invalid_argument("profile_from_closed_form: bad span");
    CylProfile prof;
    double prev_t = 0.0, prev_xi = 0.0, prev_psi = 0.0, prev_xidd = 0.0, prev_psid = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * i / (samples - 1);
        const double xiv = f.xi(t), psv = f.psi(t), xidd = f.xiddot(t);
        const double psid = xidd * std::exp(2.0 * log_cosh(psv));
        prof.append_node(t, xiv, psv, xidd);
        if (i > 0) {
            prof.append_step(Quintic::fit(prev_t, t, prev_xi, xiv, std::tanh(prev_psi),
                                          std::tanh(psv), prev_xidd, xidd),
                             Quintic::fit(prev_t, t, prev_psi, psv, prev_psid, psid, 0.0, 0.0));
        }
        prev_t = t;
        prev_xi = xiv;
        prev_psi = psv;
        prev_xidd = xidd;
        prev_psid = psid;
    }
    prof.mutable_stats().termination = "closed-form";
    return prof;
}

}  // namespace sigmak
