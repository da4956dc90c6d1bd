#include "subdicke/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdicke/errors.hpp"
#include "subdicke/greens.hpp"

namespace subdicke {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;

struct Accumulator {
    double value = 0.0;
    double bound = 0.0;
    double scale = 0.0;
    void add(const QuadResult& r) {
        value += r.value;
        bound += r.error_bound;
        scale += std::abs(r.value);
    }
};

// breakpoints of the core integration region (-Omega, Omega); symmetric,
// log-spaced around the near-critical peak at omega -> 0
std::vector<double> core_breakpoints(double delta, double omega_cap) {
    std::vector<double> pos{0.0};
    for (double x : geometric_breakpoints(delta * 1e-6, delta))
        pos.push_back(x);
    for (double x : geometric_breakpoints(delta * 10.0, omega_cap))
        if (x > pos.back()) pos.push_back(x);
    if (pos.back() < omega_cap) pos.push_back(omega_cap);
    std::vector<double> bps;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it)
        if (*it > 0.0) bps.push_back(-*it);
    bps.insert(bps.end(), pos.begin(), pos.end());
    return bps;
}

} // namespace

PopulationResult population(const ModelParams& p, double y, const QuadConfig& cfg) {
    ModelParams py = p.with_y(y);
    const auto errs = validate(py);
    if (!errs.empty()) {
        std::ostringstream os;
        os << "population:";
        for (const auto& e : errs) os << ' ' << e;
        throw std::domain_error(os.str());
    }

    PopulationResult out;
    out.y = y;

    // a mode without any noise channel has no spectral weight in the Keldysh
    // integral; its steady state is the vacuum of the undamped oscillator
    // (the eta -> 0+ limit of an infinitesimally damped one), so n = 0
    const bool b_decoupled_lossless = (py.gamma == 0.0 && py.y == 0.0);
    const bool all_lossless = (py.kappa == 0.0 && py.gamma == 0.0);
    if (all_lossless) return out;

    const double yc = critical_coupling(py);
    const double eps = 1.0 - y / yc;
    const double delta = std::max(10.0 * std::pow(eps, 1.0 / py.s), 1e-12) * py.omega_b;
    const double omega_cap = 50.0 * std::max({py.omega_a, py.omega_b, py.kappa});

    Accumulator acc_a, acc_b;
    std::int64_t evals = 0;

    // core region, panel by panel in ascending omega order
    const auto fa = [&](double w) {
        ++evals;
        return spectra(w, py).c_a;
    };
    const auto fb = [&](double w) {
        ++evals;
        return spectra(w, py).c_b;
    };
    const auto bps = core_breakpoints(delta, omega_cap);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        acc_a.add(integrate_panel(fa, bps[i], bps[i + 1], cfg));
        acc_b.add(integrate_panel(fb, bps[i], bps[i + 1], cfg));
    }

    // tails |omega| > Omega in the rescaled variable u = 1/|omega|;
    // the kappa part is regular, the bath part carries u^{-s} removed by
    // the substitution v = u^{1-s}
    const double u_cap = 1.0 / omega_cap;
    for (int sign : {+1, -1}) {
        const auto reg_a = [&](double u) {
            ++evals;
            return spectra_tail_scaled(u, sign, py).regular_a;
        };
        const auto reg_b = [&](double u) {
            ++evals;
            return spectra_tail_scaled(u, sign, py).regular_b;
        };
        acc_a.add(integrate_panel(reg_a, 0.0, u_cap, cfg));
        acc_b.add(integrate_panel(reg_b, 0.0, u_cap, cfg));
        if (py.gamma > 0.0) {
            const double q = 1.0 / (1.0 - py.s);
            const double v_cap = std::pow(u_cap, 1.0 / q);
            const auto bath_a = [&](double v) {
                ++evals;
                return spectra_tail_scaled(std::pow(v, q), sign, py).bath_a;
            };
            const auto bath_b = [&](double v) {
                ++evals;
                return spectra_tail_scaled(std::pow(v, q), sign, py).bath_b;
            };
            QuadResult ra = integrate_panel(bath_a, 0.0, v_cap, cfg);
            QuadResult rb = integrate_panel(bath_b, 0.0, v_cap, cfg);
            acc_a.add({q * ra.value, q * ra.error_bound});
            acc_b.add({q * rb.value, q * rb.error_bound});
        }
    }

    out.n_a = (acc_a.value / (2.0 * pi) - 1.0) / 2.0;
    out.n_b = b_decoupled_lossless ? 0.0 : (acc_b.value / (2.0 * pi) - 1.0) / 2.0;
    out.quad_error_estimate = (acc_a.bound + acc_b.bound) / (4.0 * pi);
    out.evaluations = evals;

    const double scale = std::max(acc_a.scale, acc_b.scale) / (4.0 * pi);
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::max(1.0, scale));
    if (!(out.quad_error_estimate <= target) || !std::isfinite(out.n_a) ||
        !std::isfinite(out.n_b)) {
        std::ostringstream os;
        os << "population: quadrature error bound " << out.quad_error_estimate
           << " above target " << target << " at y = " << y;
        throw QuadratureError(os.str(), out.n_a, out.quad_error_estimate);
    }
    return out;
}

ExponentFit exponent_fit(const ModelParams& p, Mode mode, const FitWindow& window,
                         const QuadConfig& cfg) {
    if (!(window.eps_min > 0.0) || !(window.eps_max > window.eps_min))
        throw std::domain_error("exponent_fit: window must satisfy 0 < eps_min < eps_max");
    if (window.points < 5)
        throw std::domain_error("exponent_fit: need at least 5 points");

    const double yc = critical_coupling(p);
    ExponentFit fit;
    fit.s = p.s;
    fit.eps_min = window.eps_min;
    fit.eps_max = window.eps_max;

    const int m = window.points;
    std::vector<double> lx(m), ly(m);
    for (int i = 0; i < m; ++i) {
        const double t = m == 1 ? 0.0 : static_cast<double>(i) / (m - 1);
        const double eps = window.eps_min * std::pow(window.eps_max / window.eps_min, t);
        const double y = (1.0 - eps) * yc;
        PopulationResult r;
        try {
            r = population(p, y, cfg);
        } catch (const NumericalError& e) {
            std::ostringstream os;
            os << "exponent_fit: population failed at eps = " << eps << ": " << e.what();
            throw QuadratureError(os.str(), 0.0, 0.0);
        }
        const double n = mode == Mode::a ? r.n_a : r.n_b;
        if (!(n > 0.0)) {
            std::ostringstream os;
            os << "exponent_fit: non-positive population at eps = " << eps;
            throw QuadratureError(os.str(), n, r.quad_error_estimate);
        }
        fit.points.emplace_back(eps, n);
        lx[i] = std::log(eps);
        ly[i] = std::log(n);
    }

    // unweighted least squares in log-log space
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = ly[i] - (slope * lx[i] + intercept);
        rss += r * r;
    }
    const double rms = std::sqrt(rss / m);
    if (rms > 0.1) {
        std::ostringstream os;
        os << "exponent_fit: no power law in window [" << window.eps_min << ", "
           << window.eps_max << "] (rms ln-residual " << rms << ")";
        throw QuadratureError(os.str(), -slope, rms);
    }

    fit.exponent = -slope;
    fit.std_error = std::sqrt(rss / (m - 2) / sxx);
    return fit;
}

} // namespace subdicke
