#include "subdicke/poles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "subdicke/errors.hpp"

namespace subdicke {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
const Complex I{0.0, 1.0};

double pole_scale(Complex z, const ModelParams& p) {
    const double m = std::max({std::abs(z), p.omega_a, p.omega_b, p.kappa});
    return m * m * m * m;
}

std::domain_error invalid(const ModelParams& p) {
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& e : validate(p)) os << ' ' << e;
    return std::domain_error(os.str());
}
} // namespace

Complex char_fn(Complex z, const ModelParams& p) {
    const auto [G, D] = gamma_delta(z, p);
    const Complex za = z + I * p.kappa;
    const Complex zb = z - I * G;
    const Complex wb = p.omega_b + D;
    return (za * za - p.omega_a * p.omega_a) * (zb * zb - wb * wb) -
           p.y * p.y * p.omega_a * wb;
}

double char_fn_imag_axis(double v, const ModelParams& p) {
    // K_II^R(-iv) = c_s |v|^s e^{-3 i pi s/2} (v>0) or e^{-i pi s/2} (v<0),
    // so Gamma and Delta are real on the axis and char_fn reduces to a real form.
    double G = 0.0, D = 0.0;
    if (p.gamma > 0.0 && v != 0.0) {
        const double cs = p.gamma / std::sin(pi * p.s) * std::pow(std::abs(v) / p.omega_b, p.s);
        const double ang = v > 0.0 ? 1.5 * pi * p.s : 0.5 * pi * p.s;
        G = -cs * std::sin(ang);
        D = cs * std::cos(ang);
    }
    const double ka = p.kappa - v;
    const double vb = v + G;
    const double wb = p.omega_b + D;
    return (ka * ka + p.omega_a * p.omega_a) * (vb * vb + wb * wb) -
           p.y * p.y * p.omega_a * wb;
}

Complex find_pole(Complex z0, const ModelParams& p, double tol) {
    if (!validate(p).empty()) throw invalid(p);
    Complex z = z0;
    double last_step = 0.0;
    const double step_tol = 1e-12 * p.omega_b;
    const double escape = 1e-6 * p.omega_b;
    for (int it = 0; it < 200; ++it) {
        const Complex f = char_fn(z, p);
        if (std::abs(f) < tol * pole_scale(z, p) && (it > 0 && last_step < step_tol))
            return z;
        const double h = 1e-7 * std::max(std::abs(z), p.omega_b);
        const Complex df = (char_fn(z + h, p) - char_fn(z - h, p)) / (2.0 * h);
        if (df == Complex(0.0, 0.0))
            throw ConvergenceError("find_pole: vanishing derivative", z);
        Complex step = -f / df;
        const double cap = std::max(std::abs(z), p.omega_b);
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        z += step;
        last_step = std::abs(step);
        if (z.imag() > escape)
            throw InstabilityError("find_pole: iterate escaped to the upper half-plane", z);
        if (std::abs(char_fn(z, p)) < tol * pole_scale(z, p) && last_step < step_tol)
            return z;
    }
    throw ConvergenceError("find_pole: no convergence in 200 iterations", z);
}

namespace {

// all sign changes of char_fn_imag_axis along a geometric v grid, each
// refined by TOMS 748; deterministic scan order
std::vector<double> axis_roots(const ModelParams& p, double v_lo, double v_hi) {
    const auto g = [&](double v) { return char_fn_imag_axis(v, p); };
    std::vector<double> roots;
    const int n = 1200;
    const double ratio = std::pow(v_hi / v_lo, 1.0 / n);
    double a = v_lo, fa = g(a);
    for (int i = 1; i <= n; ++i) {
        const double b = v_lo * std::pow(ratio, i);
        const double fb = g(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            boost::math::tools::eps_tolerance<double> tol(52);
            std::uintmax_t max_it = 200;
            auto r = boost::math::tools::toms748_solve(g, a, b, tol, max_it);
            roots.push_back(0.5 * (r.first + r.second));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

double axis_root_first(const ModelParams& p, double v_lo, double v_hi) {
    const auto roots = axis_roots(p, v_lo, v_hi);
    if (roots.empty())
        throw ConvergenceError("axis_root: no sign change on the imaginary axis",
                               Complex(0.0, -v_hi));
    return roots.front();
}

double nearest(const std::vector<double>& xs, double target) {
    double best = xs.front();
    for (double x : xs)
        if (std::abs(x - target) < std::abs(best - target)) best = x;
    return best;
}

Complex continue_pole(Complex seed, double y, const ModelParams& p) {
    try {
        return find_pole(seed, p.with_y(y));
    } catch (const ConvergenceError& e) {
        std::ostringstream os;
        os << e.what() << " (at y = " << y << ")";
        throw ConvergenceError(os.str(), e.last_iterate());
    } catch (const InstabilityError& e) {
        std::ostringstream os;
        os << e.what() << " (at y = " << y << ")";
        throw InstabilityError(os.str(), e.iterate());
    }
}

} // namespace

SoftModeTrajectory soft_mode_sweep(const ModelParams& p, const std::vector<double>& y_grid) {
    ModelParams base = p.with_y(0.0);
    if (!validate(base).empty()) throw invalid(base);
    if (y_grid.empty())
        throw std::domain_error("soft_mode_sweep: empty y grid");
    if (!std::is_sorted(y_grid.begin(), y_grid.end()))
        throw std::domain_error("soft_mode_sweep: y grid must be ascending");
    const double yc = critical_coupling(p);
    if (y_grid.front() < 0.0 || y_grid.back() >= yc)
        throw std::domain_error("soft_mode_sweep: y grid must lie in [0, y_c)");

    SoftModeTrajectory traj;
    traj.params = p;
    const double re_threshold = 1e-6 * p.omega_b;
    const double displacement = 1e-3 * p.omega_b;

    Complex z_pre = continue_pole(Complex(p.omega_b, 0.0), y_grid.front(), base);
    std::size_t i = 0;
    double y_prev = y_grid.front();
    for (; i < y_grid.size(); ++i) {
        const Complex z = continue_pole(z_pre, y_grid[i], base);
        if (std::abs(z.real()) < re_threshold) break;
        traj.samples.push_back({y_grid[i], z, Branch::pre_bifurcation});
        z_pre = z;
        y_prev = y_grid[i];
    }
    if (i == y_grid.size()) return traj; // no bifurcation inside the grid

    // refine the exceptional point to 1e-3 * y_c by bisection, continuing
    // from the pre-bifurcation side so Newton is never seeded on the axis
    double lo = y_prev, hi = y_grid[i];
    Complex z_coal = continue_pole(z_pre, y_grid[i], base);
    if (i > 0) {
        while (hi - lo > 1e-3 * yc) {
            const double mid = 0.5 * (lo + hi);
            const Complex zm = continue_pole(z_pre, mid, base);
            if (std::abs(zm.real()) < re_threshold) {
                hi = mid;
                z_coal = zm;
            } else {
                lo = mid;
                z_pre = zm;
            }
        }
    }
    traj.bifurcation_y = 0.5 * (lo + hi);

    // track both imaginary branches: bracket the two axis roots nearest the
    // seeds displaced above and below the coalesced pole, then polish each
    // with the Newton corrector
    const double v_coal = -z_coal.imag();
    const double v_max = 8.0 * std::max({p.omega_a, p.omega_b, p.kappa});
    double v_up_prev = std::max(v_coal - displacement, 0.25 * v_coal);
    double v_dn_prev = v_coal + displacement;
    for (; i < y_grid.size(); ++i) {
        const double y = y_grid[i];
        const ModelParams py = base.with_y(y);
        const auto roots = axis_roots(py, 1e-12 * p.omega_b, v_max);
        if (roots.size() < 2)
            throw ConvergenceError("soft_mode_sweep: lost an imaginary branch", Complex(0.0, -v_coal));
        double vu = nearest(roots, v_up_prev);
        double vd = nearest(roots, v_dn_prev);
        if (vu == vd) { // continuation seeds landed on one root; take the pair in order
            vu = roots[0];
            vd = roots[1];
        }
        if (vu > vd) std::swap(vu, vd);
        const Complex zu = continue_pole(Complex(0.0, -vu), y, base);
        const Complex zd = continue_pole(Complex(0.0, -vd), y, base);
        traj.samples.push_back({y, zu, Branch::upper});
        traj.samples.push_back({y, zd, Branch::lower});
        v_up_prev = -zu.imag();
        v_dn_prev = -zd.imag();
    }
    return traj;
}

double upper_branch_zero(const ModelParams& p) {
    ModelParams base = p.with_y(0.0);
    if (!validate(base).empty()) throw invalid(base);
    const double yc = critical_coupling(p);
    // ladder of couplings approaching the critical point from below; all lie
    // past the exceptional point for any gamma (the EP moves down with gamma)
    const double eps_ladder[] = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    double v_hi = 4.0 * std::max({p.omega_a, p.omega_b, p.kappa});
    double u1 = 0.0, u2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (double eps : eps_ladder) {
        const double y = (1.0 - eps) * yc;
        const double v = axis_root_first(base.with_y(y), 1e-12 * p.omega_b, v_hi);
        u1 = u2;
        y1 = y2;
        u2 = p.gamma > 0.0 ? std::pow(v, p.s) : v;
        y2 = y;
        v_hi = 2.0 * v;
    }
    // secant extrapolation of u -> 0 (u is linear in y_c - y near the crossing)
    return y2 + u2 * (y2 - y1) / (u1 - u2);
}

} // namespace subdicke
