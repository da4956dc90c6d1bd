#include "subdicke/bath.hpp"

#include <cmath>
#include <sstream>

#include "subdicke/errors.hpp"

namespace subdicke {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
}

Complex pow_principal(Complex z, double s) {
    if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (z.imag() == 0.0) z = Complex(z.real(), +0.0);
    return std::pow(z, s);
}

double coupling_density(double omega, const ModelParams& p) {
    if (omega <= 0.0 || p.gamma == 0.0) return 0.0;
    double cutoff = 1.0;
    if (p.has_finite_cutoff()) {
        const double r = omega / p.omega_m;
        cutoff = 1.0 / (1.0 + r * r);
    }
    return p.gamma / pi * std::pow(omega / p.omega_b, p.s) * cutoff;
}

std::pair<Complex, Complex> level_shift_real_axis(double omega, const ModelParams& p) {
    if (p.gamma == 0.0) return {Complex{}, Complex{}};
    const double sp = std::sin(pi * p.s);
    Complex kr;
    if (omega > 0.0) {
        const double mag = p.gamma * std::pow(omega / p.omega_b, p.s);
        kr = Complex(mag * std::cos(pi * p.s) / sp, -mag);
    } else {
        kr = Complex(p.gamma / sp * std::pow(-omega / p.omega_b, p.s), 0.0);
    }
    return {kr, std::conj(kr)};
}

Complex level_shift_physical(Complex z, const ModelParams& p) {
    if (p.gamma == 0.0) return {};
    return p.gamma / std::sin(pi * p.s) * pow_principal(-z / p.omega_b, p.s);
}

Complex level_shift_second_sheet(Complex z, const ModelParams& p) {
    if (p.gamma == 0.0) return {};
    const Complex phase = std::exp(Complex(0.0, -pi * p.s));
    return p.gamma * phase / std::sin(pi * p.s) * pow_principal(z / p.omega_b, p.s);
}

GammaDelta gamma_delta(Complex z, const ModelParams& p) {
    const Complex kr = level_shift_second_sheet(z, p);
    const Complex ka = std::conj(level_shift_second_sheet(-std::conj(z), p));
    return {(kr - ka) / Complex(0.0, 2.0), (kr + ka) / 2.0};
}

BathEval bath_eval(Complex z, Sheet sheet, const ModelParams& p) {
    BathEval e;
    e.omega_or_z = z;
    e.sheet = sheet;
    if (z.imag() == 0.0) e.rho = coupling_density(z.real(), p);
    if (sheet == Sheet::first && z.imag() == 0.0) {
        std::tie(e.k_retarded, e.k_advanced) = level_shift_real_axis(z.real(), p);
    } else if (sheet == Sheet::first) {
        e.k_retarded = level_shift_physical(z, p);
        e.k_advanced = std::conj(level_shift_physical(std::conj(z), p));
    } else {
        e.k_retarded = level_shift_second_sheet(z, p);
        e.k_advanced = std::conj(e.k_retarded);
    }
    return e;
}

Complex pv_level_shift_oracle(double omega, const ModelParams& p, const QuadConfig& cfg) {
    if (!p.has_finite_cutoff())
        throw std::domain_error("pv_level_shift_oracle: requires finite omega_m");
    if (!(omega > 0.0))
        throw std::domain_error("pv_level_shift_oracle: requires omega > 0");
    if (p.gamma == 0.0) return {};

    const auto rho_c = [&](double w) { return coupling_density(w, p); };
    const auto f = [&](double w) { return rho_c(w) / (omega - w); };

    const double h = 1e-6 * std::max(omega, p.omega_b);
    if (!(omega > 2.0 * h))
        throw std::domain_error("pv_level_shift_oracle: omega too close to the endpoint");
    const double upper = 100.0 * std::max(p.omega_m, omega);

    double value = 0.0;
    double bound = 0.0;
    double scale = 0.0;
    auto accumulate = [&](QuadResult r) {
        value += r.value;
        bound += r.error_bound;
        scale += std::abs(r.value);
    };

    // (0, omega-h): geometric approach toward the pole from the left
    {
        std::vector<double> bps{0.0};
        for (double d = omega * 0.5; d > h * 1.0001; d *= 0.1)
            bps.push_back(omega - d);
        bps.push_back(omega - h);
        accumulate(integrate_panels(f, bps, cfg));
    }
    // (omega+h, upper): geometric leave from the pole, breakpoints at scales
    {
        std::vector<double> bps{omega + h};
        for (double d = h * 10.0; omega + d < 2.0 * omega; d *= 10.0)
            bps.push_back(omega + d);
        for (double x : {2.0 * omega, p.omega_m, upper})
            if (x > bps.back()) bps.push_back(x);
        accumulate(integrate_panels(f, bps, cfg));
    }
    // symmetric excision: the even part of rho around omega integrates to zero
    // against the 1/(omega-w) kernel; the odd remainder is smooth in u
    {
        const auto reg = [&](double u) {
            return (rho_c(omega + u) - rho_c(omega - u)) / (-u);
        };
        accumulate(integrate_panel(reg, 0.0, h, cfg));
    }
    // tail (upper, inf) via u = 1/w; integrand decays like u^{1-s} there
    {
        const auto tail = [&](double u) {
            const double w = 1.0 / u;
            return rho_c(w) / (omega - w) / (u * u);
        };
        accumulate(integrate_panel(tail, 0.0, 1.0 / upper, cfg));
    }

    const double target = std::max(cfg.abs_tol, cfg.rel_tol * scale);
    if (!(bound <= target) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "pv_level_shift_oracle: error bound " << bound << " above target " << target
           << " at omega = " << omega;
        throw QuadratureError(os.str(), value, bound);
    }
    return Complex(value, -pi * rho_c(omega));
}

} // namespace subdicke
