#include "subdicke/greens.hpp"

#include <cmath>
#include <sstream>

#include "subdicke/errors.hpp"

namespace subdicke {

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
const Complex I{0.0, 1.0};

void require_normal_phase(const ModelParams& p) {
    const auto errs = validate(p);
    if (!errs.empty()) {
        std::ostringstream os;
        os << "invalid parameters:";
        for (const auto& e : errs) os << ' ' << e;
        throw std::domain_error(os.str());
    }
}
} // namespace

Mat4 inverse_retarded(Complex z, const ModelParams& p, Sheet sheet) {
    Complex k3, k4;
    if (sheet == Sheet::first && z.imag() == 0.0) {
        // real-axis limits; row 4 carries K^A(-omega) = conj(K^R(-omega))
        k3 = level_shift_real_axis(z.real(), p).first;
        k4 = std::conj(level_shift_real_axis(-z.real(), p).first);
    } else if (sheet == Sheet::first) {
        k3 = level_shift_physical(z, p);
        k4 = std::conj(level_shift_physical(-std::conj(z), p));
    } else {
        k3 = level_shift_second_sheet(z, p);
        k4 = std::conj(level_shift_second_sheet(-std::conj(z), p));
    }
    const Complex c{-p.y / 2.0, 0.0};
    Mat4 m;
    m << z - p.omega_a + I * p.kappa, 0.0, c, c,
         0.0, -z - p.omega_a - I * p.kappa, c, c,
         c, c, z - p.omega_b - k3, 0.0,
         c, c, 0.0, -z - p.omega_b - k4;
    return m;
}

Vec4 noise_keldysh_diag(double omega, const ModelParams& p) {
    Vec4 d;
    d << 2.0 * I * p.kappa,
         2.0 * I * p.kappa,
         2.0 * I * pi * coupling_density(omega, p),
         2.0 * I * pi * coupling_density(-omega, p);
    return d;
}

GreensBlocks greens_blocks(double omega, const ModelParams& p) {
    require_normal_phase(p);
    GreensBlocks g;
    g.omega = omega;
    g.inv_retarded = inverse_retarded(Complex(omega, 0.0), p, Sheet::first);
    g.inv_advanced = g.inv_retarded.adjoint();
    g.noise_keldysh = noise_keldysh_diag(omega, p).asDiagonal();
    g.retarded = g.inv_retarded.inverse();
    if (!g.retarded.allFinite())
        throw std::domain_error("greens_blocks: inverse retarded matrix is singular");
    g.keldysh = -g.retarded * g.noise_keldysh * g.retarded.adjoint();
    return g;
}

SpectrumSample spectra(double omega, const ModelParams& p) {
    require_normal_phase(p);
    const Mat4 m = inverse_retarded(Complex(omega, 0.0), p, Sheet::first);
    const Mat4 g = m.inverse();
    if (!g.allFinite())
        throw std::domain_error("spectra: inverse retarded matrix is singular");
    // i [G^K]_xx = sum_k w_k |G^R_{xk}|^2 with w = -i D^K, all w_k >= 0
    const double w[4] = {2.0 * p.kappa, 2.0 * p.kappa,
                         2.0 * pi * coupling_density(omega, p),
                         2.0 * pi * coupling_density(-omega, p)};
    SpectrumSample out;
    out.omega = omega;
    for (int k = 0; k < 4; ++k) {
        out.c_a += w[k] * std::norm(g(0, k));
        out.c_b += w[k] * std::norm(g(2, k));
    }
    return out;
}

SpectraTail spectra_tail_scaled(double u, int sign, const ModelParams& p) {
    // N(u) = u * [G^R]^{-1}(sign/u): entries stay O(1) as u -> 0
    const double e = sign >= 0 ? 1.0 : -1.0;
    Complex k3u, k4u; // u*K^R(omega) and u*K^A(-omega) at omega = sign/u
    if (p.gamma > 0.0) {
        // u*K at omega = 1/u: gamma (omega/omega_b)^s u = gamma omega_b^{-s} u^{1-s}
        const double u1s = std::pow(u, 1.0 - p.s) * std::pow(p.omega_b, -p.s);
        const double sp = std::sin(pi * p.s);
        const double cot = std::cos(pi * p.s) / sp;
        if (sign >= 0) {
            k3u = p.gamma * u1s * Complex(cot, -1.0);
            k4u = p.gamma / sp * u1s;
        } else {
            k3u = p.gamma / sp * u1s;
            k4u = p.gamma * u1s * Complex(cot, 1.0);
        }
    }
    const Complex c{-p.y / 2.0 * u, 0.0};
    Mat4 n;
    n << e - (p.omega_a - I * p.kappa) * u, 0.0, c, c,
         0.0, -e - (p.omega_a + I * p.kappa) * u, c, c,
         c, c, e - p.omega_b * u - k3u, 0.0,
         c, c, 0.0, -e - p.omega_b * u - k4u;
    const Mat4 g = n.inverse();

    // C(sign/u)/u^2 = 2k(|N^-1_x1|^2 + |N^-1_x2|^2) + u^{-s} 2 gamma |N^-1_xc|^2
    // with the bath column c = 3 for omega > 0 and c = 4 for omega < 0
    SpectraTail t;
    t.regular_a = 2.0 * p.kappa * (std::norm(g(0, 0)) + std::norm(g(0, 1)));
    t.regular_b = 2.0 * p.kappa * (std::norm(g(2, 0)) + std::norm(g(2, 1)));
    if (p.gamma > 0.0) {
        const int col = sign >= 0 ? 2 : 3;
        const double wb = 2.0 * p.gamma * std::pow(p.omega_b, -p.s);
        t.bath_a = wb * std::norm(g(0, col));
        t.bath_b = wb * std::norm(g(2, col));
    }
    return t;
}

} // namespace subdicke
