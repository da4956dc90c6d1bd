#pragma once

#include <Eigen/Dense>

#include "subdicke/bath.hpp"
#include "subdicke/model.hpp"

namespace subdicke {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

/// Inverse retarded Green's matrix in the doubled-field basis
/// (a at +omega, a at -omega, b at +omega, b at -omega):
///
///   [ z - omega_a + i kappa,  0,                      -y/2,                 -y/2               ]
///   [ 0,                      -z - omega_a - i kappa, -y/2,                 -y/2               ]
///   [ -y/2,                   -y/2,                   z - omega_b - K^R(z), 0                  ]
///   [ -y/2,                   -y/2,                   0,                    -z - omega_b - K^A(-z*) ]
///
/// with the level-shift kernels taken on the requested sheet (real-axis
/// kernels for spectra, second sheet for pole work). Its determinant equals
/// the characteristic function
///   [(z+ik)^2 - omega_a^2][(z-iGamma)^2 - (omega_b+Delta)^2] - y^2 omega_a (omega_b+Delta),
/// which pins the row signs and the basis ordering.
Mat4 inverse_retarded(Complex z, const ModelParams& p, Sheet sheet);

/// Diagonal of the Keldysh noise matrix:
/// diag(2i kappa, 2i kappa, 2i pi rho(omega), 2i pi rho(-omega)).
Vec4 noise_keldysh_diag(double omega, const ModelParams& p);

/// All Green's-function blocks at one real frequency (first-sheet kernels).
struct GreensBlocks {
    double omega = 0.0;
    Mat4 inv_retarded;
    Mat4 inv_advanced; // conjugate transpose of inv_retarded on the real axis
    Mat4 noise_keldysh;
    Mat4 retarded;
    Mat4 keldysh; // G^K = -G^R D^K G^A
};

GreensBlocks greens_blocks(double omega, const ModelParams& p);

/// Power spectra C_a(omega) = i [G^K]_11 and C_b(omega) = i [G^K]_33,
/// evaluated as the manifestly non-negative sums over noise channels.
struct SpectrumSample {
    double omega = 0.0;
    double c_a = 0.0;
    double c_b = 0.0;
};

/// Requires a valid parameter set with y < y_c. Throws std::domain_error
/// otherwise (the inverse only degenerates at y = y_c, omega = 0).
SpectrumSample spectra(double omega, const ModelParams& p);

/// Tail decomposition of the spectra for |omega| > 1/u at omega = sign/u:
///   C_x(sign/u) / u^2 = regular_x(u) + u^{-s} * bath_x(u),
/// where both parts are smooth and bounded as u -> 0. Evaluated from the
/// rescaled matrix N(u) = u * [G^R]^{-1}(sign/u), which stays well-conditioned
/// for arbitrarily large frequencies (no overflow).
struct SpectraTail {
    double regular_a = 0.0;
    double regular_b = 0.0;
    double bath_a = 0.0;
    double bath_b = 0.0;
};

SpectraTail spectra_tail_scaled(double u, int sign, const ModelParams& p);

} // namespace subdicke
