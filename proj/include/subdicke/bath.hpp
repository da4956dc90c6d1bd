#pragma once

#include <complex>
#include <utility>

#include "subdicke/model.hpp"
#include "subdicke/quadrature.hpp"

namespace subdicke {

using Complex = std::complex<double>;

/// Which analytic continuation of the level-shift function is meant.
/// `first` is the physical sheet (retarded limit onto the real axis);
/// `second` continues the retarded kernel through the cut on the positive
/// real axis into the lower half-plane, where resonance poles live.
enum class Sheet { first, second };

/// Bundle of reservoir functions at one query frequency.
struct BathEval {
    Complex omega_or_z;
    double rho = 0.0; // coupling density, meaningful for real arguments only
    Complex k_retarded;
    Complex k_advanced;
    Sheet sheet = Sheet::first;
};

/// Combinations of second-sheet kernels entering the characteristic equation:
/// Gamma(z) = (K_II^R(z) - K_II^A(-z*))/(2i), Delta(z) = (K_II^R(z) + K_II^A(-z*))/2.
struct GammaDelta {
    Complex gamma_of_z;
    Complex delta_of_z;
};

/// Reservoir coupling density rho(omega) = Theta(omega) (gamma/pi) (omega/omega_b)^s
/// / (1 + (omega/omega_m)^2); the cutoff factor is 1 for omega_m = infinity.
double coupling_density(double omega, const ModelParams& p);

/// Retarded and advanced level-shift functions on the real axis (omega_m = inf):
///   K^R(omega>0)  = gamma (omega/omega_b)^s (cot(pi s) - i)
///   K^R(omega<=0) = gamma/sin(pi s) (|omega|/omega_b)^s   (purely real)
///   K^A = conj(K^R)
std::pair<Complex, Complex> level_shift_real_axis(double omega, const ModelParams& p);

/// K(z) = gamma/sin(pi s) (-z/omega_b)^s on the physical sheet (principal branch;
/// the cut lands on the positive real frequency axis). Retarded above the axis,
/// advanced below.
Complex level_shift_physical(Complex z, const ModelParams& p);

/// Second-sheet continuation K_II^R(z) = gamma e^{-i pi s}/sin(pi s) (z/omega_b)^s.
Complex level_shift_second_sheet(Complex z, const ModelParams& p);

/// Gamma(z), Delta(z) built from second-sheet kernels with
/// K_II^A(w) = conj(K_II^R(w)). The composite z -> conj(K_II^R(-conj z))
/// is analytic in z even though conjugation alone is not.
GammaDelta gamma_delta(Complex z, const ModelParams& p);

/// Convenience bundle at one frequency on the requested sheet.
BathEval bath_eval(Complex z, Sheet sheet, const ModelParams& p);

/// Principal-value reference integral for the level shift at real omega > 0
/// with a finite cutoff omega_m:
///   K(omega) = P int_0^inf rho(w')/(omega - w') dw'  -  i pi rho(omega).
/// Splits symmetrically around the pole and integrates the regularized
/// remainder; used only to validate the closed forms. Requires finite omega_m.
Complex pv_level_shift_oracle(double omega, const ModelParams& p, const QuadConfig& cfg);

/// Principal branch z^s with the imaginary part of z canonicalized so that
/// arguments on the negative real axis use arg = +pi regardless of signed zero.
Complex pow_principal(Complex z, double s);

} // namespace subdicke
