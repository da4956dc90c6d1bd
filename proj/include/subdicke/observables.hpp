#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "subdicke/model.hpp"
#include "subdicke/quadrature.hpp"

namespace subdicke {

/// Steady-state occupations n_x = (integral of C_x over omega / 2pi - 1)/2.
struct PopulationResult {
    double y = 0.0;
    double n_a = 0.0;
    double n_b = 0.0;
    double quad_error_estimate = 0.0; // accumulated bound, in units of n
    std::int64_t evaluations = 0;     // spectrum evaluations consumed
};

/// Integrates both spectra over the full frequency axis at coupling y.
/// The axis is split at {-Omega, -delta, 0, delta, Omega} with
/// delta = max(10 (1-y/y_c)^{1/s}, 1e-12) omega_b and
/// Omega = 50 max(omega_a, omega_b, kappa); log-spaced adaptive panels
/// resolve the near-critical peak at omega -> 0, and the |omega| > Omega
/// tails are integrated exactly in rescaled variables (see spectra_tail_scaled),
/// with the bath channel's u^{-s} factor removed by v = u^{1-s}.
/// Throws std::domain_error for y outside [0, y_c), QuadratureError if the
/// accumulated error bound misses the requested tolerance.
PopulationResult population(const ModelParams& p, double y, const QuadConfig& cfg = {});

enum class Mode { a, b };

/// Log-uniform sampling window for the critical-exponent fit, in
/// epsilon = 1 - y/y_c.
struct FitWindow {
    double eps_min = 1e-6;
    double eps_max = 5e-5;
    int points = 10;
};

/// Least-squares fit of ln n = -nu ln(eps) + c over the window.
struct ExponentFit {
    double s = 0.0;
    std::vector<std::pair<double, double>> points; // (epsilon, n)
    double exponent = 0.0;
    double std_error = 0.0;
    double eps_min = 0.0;
    double eps_max = 0.0;
};

/// Samples the population log-uniformly in the window, fits the power law,
/// and returns the exponent with its standard error. Throws NumericalError
/// naming the failing epsilon if a population sample fails, and a
/// "no power law in window" NumericalError if the RMS of the ln-space fit
/// residuals exceeds 0.1.
ExponentFit exponent_fit(const ModelParams& p, Mode mode, const FitWindow& window = {},
                         const QuadConfig& cfg = {});

} // namespace subdicke
