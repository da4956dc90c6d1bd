#pragma once

#include <optional>
#include <vector>

#include "subdicke/bath.hpp"
#include "subdicke/model.hpp"

namespace subdicke {

/// Characteristic function whose zeros in the closed lower half-plane are the
/// system poles (second-sheet kernels):
///   [(z+ik)^2 - omega_a^2][(z-iGamma(z))^2 - (omega_b+Delta(z))^2]
///     - y^2 omega_a (omega_b + Delta(z)).
Complex char_fn(Complex z, const ModelParams& p);

/// Newton root search with central-difference derivative
/// (step 1e-7 * max(|z|, omega_b)). Converged when
/// |char_fn| < tol * max(|z|, omega_a, omega_b, kappa)^4 and the last step is
/// below 1e-12 * omega_b. Throws ConvergenceError after 200 iterations,
/// InstabilityError if the iterate escapes above the real axis by more
/// than 1e-6 * omega_b.
Complex find_pole(Complex z0, const ModelParams& p, double tol = 1e-12);

enum class Branch { pre_bifurcation, upper, lower };

struct TrajectorySample {
    double y = 0.0;
    Complex pole;
    Branch branch = Branch::pre_bifurcation;
};

/// Soft-mode pole continued in y, with the exceptional point (linewidth
/// bifurcation) located and both purely imaginary branches tracked past it.
struct SoftModeTrajectory {
    std::vector<TrajectorySample> samples;
    std::optional<double> bifurcation_y;
    ModelParams params;
};

/// Continues the soft mode along the ascending y_grid (all entries in
/// [0, y_c)). Seeds from the dressed b pole at the first grid point; each
/// converged pole seeds the next. The exceptional point is detected as the
/// first interval where Re(pole) drops below 1e-6 * omega_b, refined by local
/// bisection to 1e-3 * y_c, after which both imaginary branches are tracked
/// from seeds displaced by +-1e-3 * omega_b along the imaginary axis.
SoftModeTrajectory soft_mode_sweep(const ModelParams& p, const std::vector<double>& y_grid);

/// Coupling at which the upper imaginary branch reaches zero, extrapolated
/// from poles tracked on a ladder approaching the critical point. This is the
/// sweep-side estimate of the critical coupling, independent of the closed
/// form up to the placement of the ladder points.
double upper_branch_zero(const ModelParams& p);

/// char_fn restricted to z = -i v (it is exactly real there).
double char_fn_imag_axis(double v, const ModelParams& p);

} // namespace subdicke
