#pragma once

#include <functional>
#include <vector>

namespace subdicke {

/// Tolerances and budget for adaptive quadrature. rel_tol/abs_tol form the
/// mixed target max(abs_tol, rel_tol*|I|) against which accumulated error
/// bounds are checked; max_depth bounds the Gauss-Kronrod refinement levels.
struct QuadConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-9;
    unsigned max_depth = 18;
};

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Adaptive Gauss-Kronrod on a finite panel.
QuadResult integrate_panel(const std::function<double(double)>& f, double a, double b,
                           const QuadConfig& cfg);

/// Integrates over consecutive panels defined by ascending breakpoints,
/// summing values and error bounds in breakpoint order (deterministic).
QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints, const QuadConfig& cfg);

/// Ascending breakpoints {lo, lo*ratio, ..., hi} covering [lo, hi] geometrically.
std::vector<double> geometric_breakpoints(double lo, double hi, double ratio = 10.0);

} // namespace subdicke
