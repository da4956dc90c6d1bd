#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace subdicke {

/// Physical parameters of the two-mode model, all in units of omega_b.
///
/// Mode a decays into a flat (Markovian) reservoir at rate kappa; mode b
/// couples with strength gamma to a reservoir whose coupling density grows
/// as omega^s at low frequency (0 < s < 1). y is the mode-mode coupling and
/// omega_m an optional high-frequency cutoff used only by the principal-value
/// reference integral; the closed-form kernels take omega_m -> infinity.
struct ModelParams {
    double omega_a = 2.0;
    double omega_b = 1.0;
    double kappa = 2.0;
    double gamma = 0.5;
    double s = 0.8;
    double omega_m = std::numeric_limits<double>::infinity();
    double y = 0.0;

    ModelParams with_y(double y_new) const {
        ModelParams p = *this;
        p.y = y_new;
        return p;
    }
    bool has_finite_cutoff() const { return std::isfinite(omega_m); }
};

/// Returns the list of violated invariants; an empty list means the
/// parameter set is usable. Never throws.
std::vector<std::string> validate(const ModelParams& p);

/// Critical mode-mode coupling y_c = sqrt((omega_a^2 + kappa^2)/omega_a * omega_b).
/// Independent of gamma and s. Throws std::domain_error for omega_a <= 0.
double critical_coupling(const ModelParams& p);

/// Parses a flat key=value parameter file. Recognized keys: omega_a, omega_b,
/// kappa, gamma, s, omega_m, y. omega_m accepts "infinite"/"inf" or a number.
/// '#' starts a comment. Unknown keys raise ConfigError.
ModelParams params_from_file(const std::string& path);

/// Applies key=value overrides (same keys as the file format) on top of base.
ModelParams apply_overrides(ModelParams base, const std::map<std::string, std::string>& kv);

} // namespace subdicke
