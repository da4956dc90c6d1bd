#include "subdicke/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "subdicke/errors.hpp"

namespace subdicke {

std::vector<std::string> validate(const ModelParams& p) {
    std::vector<std::string> errs;
    auto bad = [&](const std::string& m) { errs.push_back(m); };

    if (!std::isfinite(p.omega_a) || p.omega_a <= 0.0)
        bad("omega_a must be finite and > 0");
    if (!std::isfinite(p.omega_b) || p.omega_b <= 0.0)
        bad("omega_b must be finite and > 0");
    if (!std::isfinite(p.kappa) || p.kappa < 0.0)
        bad("kappa must be finite and >= 0");
    if (!std::isfinite(p.gamma) || p.gamma < 0.0)
        bad("gamma must be finite and >= 0");
    if (p.gamma > 0.0 && (!std::isfinite(p.s) || p.s <= 0.0 || p.s >= 1.0))
        bad("s out of open interval (0,1)");
    if (std::isnan(p.omega_m) || p.omega_m <= 0.0)
        bad("omega_m must be > 0 or infinite");
    if (!std::isfinite(p.y) || p.y < 0.0)
        bad("y must be finite and >= 0");

    // the normal phase requires y below the critical coupling
    if (errs.empty() && p.omega_a > 0.0) {
        const double yc = critical_coupling(p);
        if (p.y >= yc) {
            std::ostringstream os;
            os << "y >= y_c = " << yc;
            bad(os.str());
        }
    }
    return errs;
}

double critical_coupling(const ModelParams& p) {
    if (!(p.omega_a > 0.0))
        throw std::domain_error("critical_coupling: omega_a must be > 0");
    return std::sqrt((p.omega_a * p.omega_a + p.kappa * p.kappa) / p.omega_a * p.omega_b);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_value(const std::string& key, const std::string& raw) {
    std::string v = trim(raw);
    if (key == "omega_m") {
        std::string lower = v;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (lower == "infinite" || lower == "inf")
            return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size())
            throw ConfigError("trailing characters in value for '" + key + "': " + v);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse value for '" + key + "': " + v);
    }
}

void assign(ModelParams& p, const std::string& key, const std::string& value) {
    const double x = parse_value(key, value);
    if (key == "omega_a") p.omega_a = x;
    else if (key == "omega_b") p.omega_b = x;
    else if (key == "kappa") p.kappa = x;
    else if (key == "gamma") p.gamma = x;
    else if (key == "s") p.s = x;
    else if (key == "omega_m") p.omega_m = x;
    else if (key == "y") p.y = x;
    else throw ConfigError("unknown parameter key '" + key + "'");
}

} // namespace

ModelParams params_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open parameter file: " + path);
    ModelParams p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        assign(p, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return p;
}

ModelParams apply_overrides(ModelParams base, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv)
        assign(base, key, value);
    return base;
}

} // namespace subdicke
