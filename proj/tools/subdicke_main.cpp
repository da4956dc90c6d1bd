// Command-line front end: parameter handling, one subcommand per pipeline
// stage, CSV emission, and the cross-module consistency suite.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subdicke/bath.hpp"
#include "subdicke/csv.hpp"
#include "subdicke/errors.hpp"
#include "subdicke/greens.hpp"
#include "subdicke/model.hpp"
#include "subdicke/observables.hpp"
#include "subdicke/parallel.hpp"
#include "subdicke/poles.hpp"

namespace {

using namespace subdicke;

struct Cli {
    std::optional<std::string> config;
    std::map<std::string, std::string> overrides;
    std::string out;
    unsigned jobs = 1;
    double rel_tol = 1e-9;
    double abs_tol = 1e-9;
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        // start:stop:count (linear)
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3)
            throw ConfigError("grid spec must be start:stop:count or a comma list: " + spec);
        const double a = std::stod(parts[0]);
        const double b = std::stod(parts[1]);
        const long n = std::stol(parts[2]);
        if (n < 1) throw ConfigError("grid count must be >= 1: " + spec);
        for (long i = 0; i < n; ++i)
            grid.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1));
        return grid;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) grid.push_back(std::stod(tok));
    return grid;
}

void require_grid(const std::vector<double>& g, const std::string& name) {
    if (g.empty())
        throw ConfigError(name + " grid is empty");
    if (!std::is_sorted(g.begin(), g.end()) ||
        std::adjacent_find(g.begin(), g.end()) != g.end())
        throw ConfigError(name + " grid must be strictly ascending");
}

ModelParams resolve_params(const Cli& cli) {
    ModelParams p;
    if (cli.config) p = params_from_file(*cli.config);
    p = apply_overrides(p, cli.overrides);
    return p;
}

void check_params(const ModelParams& p) {
    const auto errs = validate(p);
    if (!errs.empty()) {
        std::ostringstream os;
        os << "invalid parameters:";
        for (const auto& e : errs) os << "\n  - " << e;
        throw ConfigError(os.str());
    }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::filesystem::path fp(path);
    std::filesystem::path out = fp.parent_path() / fp.stem();
    return out.string() + suffix + fp.extension().string();
}

std::string gamma_tag(double g) {
    std::ostringstream os;
    os << "_gamma" << g;
    return os.str();
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::pre_bifurcation: return "pre-bifurcation";
        case Branch::upper: return "upper";
        case Branch::lower: return "lower";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_spectrum(const Cli& cli, const std::string& grid_spec) {
    const ModelParams p = resolve_params(cli);
    check_params(p);
    auto grid = parse_grid(grid_spec);
    require_grid(grid, "omega");
    std::vector<SpectrumSample> samples(grid.size());
    parallel_for_indexed(grid.size(), cli.jobs,
                         [&](std::size_t i) { samples[i] = spectra(grid[i], p); });
    std::vector<std::string> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples)
        rows.push_back(format_sig12(s.omega) + "," + format_sig12(s.c_a) + "," +
                       format_sig12(s.c_b));
    write_csv_atomic(cli.out, "omega,c_a,c_b", rows);
    std::cout << "spectrum: wrote " << rows.size() << " rows to " << cli.out << "\n";
    return 0;
}

int cmd_softmode(const Cli& cli, const std::string& grid_spec,
                 const std::string& gamma_list) {
    ModelParams p = resolve_params(cli);
    const auto gammas = gamma_list.empty() ? std::vector<double>{p.gamma}
                                           : parse_grid(gamma_list);
    if (gammas.empty()) throw ConfigError("gamma list is empty");
    for (double g : gammas) {
        ModelParams pg = p;
        pg.gamma = g;
        pg.y = 0.0;
        check_params(pg);
        std::vector<double> grid;
        if (grid_spec.empty()) {
            const double yc = critical_coupling(pg);
            for (int i = 0; i < 240; ++i)
                grid.push_back(0.999 * yc * i / 239.0);
        } else {
            grid = parse_grid(grid_spec);
        }
        require_grid(grid, "y");
        const SoftModeTrajectory traj = soft_mode_sweep(pg, grid);
        std::vector<std::string> rows;
        for (const auto& s : traj.samples)
            rows.push_back(format_sig12(s.y) + "," + format_sig12(s.pole.real()) + "," +
                           format_sig12(s.pole.imag()) + "," + branch_name(s.branch));
        const std::string path =
            gammas.size() > 1 ? with_suffix(cli.out, gamma_tag(g)) : cli.out;
        write_csv_atomic(path, "y,re_pole,im_pole,branch", rows);
        std::cout << "softmode(gamma=" << g << "): wrote " << rows.size() << " rows to "
                  << path;
        if (traj.bifurcation_y)
            std::cout << "  (bifurcation at y = " << *traj.bifurcation_y << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_population(const Cli& cli, const std::string& grid_spec) {
    const ModelParams p = resolve_params(cli);
    check_params(p.with_y(0.0));
    const QuadConfig cfg{cli.rel_tol, cli.abs_tol};
    std::vector<double> grid;
    if (grid_spec.empty()) {
        const double yc = critical_coupling(p);
        for (int i = 0; i < 21; ++i)
            grid.push_back(0.99 * yc * i / 20.0);
    } else {
        grid = parse_grid(grid_spec);
    }
    require_grid(grid, "y");
    std::vector<PopulationResult> res(grid.size());
    parallel_for_indexed(grid.size(), cli.jobs,
                         [&](std::size_t i) { res[i] = population(p, grid[i], cfg); });
    std::vector<std::string> rows;
    for (const auto& r : res)
        rows.push_back(format_sig12(r.y) + "," + format_sig12(r.n_a) + "," +
                       format_sig12(r.n_b) + "," + format_sig12(r.quad_error_estimate));
    write_csv_atomic(cli.out, "y,n_a,n_b,err", rows);
    std::cout << "population: wrote " << rows.size() << " rows to " << cli.out << "\n";
    return 0;
}

struct FitCell {
    double s = 0.0;
    double gamma = 0.0;
};

int run_fits(const Cli& cli, const std::vector<FitCell>& cells, Mode mode,
             const FitWindow& window, bool with_gamma_column, bool dump_points) {
    const ModelParams base = resolve_params(cli);
    const QuadConfig cfg{cli.rel_tol, cli.abs_tol};
    std::vector<ExponentFit> fits(cells.size());
    parallel_for_indexed(cells.size(), cli.jobs, [&](std::size_t i) {
        ModelParams p = base;
        p.s = cells[i].s;
        p.gamma = cells[i].gamma;
        p.y = 0.0;
        check_params(p);
        fits[i] = exponent_fit(p, mode, window, cfg);
    });
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string row = format_sig12(cells[i].s) + ",";
        if (with_gamma_column) row += format_sig12(cells[i].gamma) + ",";
        row += format_sig12(fits[i].exponent) + "," + format_sig12(fits[i].std_error) +
               "," + format_sig12(fits[i].eps_min) + "," + format_sig12(fits[i].eps_max);
        rows.push_back(row);
    }
    const std::string header = with_gamma_column
                                   ? "s,gamma,exponent,stderr,eps_min,eps_max"
                                   : "s,exponent,stderr,eps_min,eps_max";
    write_csv_atomic(cli.out, header, rows);
    std::cout << (with_gamma_column ? "sweep" : "exponent") << ": wrote " << rows.size()
              << " rows to " << cli.out << "\n";
    if (dump_points) {
        std::vector<std::string> prow;
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (const auto& [eps, n] : fits[i].points)
                prow.push_back(format_sig12(cells[i].s) + "," + format_sig12(eps) + "," +
                               format_sig12(n));
        const std::string ppath = with_suffix(cli.out, "_points");
        write_csv_atomic(ppath, "s,epsilon,n", prow);
        std::cout << "points: wrote " << prow.size() << " rows to " << ppath << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// consistency suite (the `validate` subcommand)

struct Suite {
    int failures = 0;
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        if (ok) {
            std::cout << "ok   - " << name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL - " << name << (detail.empty() ? "" : ": " + detail)
                      << "\n";
        }
    }
};

int cmd_validate(const Cli& cli) {
    ModelParams p = resolve_params(cli);
    p.y = 0.0;
    check_params(p);
    if (p.gamma == 0.0)
        std::cout << "note: gamma = 0, bath checks run on a trivial kernel\n";
    Suite suite;
    std::mt19937_64 rng(20240);

    // parameter-level
    {
        bool ok = true;
        const ModelParams k0 = [&] {
            ModelParams q = p;
            q.kappa = 0.0;
            return q;
        }();
        ok &= std::abs(critical_coupling(k0) - std::sqrt(k0.omega_a * k0.omega_b)) <
              1e-14 * std::sqrt(k0.omega_a * k0.omega_b);
        double prev = 0.0;
        for (double kap : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            ModelParams q = p;
            q.kappa = kap;
            const double yc = critical_coupling(q);
            ok &= yc > prev;
            prev = yc;
        }
        suite.check("critical coupling: lossless closed form + monotone in kappa", ok);
    }
    // bath kernels
    {
        bool kk = true, schwarz = true, sheets = true, fluct = true;
        for (double w = -10.0; w <= 10.0; w += 0.0625) {
            const auto [kr, ka] = level_shift_real_axis(w, p);
            schwarz &= ka == std::conj(kr);
            if (w > 0.0)
                kk &= std::abs(kr.imag() + M_PI * coupling_density(w, p)) <=
                      1e-12 * std::max(1e-300, std::abs(kr.imag()));
            else
                kk &= kr.imag() == 0.0;
            const Complex k2 = level_shift_second_sheet(Complex(w, 0.0), p);
            sheets &= std::abs(k2 - kr) <= 1e-12 * std::max(1.0, std::abs(kr));
            fluct &= std::abs(2.0 * M_PI * coupling_density(w, p) -
                              (-2.0 * kr.imag())) < 1e-12 * std::max(1.0, std::abs(kr));
        }
        suite.check("bath: Im K^R = -pi rho on omega>0, real on omega<=0", kk);
        suite.check("bath: Schwarz symmetry K^A = conj(K^R)", schwarz);
        suite.check("bath: sheet agreement on the real axis", sheets);
        suite.check("bath: zero-T fluctuation relation D = -2i Im K^R", fluct);
    }
    // Gamma/Delta regularity at z -> 0
    {
        bool ok = true;
        const double cs = p.gamma > 0.0 ? p.gamma / std::sin(M_PI * p.s) : 0.0;
        std::uniform_real_distribution<double> expd(-8.0, 0.0), angd(-M_PI, 0.0);
        for (int i = 0; i < 500; ++i) {
            const double r = p.omega_b * std::pow(10.0, expd(rng));
            const double th = angd(rng);
            const Complex z = r * Complex(std::cos(th), std::sin(th));
            const auto gd = gamma_delta(z, p);
            const double bound = cs * std::pow(r / p.omega_b, p.s) * (1.0 + 1e-12) + 1e-300;
            ok &= std::abs(gd.gamma_of_z) <= bound && std::abs(gd.delta_of_z) <= bound;
        }
        suite.check("bath: |Gamma|, |Delta| <= gamma/sin(pi s) |z|^s near z=0", ok);
    }
    // Green's blocks
    {
        bool det_ok = true;
        std::uniform_real_distribution<double> red(-3.0, 3.0), imd(-3.0, 0.0);
        ModelParams py = p.with_y(0.65 * critical_coupling(p));
        for (int i = 0; i < 20; ++i) {
            const Complex z(red(rng), imd(rng));
            const Complex d1 = inverse_retarded(z, py, Sheet::second).determinant();
            const Complex d2 = char_fn(z, py);
            det_ok &= std::abs(d1 - d2) <= 1e-10 * std::abs(d2);
        }
        suite.check("greens: det[G^R]^-1 equals the characteristic function", det_ok);

        bool herm = true, pos = true;
        for (double w : {-2.5, -0.7, 0.0, 0.4, 1.0, 2.0, 3.5}) {
            const GreensBlocks g = greens_blocks(w, py);
            herm &= (g.inv_advanced - g.inv_retarded.adjoint()).norm() == 0.0;
            herm &= (g.keldysh.adjoint() + g.keldysh).norm() <= 1e-10 * g.keldysh.norm();
            const Complex ca = Complex(0.0, 1.0) * g.keldysh(0, 0);
            const Complex cb = Complex(0.0, 1.0) * g.keldysh(2, 2);
            pos &= ca.real() >= 0.0 && cb.real() >= 0.0;
            pos &= std::abs(ca.imag()) < 1e-10 && std::abs(cb.imag()) < 1e-10;
        }
        suite.check("greens: block symmetries and spectrum positivity", herm && pos);
    }
    // poles
    {
        bool ok = true;
        std::string detail;
        try {
            const double yc = critical_coupling(p);
            std::vector<double> grid;
            for (int i = 0; i < 60; ++i) grid.push_back(0.999 * yc * i / 59.0);
            const auto traj = soft_mode_sweep(p, grid);
            for (const auto& s : traj.samples) {
                ok &= s.pole.imag() <= 1e-9;
                ok &= std::abs(char_fn(s.pole, p.with_y(s.y))) <
                      1e-9 * std::pow(p.omega_b, 4) * 32.0;
                if (s.branch != Branch::pre_bifurcation)
                    ok &= std::abs(s.pole.real()) <= 1e-9;
            }
            ok &= traj.bifurcation_y.has_value();
            const double yz = upper_branch_zero(p);
            ok &= std::abs(yz - yc) <= 1e-4 * yc;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        suite.check("poles: stability, residuals, branch structure, y_c recovery", ok,
                    detail);
    }
    // observables
    {
        bool ok = true;
        std::string detail;
        try {
            const auto r = population(p, 0.0, QuadConfig{cli.rel_tol, cli.abs_tol});
            ok &= std::abs(r.n_a) < 1e-6 && std::abs(r.n_b) < 1e-6;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        suite.check("observables: vacuum baselines at y=0", ok, detail);
    }

    std::cout << (suite.failures == 0 ? "validate: all checks passed"
                                      : "validate: FAILURES present")
              << "\n";
    return suite.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Keldysh pipeline for an open two-boson-mode model with a sub-Ohmic bath"};
    app.require_subcommand(1);

    Cli cli;
    std::map<std::string, std::optional<double>> ov;
    for (const char* key :
         {"omega_a", "omega_b", "kappa", "gamma", "s", "omega_m", "y"})
        ov[key] = std::nullopt;

    app.add_option("--config", cli.config, "key=value parameter file");
    for (auto& [key, slot] : ov)
        app.add_option("--" + key, slot, "override parameter " + key);
    app.add_option("--jobs", cli.jobs, "max parallel workers")->check(CLI::PositiveNumber);
    app.add_option("--rel-tol", cli.rel_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--abs-tol", cli.abs_tol, "quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "run the consistency suite");

    std::string omega_grid = "-6:6:1201";
    auto* spectrum_cmd = app.add_subcommand("spectrum", "power spectra C_a, C_b");
    spectrum_cmd->add_option("--omega-grid", omega_grid, "omega grid (start:stop:count or list)");

    std::string y_grid_spec;
    std::string gamma_list;
    auto* softmode_cmd = app.add_subcommand("softmode", "soft-mode pole trajectory");
    softmode_cmd->add_option("--y-grid", y_grid_spec, "y grid (default 240 pts to 0.999 y_c)");
    softmode_cmd->add_option("--gamma-list", gamma_list, "one trajectory file per gamma");

    std::string pop_grid_spec;
    auto* population_cmd = app.add_subcommand("population", "steady-state occupations");
    population_cmd->add_option("--y-grid", pop_grid_spec, "y grid (default 21 pts to 0.99 y_c)");

    std::string s_list, sweep_gamma_list, mode_str = "a";
    FitWindow window;
    bool dump_points = false;
    auto* exponent_cmd = app.add_subcommand("exponent", "critical-exponent fit vs s");
    exponent_cmd->add_option("--s-list", s_list, "bath exponents to fit (default: current s)");
    exponent_cmd->add_option("--mode", mode_str, "population mode to fit: a or b");
    exponent_cmd->add_option("--eps-min", window.eps_min, "fit window lower edge");
    exponent_cmd->add_option("--eps-max", window.eps_max, "fit window upper edge");
    exponent_cmd->add_option("--points", window.points, "samples in the window");
    exponent_cmd->add_flag("--dump-points", dump_points, "also write the log-log samples");

    auto* sweep_cmd = app.add_subcommand("sweep", "exponent fit over an (s, gamma) grid");
    sweep_cmd->add_option("--s-list", s_list, "bath exponents (default 0.5,0.6,0.7,0.8)");
    sweep_cmd->add_option("--gamma-list", sweep_gamma_list, "bath couplings (default: current gamma)");
    sweep_cmd->add_option("--mode", mode_str, "population mode to fit: a or b");
    sweep_cmd->add_option("--eps-min", window.eps_min, "fit window lower edge");
    sweep_cmd->add_option("--eps-max", window.eps_max, "fit window upper edge");
    sweep_cmd->add_option("--points", window.points, "samples in the window");

    std::string out;
    app.add_option("--out", out, "output CSV path (default <subcommand>.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& [key, slot] : ov)
            if (slot) cli.overrides[key] = std::to_string(*slot);

        if (mode_str != "a" && mode_str != "b")
            throw ConfigError("--mode must be 'a' or 'b'");
        const Mode mode = mode_str == "a" ? Mode::a : Mode::b;

        if (validate_cmd->parsed()) return cmd_validate(cli);
        if (spectrum_cmd->parsed()) {
            cli.out = out.empty() ? "spectrum.csv" : out;
            return cmd_spectrum(cli, omega_grid);
        }
        if (softmode_cmd->parsed()) {
            cli.out = out.empty() ? "softmode.csv" : out;
            return cmd_softmode(cli, y_grid_spec, gamma_list);
        }
        if (population_cmd->parsed()) {
            cli.out = out.empty() ? "population.csv" : out;
            return cmd_population(cli, pop_grid_spec);
        }
        if (exponent_cmd->parsed()) {
            cli.out = out.empty() ? "exponent.csv" : out;
            const ModelParams base = resolve_params(cli);
            const auto ss = s_list.empty() ? std::vector<double>{base.s} : parse_grid(s_list);
            if (ss.empty()) throw ConfigError("s list is empty");
            std::vector<FitCell> cells;
            for (double s : ss) cells.push_back({s, base.gamma});
            return run_fits(cli, cells, mode, window, false, dump_points);
        }
        if (sweep_cmd->parsed()) {
            cli.out = out.empty() ? "sweep.csv" : out;
            const ModelParams base = resolve_params(cli);
            const auto ss = s_list.empty() ? std::vector<double>{0.5, 0.6, 0.7, 0.8}
                                           : parse_grid(s_list);
            const auto gs = sweep_gamma_list.empty() ? std::vector<double>{base.gamma}
                                                     : parse_grid(sweep_gamma_list);
            if (ss.empty() || gs.empty()) throw ConfigError("sweep grid is empty");
            std::vector<FitCell> cells;
            for (double s : ss)
                for (double g : gs) cells.push_back({s, g});
            return run_fits(cli, cells, mode, window, true, false);
        }
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
