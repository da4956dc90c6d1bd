#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "subdicke/errors.hpp"
#include "subdicke/model.hpp"

using namespace subdicke;
using Catch::Approx;

namespace {
ModelParams figure_params() {
    return ModelParams{}; // defaults are the figure set: omega_a=kappa=2, gamma=0.5, s=0.8
}
} // namespace

TEST_CASE("validate accepts the reference parameter set") {
    ModelParams p = figure_params();
    REQUIRE(validate(p).empty());
}

TEST_CASE("validate rejects s = 1 when the bath is coupled") {
    ModelParams p = figure_params();
    p.s = 1.0;
    const auto errs = validate(p);
    REQUIRE_FALSE(errs.empty());
    REQUIRE_THAT(errs.front(), Catch::Matchers::ContainsSubstring("s out of open interval"));

    p.gamma = 0.0; // the Ohmic reference point is reached through gamma = 0
    REQUIRE(validate(p).empty());
}

TEST_CASE("validate rejects couplings at or beyond critical") {
    ModelParams p = figure_params();
    p.y = 2.5;
    const auto errs = validate(p);
    REQUIRE(errs.size() == 1);
    REQUIRE_THAT(errs.front(), Catch::Matchers::ContainsSubstring("y >= y_c = 2"));
}

TEST_CASE("validate is total over hostile inputs") {
    for (double bad : {-1.0, 0.0, std::nan(""), std::numeric_limits<double>::infinity()}) {
        ModelParams p = figure_params();
        p.omega_a = bad;
        REQUIRE_NOTHROW(validate(p));
        p = figure_params();
        p.s = bad;
        REQUIRE_NOTHROW(validate(p));
        p = figure_params();
        p.y = bad;
        REQUIRE_NOTHROW(validate(p));
    }
}

TEST_CASE("critical coupling: reference values") {
    ModelParams p = figure_params();
    REQUIRE(critical_coupling(p) == Approx(2.0).margin(1e-15));

    p.omega_a = 1.0;
    p.kappa = 0.0;
    REQUIRE(critical_coupling(p) == Approx(1.0).margin(1e-15));

    p.omega_a = 3.0;
    p.kappa = 4.0;
    p.omega_b = 2.0;
    REQUIRE(critical_coupling(p) == Approx(std::sqrt(25.0 / 3.0 * 2.0)).epsilon(1e-15));
}

TEST_CASE("critical coupling: domain error at omega_a = 0") {
    ModelParams p = figure_params();
    p.omega_a = 0.0;
    REQUIRE_THROWS_AS(critical_coupling(p), std::domain_error);
}

TEST_CASE("critical coupling grows with kappa and omega_b") {
    ModelParams p = figure_params();
    double prev = 0.0;
    for (double k : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        p.kappa = k;
        const double yc = critical_coupling(p);
        REQUIRE(yc > prev);
        prev = yc;
    }
    p = figure_params();
    prev = 0.0;
    for (double ob : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        p.omega_b = ob;
        const double yc = critical_coupling(p);
        REQUIRE(yc > prev);
        prev = yc;
    }
    p = figure_params();
    p.kappa = 0.0;
    REQUIRE(critical_coupling(p) == Approx(std::sqrt(p.omega_a * p.omega_b)).epsilon(1e-15));
}

TEST_CASE("parameter file round trip and overrides") {
    const std::string path = "model_test_params.cfg";
    {
        std::ofstream f(path);
        f << "# reference set\n";
        f << "omega_a = 2.0\n";
        f << "kappa=2\n";
        f << "gamma = 0.5\n";
        f << "s = 0.8\n";
        f << "omega_m = infinite\n";
        f << "y = 0.25\n";
    }
    ModelParams p = params_from_file(path);
    REQUIRE(p.omega_a == 2.0);
    REQUIRE(p.kappa == 2.0);
    REQUIRE(p.y == 0.25);
    REQUIRE_FALSE(p.has_finite_cutoff());

    p = apply_overrides(p, {{"y", "0.5"}, {"omega_m", "1000"}});
    REQUIRE(p.y == 0.5);
    REQUIRE(p.omega_m == 1000.0);
    std::remove(path.c_str());
}

TEST_CASE("parameter file rejects unknown keys") {
    const std::string path = "model_test_bad.cfg";
    {
        std::ofstream f(path);
        f << "omega_q = 1.0\n";
    }
    REQUIRE_THROWS_AS(params_from_file(path), ConfigError);
    std::remove(path.c_str());
}
