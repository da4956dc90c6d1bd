#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace subdicke {

/// Bad configuration file or command-line input (CLI maps this to exit 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Base class for failures of the numerical machinery (CLI maps to exit 1).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature did not reach the requested tolerance within its budget.
/// Carries the best estimate obtained and the associated error bound.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& msg, double estimate, double error_bound)
        : NumericalError(msg), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Root iteration failed to converge; carries the last iterate.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& msg, std::complex<double> last_iterate)
        : NumericalError(msg), last_(last_iterate) {}
    std::complex<double> last_iterate() const { return last_; }

private:
    std::complex<double> last_;
};

/// Root iteration escaped into the upper half-plane (unstable pole).
class InstabilityError : public NumericalError {
public:
    InstabilityError(const std::string& msg, std::complex<double> iterate)
        : NumericalError(msg), iterate_(iterate) {}
    std::complex<double> iterate() const { return iterate_; }

private:
    std::complex<double> iterate_;
};

} // namespace subdicke
