#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace graphent {

/// Base of every error raised by the library. `kind()` is a stable short tag
/// used in machine-readable CLI error output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

/// Evaluation at a point where the model is singular (e.g. the interband
/// logarithm at hbar*omega = 2*mu_c).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

/// The Doppler-shifted frequency omega - q_x*v_d vanished.
class DopplerSingularity : public Error {
public:
    explicit DopplerSingularity(const std::string& what) : Error("doppler_singularity", what) {}
};

class CoincidentSource : public Error {
public:
    explicit CoincidentSource(const std::string& what) : Error("coincident_source", what) {}
};

class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double achieved_error)
        : Error("integration_failure", what), achieved_error_(achieved_error) {}
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

class RootNotFound : public Error {
public:
    RootNotFound(const std::string& what, std::complex<double> last_iterate)
        : Error("root_not_found", what), last_(last_iterate) {}
    std::complex<double> last_iterate() const noexcept { return last_; }

private:
    std::complex<double> last_;
};

/// Iteration collapsed onto the light line, or TM waves are not supported.
class NoSpp : public Error {
public:
    NoSpp(const std::string& what, bool tm_supported)
        : Error("no_spp", what), tm_supported_(tm_supported) {}
    bool tm_supported() const noexcept { return tm_supported_; }

private:
    bool tm_supported_;
};

class NonUniqueSteadyState : public Error {
public:
    explicit NonUniqueSteadyState(const std::string& what)
        : Error("non_unique_steady_state", what) {}
};

class NumericalInstability : public Error {
public:
    explicit NumericalInstability(const std::string& what)
        : Error("numerical_instability", what) {}
};

} // namespace graphent
