#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sspec {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

/// Invalid parameters or arguments outside the supported domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The spectral parameter sits on (or numerically at) an eigenvalue.
class NearEigenvalueError : public NumericalError {
public:
    NearEigenvalueError(const std::string& what, double nearest)
        : NumericalError(what), nearest_(nearest) {}
    double nearest() const { return nearest_; }

private:
    double nearest_;
};

} // namespace sspec
