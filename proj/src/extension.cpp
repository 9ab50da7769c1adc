#include "sspec/extension.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <vector>

#include "sspec/specfun.hpp"

namespace sspec {

void validate_g(double g)
{
    if (!std::isfinite(g) || g < 0.5 || g >= 1.5)
        throw DomainError(fmt::format("g = {} outside [1/2, 3/2)", g));
    if (g > 0.5 && g < 0.5 + 1e-6)
        throw DomainError(fmt::format("g = {} too close to 1/2; use g = 1/2 exactly", g));
}

ExtensionParams::ExtensionParams(double g, double alpha, double beta) : g_(g), alpha_(alpha), beta_(beta)
{
    validate_g(g);
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("alpha and beta must be finite");
    double n = std::hypot(alpha, beta);
    if (n == 0.0)
        throw DomainError("alpha and beta cannot both vanish");
    if (std::abs(n - 1.0) > 4e-16) {
        alpha_ = alpha / n;
        beta_ = beta / n;
    }
    if (alpha_ < 0.0 || (alpha_ == 0.0 && beta_ < 0.0)) {
        alpha_ = -alpha_;
        beta_ = -beta_;
    }
    if (alpha_ == 0.0)
        beta_ = 1.0;
    if (beta_ == 0.0) {
        alpha_ = 1.0;
        beta_ = 0.0;
    }
}

ExtensionParams ExtensionParams::from_ab(double g, double alpha, double beta) { return {g, alpha, beta}; }

ExtensionParams ExtensionParams::from_rho(double g, double rho_value)
{
    validate_g(g);
    if (g == 0.5)
        throw DomainError("rho is undefined at g = 1/2; use theta");
    if (!std::isfinite(rho_value))
        throw DomainError("rho must be finite (use the Dirichlet extension for rho = infinity)");
    return {g, 1.0, rho_value / rho_critical(g)};
}

ExtensionParams ExtensionParams::from_theta(double theta)
{
    if (!std::isfinite(theta))
        throw DomainError("theta must be finite (use the Dirichlet extension)");
    return {0.5, 1.0, std::log(2.0) - euler_gamma - theta};
}

ExtensionParams ExtensionParams::dirichlet(double g) { return {g, 0.0, 1.0}; }
ExtensionParams ExtensionParams::neumann(double g) { return {g, 1.0, 0.0}; }

std::optional<double> ExtensionParams::theta() const
{
    if (!is_half() || is_dirichlet())
        return std::nullopt;
    return -beta_ / alpha_ + std::log(2.0) - euler_gamma;
}

bool ExtensionParams::alpha_equals_beta() const { return std::abs(alpha_ - beta_) <= 1e-14; }

double ExtensionParams::beta_over_alpha() const
{
    return is_dirichlet() ? std::numeric_limits<double>::infinity() : beta_ / alpha_;
}

std::string ExtensionParams::describe() const
{
    if (is_dirichlet())
        return fmt::format("g={} D-extension", g_);
    if (auto t = theta())
        return fmt::format("g=1/2 theta={}", *t);
    return fmt::format("g={} alpha={} beta={}", g_, alpha_, beta_);
}

double rho_critical(double g)
{
    validate_g(g);
    return std::pow(2.0, 2.0 * g - 1.0) * std::tgamma(0.5 + g) / std::tgamma(1.5 - g);
}

double rho(const ExtensionParams& ext)
{
    if (ext.is_half())
        throw DomainError("rho is undefined at g = 1/2; use theta");
    if (ext.is_dirichlet())
        return std::numeric_limits<double>::infinity();
    return ext.beta_over_alpha() * rho_critical(ext.g());
}

SpectralPoint SpectralPoint::from_lambda(cplx lambda, int sigma_if_real)
{
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw DomainError("non-finite spectral parameter");
    if (lambda.imag() == 0.0) {
        if (sigma_if_real != 1 && sigma_if_real != -1)
            throw DomainError("sigma must be +1 or -1");
        if (lambda.real() < 0.0)
            return {lambda, cplx(0.0, std::sqrt(-lambda.real())), 1};
        return {lambda, cplx(std::sqrt(lambda.real()), 0.0), sigma_if_real};
    }
    cplx mu = std::sqrt(lambda);
    return {lambda, mu, mu.imag() > 0.0 ? 1 : -1};
}

SpectralPoint SpectralPoint::from_mu(cplx mu, int sigma_if_real)
{
    double a = std::arg(mu);
    if (mu != 0.0 && !(a > -pi / 2 && a <= pi / 2))
        throw DomainError("mu must satisfy -pi/2 < arg mu <= pi/2");
    if (mu.imag() == 0.0) {
        if (sigma_if_real != 1 && sigma_if_real != -1)
            throw DomainError("sigma must be +1 or -1");
        return {mu * mu, mu, sigma_if_real};
    }
    return {mu * mu, mu, mu.imag() > 0.0 ? 1 : -1};
}

cplx tau(const ExtensionParams& ext, const SpectralPoint& p)
{
    if (ext.is_half())
        throw DomainError("tau is defined for g != 1/2 only");
    if (ext.is_dirichlet())
        return 0.0;
    if (ext.is_neumann())
        return 1.0;
    if (p.mu == 0.0)
        throw DomainError("tau needs mu != 0");
    const double nu = ext.nu();
    cplx jp = specfun::bessel_j_scaled(nu, p.mu);
    cplx jm = specfun::bessel_j_scaled(-nu, p.mu);
    cplx b = rho(ext) * std::exp(-2.0 * nu * std::log(p.mu)) * jp;
    cplx den = jm - b;
    if (std::abs(den) < 1e-10 * (std::abs(jm) + std::abs(b)))
        throw NearEigenvalueError(fmt::format("lambda = ({}, {}) is an eigenvalue of {} to working precision",
                                              p.lambda.real(), p.lambda.imag(), ext.describe()),
                                  p.lambda.real());
    return jm / den;
}

ExtensionParams scale_extension(const ExtensionParams& ext, double c)
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("scaling factor must be positive");
    if (ext.is_half() && !ext.is_dirichlet())
        throw DomainError("scaling of theta-extensions at g = 1/2 is not supported");
    const double g = ext.g();
    return ExtensionParams::from_ab(g, std::pow(c, -g) * ext.alpha(), std::pow(c, g - 1.0) * ext.beta());
}

BoundaryData boundary_coefficients(double g, cplx mu, cplx coeff_d, cplx coeff_n)
{
    validate_g(g);
    if (g == 0.5)
        throw DomainError("boundary_coefficients requires g in (1/2, 3/2)");
    if (mu == 0.0)
        throw DomainError("boundary_coefficients requires mu != 0");
    const double nu = g - 0.5;
    const double s = std::sqrt(2.0 * g - 1.0);
    cplx half = std::exp(nu * std::log(mu / 2.0));
    return {coeff_d * s * half / std::tgamma(g + 0.5), coeff_n * s / half / std::tgamma(1.5 - g)};
}

BoundaryFit fit_boundary_coefficients(double g, cplx mu, const std::function<cplx(double)>& phi, double bound_scale)
{
    validate_g(g);
    if (g == 0.5)
        throw DomainError("boundary fit requires g in (1/2, 3/2)");
    const double nu = g - 0.5;
    const double s = std::sqrt(2.0 * g - 1.0);
    const int m = 48;
    Eigen::MatrixXcd A(m, 4);
    Eigen::VectorXcd rhs(m);
    std::vector<double> xs(m);
    double phimax = 0.0;
    for (int i = 0; i < m; ++i) {
        double x = 1e-4 * std::pow(10.0, double(i) / (m - 1));
        xs[i] = x;
        cplx z = mu * x;
        cplx u1 = std::pow(x, g) * std::tgamma(1.0 + nu) * specfun::bessel_series_normalized(nu, z).value();
        cplx u2 = std::pow(x, 1.0 - g) * std::tgamma(1.0 - nu) * specfun::bessel_series_normalized(-nu, z).value();
        A(i, 0) = u1 / s;
        A(i, 1) = u2 / s;
        A(i, 2) = x * x;
        A(i, 3) = x * x * x;
        rhs(i) = phi(x);
        phimax = std::max(phimax, std::abs(rhs(i)));
    }
    Eigen::VectorXd scale(4);
    for (int j = 0; j < 4; ++j) {
        scale(j) = A.col(j).cwiseAbs().maxCoeff();
        A.col(j) /= scale(j);
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(rhs);
    double residual = (A * c - rhs).cwiseAbs().maxCoeff();
    double bound = bound_scale * std::pow(1e-3, 1.5) * std::max(1.0, phimax);
    if (!(residual <= bound))
        throw DomainError(fmt::format("boundary fit residual {} exceeds {}", residual, bound));
    return {{c(0) / scale(0), c(1) / scale(1)}, residual, bound};
}

} // namespace sspec
