#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sspec/common.hpp"

namespace sspec {

/// Rejects g outside [1/2, 3/2) and the degenerate window (1/2, 1/2 + 1e-6).
void validate_g(double g);

/// Self-adjoint extension: Dirichlet at x = 1 and alpha C1 + beta C2 = 0 at x = 0.
/// (alpha, beta) is stored canonically: unit norm, alpha >= 0, and beta = 1 when alpha = 0.
class ExtensionParams {
public:
    static ExtensionParams from_ab(double g, double alpha, double beta);
    /// g != 1/2; rho finite.
    static ExtensionParams from_rho(double g, double rho);
    /// g = 1/2 with theta = -beta/alpha + log 2 - gamma_E.
    static ExtensionParams from_theta(double theta);
    static ExtensionParams dirichlet(double g);
    static ExtensionParams neumann(double g);

    double g() const { return g_; }
    double nu() const { return g_ - 0.5; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    /// Present for g = 1/2 with alpha != 0.
    std::optional<double> theta() const;

    bool is_half() const { return g_ == 0.5; }
    bool is_dirichlet() const { return alpha_ == 0.0; }
    bool is_neumann() const { return beta_ == 0.0; }
    /// True iff alpha = beta up to 1e-14 (zero mode for g != 1/2).
    bool alpha_equals_beta() const;
    /// beta/alpha; +infinity for the Dirichlet extension.
    double beta_over_alpha() const;

    bool operator==(const ExtensionParams&) const = default;
    std::string describe() const;

private:
    ExtensionParams(double g, double alpha, double beta);

    double g_;
    double alpha_;
    double beta_;
};

/// 2^{2g-1} Gamma(1/2+g) / Gamma(3/2-g): the value of rho for alpha = beta.
double rho_critical(double g);
/// (beta/alpha) rho_critical(g); +infinity for the Dirichlet extension.  g != 1/2.
double rho(const ExtensionParams& ext);

/// lambda with mu = +sqrt(lambda), -pi/2 < arg mu <= pi/2, and the half-plane sign sigma.
struct SpectralPoint {
    cplx lambda;
    cplx mu;
    int sigma;

    /// sigma_if_real is used only when lambda is real and positive.
    static SpectralPoint from_lambda(cplx lambda, int sigma_if_real = 1);
    static SpectralPoint from_mu(cplx mu, int sigma_if_real = 1);
};

/// tau(lambda) = [1 - rho mu^{1-2g} J_{g-1/2}(mu) / J_{1/2-g}(mu)]^{-1}.
cplx tau(const ExtensionParams& ext, const SpectralPoint& p);

/// Extension transported by the scaling isometry u(x) -> c^{1/2} u(cx).
ExtensionParams scale_extension(const ExtensionParams& ext, double c);

struct BoundaryData {
    cplx c1;
    cplx c2;
};

/// C1, C2 of a L_D + b L_N with L_D = sqrt(x) J_{g-1/2}(mu x), L_N = sqrt(x) J_{1/2-g}(mu x),
/// normalised so that phi ~ (C1 x^g + C2 x^{1-g}) / sqrt(2g-1) near 0.
BoundaryData boundary_coefficients(double g, cplx mu, cplx coeff_d, cplx coeff_n);

struct BoundaryFit {
    BoundaryData data;
    double residual;
    double bound;
};

/// Least-squares extraction of (C1, C2) from samples of phi on x in [1e-4, 1e-3].
/// The model is the two exact-lambda Frobenius solutions plus x^2 and x^3.
/// Throws DomainError if the residual exceeds bound_scale * (1e-3)^{3/2} * max(1, max|phi|).
BoundaryFit fit_boundary_coefficients(double g, cplx mu, const std::function<cplx(double)>& phi,
                                      double bound_scale = 1.0);

} // namespace sspec
