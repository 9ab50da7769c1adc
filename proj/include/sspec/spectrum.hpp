#pragma once

#include <optional>
#include <vector>

#include "sspec/extension.hpp"

namespace sspec {

struct EigenEntry {
    int index;      ///< n >= 1, counting positive eigenvalues only
    double lambda;
    double mu_lo;   ///< bracket on mu = sqrt(lambda) used by the root finder
    double mu_hi;
};

struct EigenvalueTable {
    ExtensionParams ext;
    std::vector<EigenEntry> entries;
    std::optional<double> negative;
    bool zero_mode = false;

    double g() const { return ext.g(); }
    /// Smallest positive eigenvalue.
    double first_positive() const { return entries.front().lambda; }
};

/// n-th positive zero of J_nu, |nu| <= 3/2.
double bessel_zero(double nu, int n);
/// First `count` positive zeros of J_nu.
std::vector<double> bessel_zeros(double nu, int count);
/// McMahon estimate (n + nu/2 - 1/4) pi - (4nu^2 - 1) / (8 (n + nu/2 - 1/4) pi).
double mcmahon_zero(double nu, int n);

EigenvalueTable eigenvalues_d(double g, int count);
EigenvalueTable eigenvalues_n(double g, int count);
EigenvalueTable eigenvalues_general(const ExtensionParams& ext, int count);
EigenvalueTable eigenvalues_half(double theta, int count);
EigenvalueTable eigenvalues_half(const ExtensionParams& ext, int count);
/// Dispatches to the routines above.
EigenvalueTable eigenvalues(const ExtensionParams& ext, int count);

/// F(mu) = mu^{2g-1} J_{1/2-g}(mu) / J_{g-1/2}(mu) for real mu > 0.
double spectral_function(double g, double mu);
/// F(i mu) = mu^{2g-1} I_{1/2-g}(mu) / I_{g-1/2}(mu); equals rho_critical(g) at mu = 0.
double spectral_function_imag(double g, double mu);

/// Spectral equation at g = 1/2: (theta - log mu) J0(mu) + (pi/2) Y0(mu), written through
/// beta/alpha so it stays finite at mu = 0 (where it equals -beta/alpha).
double half_spectral_function(double beta_over_alpha, double mu);

} // namespace sspec
