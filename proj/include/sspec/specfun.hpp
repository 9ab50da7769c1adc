#pragma once

#include <vector>

#include "sspec/common.hpp"
#include "sspec/dd.hpp"

namespace sspec::specfun {

/// Largest |nu| accepted by the public Bessel routines.
inline constexpr double max_order = 2.5;
/// |z| above which the Hankel expansion replaces the ascending series.
inline constexpr double switch_radius = 20.0;

enum class Ray { positive_real, upper_diagonal, lower_diagonal, positive_imaginary };

struct RayArgument {
    double magnitude;
    Ray ray;

    cplx value() const;
    /// Sign of Im z; +1 on the positive real ray by convention.
    int sigma() const;
};

// All complex-argument routines accept any z with |arg z| < pi and use the
// principal branch of z^nu.  The *_scaled variants return f(z) exp(-|Im z|).

cplx bessel_j(double nu, cplx z);
cplx bessel_j(double nu, const RayArgument& z);
cplx bessel_j_scaled(double nu, cplx z);
cplx bessel_y(double nu, cplx z);
cplx bessel_y(double nu, const RayArgument& z);
cplx bessel_y_scaled(double nu, cplx z);
cplx bessel_j_prime(double nu, cplx z);
cplx bessel_j_prime(double nu, const RayArgument& z);

/// Forced evaluation paths, exposed for the handoff checks.
cplx bessel_j_ascending(double nu, cplx z);
cplx bessel_j_hankel(double nu, cplx z);

/// S_nu(z) = sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)), so J_nu(z) = (z/2)^nu S_nu(z).
/// Summed in double-double; intended for |z| <= switch_radius.
dd::Complex bessel_series_normalized(double nu, cplx z);

/// Modified Bessel function for positive real x.
double bessel_i(double nu, double x);
/// I_nu(x) exp(-x).
double bessel_i_scaled(double nu, double x);
double bessel_k0(double x);
/// K_0(x) exp(x).
double bessel_k0_scaled(double x);

/// Hankel symbol (nu,k) = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (4^k k!).
double hankel_symbol(double nu, int k);

struct HankelSeries {
    enum class Kind { PQ, T };

    double nu;
    int sigma;
    Kind kind;
    /// Coefficient of z^{-k}.
    std::vector<cplx> coefficients;

    cplx evaluate(cplx z) const;
};

/// P - i sigma Q = sum_k (nu,k) (-i sigma / 2)^k z^{-k}.
HankelSeries hankel_pq(double nu, int sigma, int K);
/// T = sum_{k>=1} (2k-1) (nu,k-1) (-i sigma / 2)^k z^{-k}.
HankelSeries hankel_t(double nu, int sigma, int K);

/// Exponential integral E_1 on its principal branch (cut along the negative real axis).
cplx expint_e1(cplx z);

} // namespace sspec::specfun
