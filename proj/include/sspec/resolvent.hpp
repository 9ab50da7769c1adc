#pragma once

#include "sspec/extension.hpp"
#include "sspec/spectrum.hpp"

namespace sspec::resolvent {

struct Basis {
    cplx l_d;
    cplx l_n;
    cplx r;
};

/// L^D = sqrt(x) J_nu(mu x), L^N = sqrt(x) J_{-nu}(mu x),
/// R = sqrt(x) (J_{-nu}(mu) J_nu(mu x) - J_nu(mu) J_{-nu}(mu x)), nu = g - 1/2.
Basis basis_solutions(double g, cplx mu, double x);

/// W[f, h] = f' h - f h' for the pairs (L^D, R) and (L^N, R):
/// (2 cos(g pi) / pi) J_{+-nu}(mu).
struct Wronskians {
    cplx d;
    cplx n;
};
Wronskians wronskians(double g, cplx mu);

struct KernelEval {
    double x;
    double y;
    cplx value;
};

/// G(x, y; lambda) of the extension; g = 1/2 uses the logarithmic basis.
KernelEval kernel(const ExtensionParams& ext, const SpectralPoint& p, double x, double y);

/// G(x, x; lambda) for g != 1/2, evaluated in double-double from the normalised
/// series so that the exponential cancellation off the real axis is harmless.  |mu| <= 20.
cplx diagonal_kernel(const ExtensionParams& ext, cplx mu, double x);

enum class TraceMethod { closed_form, quadrature, spectral_sum };
const char* method_name(TraceMethod m);

struct TraceValue {
    SpectralPoint lambda;
    cplx trace;
    TraceMethod method;
    double error_estimate = 0.0;
};

cplx trace_d(double g, cplx mu);
cplx trace_n(double g, cplx mu);

TraceValue trace_closed(const ExtensionParams& ext, const SpectralPoint& p);
/// Adaptive quadrature of the diagonal kernel on (1e-3, 1) plus the series
/// integral on (0, 1e-3).  |mu| <= 20.
TraceValue trace_quadrature(const ExtensionParams& ext, const SpectralPoint& p);
/// sum_n 1/(lambda_n - lambda) over `count` eigenvalues plus the asymptotic tail.
TraceValue trace_spectral(const ExtensionParams& ext, const SpectralPoint& p, int count = 2000);
/// As trace_spectral, reusing a precomputed table.
TraceValue trace_spectral(const EigenvalueTable& table, const SpectralPoint& p);

/// g = 1/2 closed form (Dirichlet or theta-extension).
TraceValue trace_half(const ExtensionParams& ext, const SpectralPoint& p);

/// int_0^x t J_nu(mu t)^2 dt in closed form.
cplx primitive_nu_nu(double nu, cplx mu, double x);
/// int_0^x t J_nu(mu t) J_{-nu}(mu t) dt via the 1F2 closed form; 0 < |nu| < 1.
cplx primitive_nu_minus_nu(double nu, cplx mu, double x);
/// 1F2({-1/2}; {-nu, nu}; -x^2 mu^2) from its Bessel-product representation.
cplx hyp1f2_bessel_form(double nu, cplx mu, double x);
/// The same function from its hypergeometric series.
cplx hyp1f2_series(double nu, cplx mu, double x);

/// Eigenvalue of the extension closest to lambda (used in error reports).
double nearest_eigenvalue(const ExtensionParams& ext, cplx lambda);

} // namespace sspec::resolvent
