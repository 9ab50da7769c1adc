#include "sspec/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>
#include <quadmath.h>

#include "sspec/quadrature.hpp"
#include "sspec/specfun.hpp"
#include "sspec/spectral_sum.hpp"

namespace sspec::resolvent {

using specfun::bessel_j;
using specfun::bessel_j_scaled;
using specfun::bessel_y;
using specfun::bessel_y_scaled;

namespace {

constexpr double end_eps = 1e-3;
constexpr double pole_tol = 1e-12;

void check_x(double x)
{
    if (!(x > 0.0 && x <= 1.0))
        throw DomainError(fmt::format("x = {} outside (0, 1]", x));
}

void check_general(double g)
{
    validate_g(g);
    if (g == 0.5)
        throw DomainError("g = 1/2 uses the logarithmic basis");
}

[[noreturn]] void near_eigenvalue(const ExtensionParams& ext, const SpectralPoint& p)
{
    double n = nearest_eigenvalue(ext, p.lambda);
    throw NearEigenvalueError(fmt::format("lambda = ({}, {}) is within working precision of the eigenvalue {} of {}",
                                          p.lambda.real(), p.lambda.imag(), n, ext.describe()),
                              n);
}

// Left solution (up to a constant) and Wronskian with R, both from exp(-|Im mu|)-scaled
// Bessel values; general g.  L = L^N - rho mu^{-2nu} L^D, or L^D for the D-extension.
struct LeftData {
    cplx a;   // coefficient of L^D
    cplx b;   // coefficient of L^N
    cplx w_scaled;
    double w_ref;
};

LeftData left_general(const ExtensionParams& ext, cplx mu)
{
    const double g = ext.g(), nu = ext.nu();
    const double c = 2.0 * std::cos(g * pi) / pi;
    cplx jp = bessel_j_scaled(nu, mu), jm = bessel_j_scaled(-nu, mu);
    if (ext.is_dirichlet())
        return {1.0, 0.0, c * jp, std::abs(c) * (std::abs(jp) + std::abs(jm))};
    cplx a = -rho(ext) * std::exp(-2.0 * nu * std::log(mu));
    return {a, 1.0, c * (jm + a * jp), std::abs(c) * (std::abs(jm) + std::abs(a * jp))};
}

struct HalfData {
    cplx p;   // coefficient of sqrt(x) J0(mu x)
    cplx q;   // coefficient of sqrt(x) N0(mu x)
    cplx w_scaled;
    double w_ref;
};

HalfData left_half(const ExtensionParams& ext, cplx mu)
{
    cplx j0 = bessel_j_scaled(0.0, mu), y0 = bessel_y_scaled(0.0, mu);
    if (ext.is_dirichlet())
        return {1.0, 0.0, (2.0 / pi) * j0, std::abs(j0) + std::abs(y0)};
    cplx c = *ext.theta() - std::log(mu);
    return {c, pi / 2.0, (2.0 / pi) * c * j0 + y0, std::abs(c * j0) + std::abs(y0)};
}

} // namespace

Basis basis_solutions(double g, cplx mu, double x)
{
    check_general(g);
    check_x(x);
    const double nu = g - 0.5, s = std::sqrt(x);
    cplx jpx = bessel_j(nu, mu * x), jmx = bessel_j(-nu, mu * x);
    cplx jp = bessel_j(nu, mu), jm = bessel_j(-nu, mu);
    cplx r = (x == 1.0) ? cplx(0.0) : s * (jm * jpx - jp * jmx);
    return {s * jpx, s * jmx, r};
}

Wronskians wronskians(double g, cplx mu)
{
    check_general(g);
    const double nu = g - 0.5, c = 2.0 * std::cos(g * pi) / pi;
    return {c * bessel_j(nu, mu), c * bessel_j(-nu, mu)};
}

double nearest_eigenvalue(const ExtensionParams& ext, cplx lambda)
{
    int count = std::max(5, int(std::sqrt(std::max(std::abs(lambda), 1.0)) / pi) + 5);
    EigenvalueTable t = eigenvalues(ext, count);
    double best = std::numeric_limits<double>::quiet_NaN(), dist = std::numeric_limits<double>::infinity();
    auto consider = [&](double v) {
        double d = std::abs(lambda - v);
        if (d < dist) {
            dist = d;
            best = v;
        }
    };
    for (const auto& e : t.entries)
        consider(e.lambda);
    if (t.negative)
        consider(*t.negative);
    if (t.zero_mode)
        consider(0.0);
    return best;
}

KernelEval kernel(const ExtensionParams& ext, const SpectralPoint& p, double x, double y)
{
    check_x(x);
    check_x(y);
    const double lo = std::min(x, y), hi = std::max(x, y);
    const cplx mu = p.mu;
    if (ext.is_half()) {
        HalfData h = left_half(ext, mu);
        if (std::abs(h.w_scaled) < pole_tol * h.w_ref)
            near_eigenvalue(ext, p);
        cplx l = std::sqrt(lo) * (h.p * bessel_j(0.0, mu * lo) + h.q * bessel_y(0.0, mu * lo));
        cplx r = hi == 1.0 ? cplx(0.0)
                           : std::sqrt(hi) * (bessel_y_scaled(0.0, mu) * bessel_j(0.0, mu * hi) -
                                              bessel_j_scaled(0.0, mu) * bessel_y(0.0, mu * hi));
        return {x, y, l * r / h.w_scaled};
    }
    const double nu = ext.nu();
    LeftData d = left_general(ext, mu);
    if (std::abs(d.w_scaled) < pole_tol * d.w_ref)
        near_eigenvalue(ext, p);
    cplx l = std::sqrt(lo) * (d.a * bessel_j(nu, mu * lo) + d.b * bessel_j(-nu, mu * lo));
    cplx r = hi == 1.0 ? cplx(0.0)
                       : std::sqrt(hi) * (bessel_j_scaled(-nu, mu) * bessel_j(nu, mu * hi) -
                                          bessel_j_scaled(nu, mu) * bessel_j(-nu, mu * hi));
    return {x, y, l * r / d.w_scaled};
}

const char* method_name(TraceMethod m)
{
    switch (m) {
    case TraceMethod::closed_form: return "closed-form";
    case TraceMethod::quadrature: return "quadrature";
    case TraceMethod::spectral_sum: return "spectral-sum";
    }
    return "?";
}

cplx trace_d(double g, cplx mu)
{
    check_general(g);
    const double nu = g - 0.5;
    return bessel_j_scaled(nu + 1.0, mu) / (2.0 * mu * bessel_j_scaled(nu, mu));
}

cplx trace_n(double g, cplx mu)
{
    check_general(g);
    const double nu = g - 0.5;
    return bessel_j_scaled(1.0 - nu, mu) / (2.0 * mu * bessel_j_scaled(-nu, mu));
}

TraceValue trace_closed(const ExtensionParams& ext, const SpectralPoint& p)
{
    if (ext.is_half())
        return trace_half(ext, p);
    const double nu = ext.nu();
    const cplx mu = p.mu;
    LeftData d = left_general(ext, mu);
    if (std::abs(d.w_scaled) < pole_tol * d.w_ref)
        near_eigenvalue(ext, p);
    // (1 - tau) Tr G_D + tau Tr G_N with the J_nu(mu) poles of the two terms cancelled
    cplx num = d.a * bessel_j_scaled(nu + 1.0, mu) + d.b * bessel_j_scaled(1.0 - nu, mu);
    cplx den = d.a * bessel_j_scaled(nu, mu) + d.b * bessel_j_scaled(-nu, mu);
    return {p, num / (2.0 * mu * den), TraceMethod::closed_form};
}

TraceValue trace_half(const ExtensionParams& ext, const SpectralPoint& p)
{
    if (!ext.is_half())
        throw DomainError("trace_half needs g = 1/2");
    const cplx mu = p.mu;
    HalfData h = left_half(ext, mu);
    if (std::abs(h.w_scaled) < pole_tol * h.w_ref)
        near_eigenvalue(ext, p);
    cplx j0 = bessel_j_scaled(0.0, mu), j1 = bessel_j_scaled(1.0, mu);
    if (ext.is_dirichlet())
        return {p, j1 / (2.0 * mu * j0), TraceMethod::closed_form};
    // L = c J0 + (pi/2) N0 with c = theta - log mu depends on mu through c, which adds
    // the J0 / (pi mu^2) term
    cplx y1 = bessel_y_scaled(1.0, mu);
    cplx c = h.p;
    cplx den = (2.0 / pi) * c * j0 + bessel_y_scaled(0.0, mu);
    cplx tr = ((2.0 / pi) * c * j1 + y1) / (2.0 * mu * den) + j0 / (pi * mu * mu * den);
    return {p, tr, TraceMethod::closed_form};
}

namespace {

dd::Complex from_quad(__complex128 q)
{
    __float128 re = __real__ q, im = __imag__ q;
    double rh = double(re), ih = double(im);
    return {dd::Real(rh, double(re - rh)), dd::Real(ih, double(im - ih))};
}

__complex128 to_quad(const dd::Complex& z)
{
    __complex128 q;
    __real__ q = __float128(z.re.hi) + __float128(z.re.lo);
    __imag__ q = __float128(z.im.hi) + __float128(z.im.lo);
    return q;
}

// diag G = pre * x * [cm x^{-2nu} S_-^2 + c0 S_+ S_- + cp x^{2nu} S_+^2], S_+- = S_{+-nu}(mu x)
struct DiagCoeffs {
    double nu;
    double pre;
    dd::Complex cm, c0, cp;
};

DiagCoeffs diag_coeffs(const ExtensionParams& ext, const SpectralPoint& p)
{
    check_general(ext.g());
    const double nu = ext.nu();
    if (std::abs(p.mu) > specfun::switch_radius)
        throw DomainError(fmt::format("diagonal kernel series limited to |mu| <= {}", specfun::switch_radius));
    DiagCoeffs c{nu, pi / (2.0 * std::cos(ext.g() * pi)), {}, {}, {}};
    dd::Complex sp = specfun::bessel_series_normalized(nu, p.mu);
    dd::Complex sm = specfun::bessel_series_normalized(-nu, p.mu);
    if (ext.is_dirichlet()) {
        if (sp.abs_approx() < pole_tol * sm.abs_approx())
            near_eigenvalue(ext, p);
        c.cm = dd::Complex();
        c.c0 = dd::Complex(dd::Real(-1.0));
        c.cp = sm / sp;
        return c;
    }
    const dd::Real rp(rho(ext) * std::pow(2.0, -2.0 * nu));
    dd::Complex d1 = sm - sp * rp;
    if (d1.abs_approx() < pole_tol * (sm.abs_approx() + (sp * rp).abs_approx()))
        near_eigenvalue(ext, p);
    c.cm = -(sp / d1);
    c.c0 = (sm + sp * rp) / d1;
    c.cp = -((sm * rp) / d1);
    return c;
}

cplx diag_eval(const DiagCoeffs& c, cplx mu, double x)
{
    const cplx z = mu * x;
    // powers of z / mu rather than x keep both terms on the same argument
    __complex128 r = to_quad(dd::Complex(z) / dd::Complex(mu));
    __complex128 e;
    __real__ e = __float128(2.0 * c.nu);
    __imag__ e = 0;
    dd::Complex xp = from_quad(cpowq(r, e));
    dd::Complex xm = from_quad(cpowq(r, -e));
    dd::Complex sp = specfun::bessel_series_normalized(c.nu, z);
    dd::Complex sm = specfun::bessel_series_normalized(-c.nu, z);
    dd::Complex s = c.cm * xm * sm * sm + c.c0 * sp * sm + c.cp * xp * sp * sp;
    return c.pre * x * s.value();
}

std::vector<cplx> normalized_coefficients(double nu, cplx mu, int K)
{
    std::vector<cplx> a(K);
    cplx w = -mu * mu / 4.0;
    a[0] = 1.0 / std::tgamma(nu + 1.0);
    for (int k = 1; k < K; ++k)
        a[k] = a[k - 1] * w / (double(k) * (nu + k));
    return a;
}

std::vector<cplx> cauchy(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<cplx> c(a.size(), 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; i + j < a.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// int_0^eps x * x^{shift} * sum_k a_k x^{2k} dx
cplx power_integral(const std::vector<cplx>& a, double shift, double eps)
{
    cplx s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        double q = 2.0 + shift + 2.0 * double(k);
        s += a[k] * std::pow(eps, q) / q;
    }
    return s;
}

cplx end_correction_general(const DiagCoeffs& c, cplx mu)
{
    const int K = 12;
    auto ap = normalized_coefficients(c.nu, mu, K), am = normalized_coefficients(-c.nu, mu, K);
    cplx v = c.cm.value() * power_integral(cauchy(am, am), -2.0 * c.nu, end_eps) +
             c.c0.value() * power_integral(cauchy(ap, am), 0.0, end_eps) +
             c.cp.value() * power_integral(cauchy(ap, ap), 2.0 * c.nu, end_eps);
    return c.pre * v;
}

cplx half_diag(const HalfData& h, cplx mu, double x)
{
    cplx j = bessel_j(0.0, mu * x), y = bessel_y(0.0, mu * x);
    cplx l = h.p * j + h.q * y;
    cplx r = bessel_y_scaled(0.0, mu) * j - bessel_j_scaled(0.0, mu) * y;
    return x * l * r / h.w_scaled;
}

cplx end_correction_half(const HalfData& h, cplx mu)
{
    const int K = 12;
    std::vector<cplx> A = normalized_coefficients(0.0, mu, K), B(K, 0.0), U(K), V(K);
    double harmonic = 0.0;
    for (int k = 1; k < K; ++k) {
        harmonic += 1.0 / k;
        B[k] = harmonic * A[k];
    }
    const cplx L = std::log(mu / 2.0) + euler_gamma;
    for (int k = 0; k < K; ++k) {
        U[k] = (2.0 / pi) * (L * A[k] - B[k]);
        V[k] = (2.0 / pi) * A[k];
    }
    const cplx r = bessel_y_scaled(0.0, mu), s = -bessel_j_scaled(0.0, mu);
    std::vector<cplx> a0(K), a1(K), b0(K), b1(K);
    for (int k = 0; k < K; ++k) {
        a0[k] = h.p * A[k] + h.q * U[k];
        a1[k] = h.q * V[k];
        b0[k] = r * A[k] + s * U[k];
        b1[k] = s * V[k];
    }
    auto p0 = cauchy(a0, b0), p2 = cauchy(a1, b1);
    auto p1a = cauchy(a0, b1), p1b = cauchy(a1, b0);
    const double l = std::log(end_eps);
    cplx total = 0.0;
    for (int k = 0; k < K; ++k) {
        double q = 2.0 * k + 2.0, E = std::pow(end_eps, q);
        total += p0[k] * E / q;
        total += (p1a[k] + p1b[k]) * E * (l / q - 1.0 / (q * q));
        total += p2[k] * E * (l * l / q - 2.0 * l / (q * q) + 2.0 / (q * q * q));
    }
    return total / h.w_scaled;
}

} // namespace

cplx diagonal_kernel(const ExtensionParams& ext, cplx mu, double x)
{
    check_x(x);
    SpectralPoint p = SpectralPoint::from_mu(mu);
    return diag_eval(diag_coeffs(ext, p), mu, x);
}

TraceValue trace_quadrature(const ExtensionParams& ext, const SpectralPoint& p)
{
    const cplx mu = p.mu;
    if (ext.is_half()) {
        HalfData h = left_half(ext, mu);
        if (std::abs(h.w_scaled) < pole_tol * h.w_ref)
            near_eigenvalue(ext, p);
        auto r = quad::integrate([&](double x) { return half_diag(h, mu, x); }, end_eps, 1.0, 1e-15, 1e-12);
        return {p, r.value + end_correction_half(h, mu), TraceMethod::quadrature, r.error};
    }
    DiagCoeffs c = diag_coeffs(ext, p);
    auto r = quad::integrate([&](double x) { return diag_eval(c, mu, x); }, end_eps, 1.0, 1e-15, 1e-12);
    return {p, r.value + end_correction_general(c, mu), TraceMethod::quadrature, r.error};
}

TraceValue trace_spectral(const EigenvalueTable& table, const SpectralPoint& p)
{
    const cplx lambda = p.lambda;
    const cplx kappa = std::sqrt(-lambda);
    SpectralSum s = spectral_sum(
        table, [&](double mu) { return 1.0 / (mu * mu - lambda); },
        [&](double a) { return std::atan(kappa / a) / (pi * kappa); });
    cplx v = s.value;
    if (table.negative)
        v += 1.0 / (*table.negative - lambda);
    if (table.zero_mode)
        v += -1.0 / lambda;
    return {p, v, TraceMethod::spectral_sum, 1e-4 * std::abs(s.tail)};
}

TraceValue trace_spectral(const ExtensionParams& ext, const SpectralPoint& p, int count)
{
    return trace_spectral(eigenvalues(ext, count), p);
}

cplx primitive_nu_nu(double nu, cplx mu, double x)
{
    cplx z = mu * x;
    cplx j = bessel_j(nu, z);
    return 0.5 * x * x * (j * j - bessel_j(nu - 1.0, z) * bessel_j(nu + 1.0, z));
}

cplx hyp1f2_bessel_form(double nu, cplx mu, double x)
{
    if (!(std::abs(nu) > 0.0 && std::abs(nu) < 1.0))
        throw DomainError("1F2 Bessel form needs 0 < |nu| < 1");
    cplx z = mu * x;
    cplx braces = bessel_j(-1.0 - nu, z) * bessel_j(nu - 1.0, z) + 2.0 * bessel_j(-nu, z) * bessel_j(nu, z) +
                  bessel_j(1.0 - nu, z) * bessel_j(1.0 + nu, z);
    return -pi * z * z / (4.0 * nu * std::sin(pi * nu)) * braces;
}

cplx hyp1f2_series(double nu, cplx mu, double x)
{
    if (!(std::abs(nu) > 0.0 && std::abs(nu) < 1.0))
        throw DomainError("1F2 series needs 0 < |nu| < 1");
    // double-double: for |mu x| ~ 10 the terms reach 1e3 times the sum
    const dd::Complex z(mu * x), w = -(z * z);
    const double aw = std::abs(mu * x) * std::abs(mu * x);
    dd::Complex term{dd::Real(1.0)}, sum{dd::Real(1.0)};
    for (int k = 0; k < 400; ++k) {
        const dd::Real kk{double(k)};
        term = term * w * ((kk - dd::Real(0.5)) / ((kk - dd::Real(nu)) * (kk + dd::Real(nu)) * dd::Real(k + 1.0)));
        sum += term;
        if (term.abs_approx() < 1e-30 * sum.abs_approx() && k > std::cbrt(aw) + 2.0)
            return sum.value();
    }
    throw NumericalError("1F2 series did not converge");
}

cplx primitive_nu_minus_nu(double nu, cplx mu, double x)
{
    cplx f = hyp1f2_bessel_form(nu, mu, x);
    return -nu * nu / (mu * mu * std::tgamma(1.0 - nu) * std::tgamma(1.0 + nu)) * (f - 1.0);
}

} // namespace sspec::resolvent
