#include "sspec/spectrum.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>

#include "sspec/parallel.hpp"
#include "sspec/specfun.hpp"

namespace sspec {

namespace {

double jreal(double nu, double x) { return specfun::bessel_j(nu, cplx(x)).real(); }

struct Bracket {
    double root;
    double lo;
    double hi;
};

template <class F>
Bracket solve_bracketed(F f, double lo, double hi, double flo, double fhi, const char* what)
{
    if (flo == 0.0)
        return {lo, lo, lo};
    if (fhi == 0.0)
        return {hi, hi, hi};
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericalError(fmt::format("{}: no sign change on [{}, {}]", what, lo, hi));
    std::uintmax_t iters = 100;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    if (iters >= 100)
        throw NumericalError(fmt::format("{}: root refinement did not converge in 100 iterations on [{}, {}]",
                                         what, r.first, r.second));
    return {0.5 * (r.first + r.second), lo, hi};
}

// Newton on J_nu with bisection fallback inside [lo, hi].
double newton_zero(double nu, double lo, double hi, double x)
{
    double flo = jreal(nu, lo);
    for (int it = 0; it < 100; ++it) {
        double f = jreal(nu, x);
        double fp = specfun::bessel_j_prime(nu, cplx(x)).real();
        if (f == 0.0)
            return x;
        if ((f > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        double xn = x - f / fp;
        if (!(xn > lo && xn < hi))
            xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 4e-16 * x)
            return xn;
        x = xn;
    }
    throw NumericalError(fmt::format("Bessel zero refinement for nu = {} did not converge near {}", nu, x));
}

double mcmahon3(double nu, double m)
{
    double b = (m + nu / 2.0 - 0.25) * pi;
    double m4 = 4.0 * nu * nu;
    double e = 8.0 * b;
    return b - (m4 - 1.0) / e - 4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) / (3.0 * e * e * e);
}

void check_zero_order(double nu)
{
    if (!(std::abs(nu) <= 1.5))
        throw DomainError(fmt::format("bessel_zero supports |nu| <= 3/2, got {}", nu));
}

struct ZeroSeed {
    double first;
    long offset; // McMahon index of the first zero
};

ZeroSeed seed_zeros(double nu)
{
    double x = 0.05, f = jreal(nu, x);
    for (;;) {
        double xn = x + 0.05, fn = jreal(nu, xn);
        if ((f > 0.0) != (fn > 0.0) || fn == 0.0) {
            Bracket b = solve_bracketed([&](double t) { return jreal(nu, t); }, x, xn, f, fn, "first Bessel zero");
            double z = newton_zero(nu, x, xn, b.root);
            return {z, std::lround(z / pi - nu / 2.0 + 0.25)};
        }
        x = xn;
        f = fn;
        if (x > 10.0)
            throw NumericalError("could not bracket the first Bessel zero");
    }
}

double zero_from_seed(double nu, const ZeroSeed& s, int n)
{
    if (n == 1)
        return s.first;
    double guess = mcmahon3(nu, double(s.offset + n - 1));
    for (double w : {0.5, 1.0, 1.4}) {
        double lo = guess - w, hi = guess + w;
        if ((jreal(nu, lo) > 0.0) != (jreal(nu, hi) > 0.0))
            return newton_zero(nu, lo, hi, guess);
    }
    throw NumericalError(fmt::format("failed to bracket zero {} of J_{}", n, nu));
}

double h_general(double nu, double rho_value, double mu)
{
    // mu^nu J_{-nu}(mu) - rho mu^{-nu} J_nu(mu), finite at mu = 0
    if (mu <= specfun::switch_radius) {
        double a = specfun::bessel_series_normalized(-nu, cplx(mu)).re.value();
        double b = specfun::bessel_series_normalized(nu, cplx(mu)).re.value();
        return std::pow(2.0, nu) * a - rho_value * std::pow(2.0, -nu) * b;
    }
    return std::pow(mu, nu) * jreal(-nu, mu) - rho_value * std::pow(mu, -nu) * jreal(nu, mu);
}

int sign_changes(const std::function<double(double)>& f, double lo, double hi, double flo, double fhi)
{
    int changes = 0;
    double prev = flo;
    for (int i = 1; i <= 9; ++i) {
        double v = (i == 9) ? fhi : f(lo + (hi - lo) * i / 9.0);
        if (v != 0.0 && prev != 0.0 && ((v > 0.0) != (prev > 0.0)))
            ++changes;
        if (v != 0.0)
            prev = v;
    }
    return changes;
}

struct Interval {
    double lo, hi;
};

std::vector<EigenEntry> roots_in_intervals(const std::vector<Interval>& iv, const std::function<double(double)>& f,
                                           const char* what)
{
    std::vector<EigenEntry> out(iv.size());
    parallel_for(iv.size(), [&](std::size_t i) {
        double lo = iv[i].lo, hi = iv[i].hi;
        double flo = f(lo), fhi = f(hi);
        if (sign_changes(f, lo, hi, flo, fhi) != 1)
            throw NumericalError(fmt::format("{}: expected exactly one root in ({}, {})", what, lo, hi));
        Bracket b = solve_bracketed(f, lo, hi, flo, fhi, what);
        out[i] = {int(i) + 1, b.root * b.root, lo, hi};
    });
    return out;
}

} // namespace

double mcmahon_zero(double nu, int n)
{
    double b = (n + nu / 2.0 - 0.25) * pi;
    return b - (4.0 * nu * nu - 1.0) / (8.0 * b);
}

std::vector<double> bessel_zeros(double nu, int count)
{
    check_zero_order(nu);
    if (count < 0)
        throw DomainError("negative zero count");
    std::vector<double> z(count);
    if (count == 0)
        return z;
    if (nu == 0.5) {
        for (int n = 1; n <= count; ++n)
            z[n - 1] = n * pi;
        return z;
    }
    ZeroSeed s = seed_zeros(nu);
    parallel_for(std::size_t(count), [&](std::size_t i) { z[i] = zero_from_seed(nu, s, int(i) + 1); });
    return z;
}

double bessel_zero(double nu, int n)
{
    check_zero_order(nu);
    if (n < 1)
        throw DomainError("zero index must be >= 1");
    if (nu == 0.5)
        return n * pi;
    return zero_from_seed(nu, seed_zeros(nu), n);
}

double spectral_function(double g, double mu)
{
    double nu = g - 0.5;
    if (mu <= specfun::switch_radius) {
        double a = specfun::bessel_series_normalized(-nu, cplx(mu)).re.value();
        double b = specfun::bessel_series_normalized(nu, cplx(mu)).re.value();
        return std::pow(2.0, 2.0 * nu) * a / b;
    }
    return std::pow(mu, 2.0 * nu) * jreal(-nu, mu) / jreal(nu, mu);
}

double spectral_function_imag(double g, double mu)
{
    double nu = g - 0.5;
    if (mu <= specfun::switch_radius) {
        double a = specfun::bessel_series_normalized(-nu, cplx(0.0, mu)).re.value();
        double b = specfun::bessel_series_normalized(nu, cplx(0.0, mu)).re.value();
        return std::pow(2.0, 2.0 * nu) * a / b;
    }
    return std::pow(mu, 2.0 * nu) * specfun::bessel_i_scaled(-nu, mu) / specfun::bessel_i_scaled(nu, mu);
}

double half_spectral_function(double beta_over_alpha, double mu)
{
    if (mu <= 2.0) {
        // -(beta/alpha) J0 - sum_k H_k (-mu^2/4)^k / (k!)^2
        double q = -mu * mu / 4.0, t = 1.0, h = 0.0, s = 0.0;
        for (int k = 1; k < 60; ++k) {
            t *= q / (double(k) * double(k));
            h += 1.0 / k;
            s += h * t;
            if (std::abs(h * t) < 1e-18)
                break;
        }
        return -beta_over_alpha * jreal(0.0, mu) - s;
    }
    double theta = std::log(2.0) - euler_gamma - beta_over_alpha;
    return (theta - std::log(mu)) * jreal(0.0, mu) + pi / 2.0 * specfun::bessel_y(0.0, cplx(mu)).real();
}

EigenvalueTable eigenvalues_d(double g, int count)
{
    validate_g(g);
    EigenvalueTable t{ExtensionParams::dirichlet(g), {}, std::nullopt, false};
    std::vector<double> z = bessel_zeros(g - 0.5, count);
    for (int i = 0; i < count; ++i)
        t.entries.push_back({i + 1, z[i] * z[i], z[i], z[i]});
    return t;
}

EigenvalueTable eigenvalues_n(double g, int count)
{
    validate_g(g);
    if (g == 0.5)
        return eigenvalues_half(ExtensionParams::neumann(0.5), count);
    EigenvalueTable t{ExtensionParams::neumann(g), {}, std::nullopt, false};
    std::vector<double> z = bessel_zeros(0.5 - g, count);
    for (int i = 0; i < count; ++i)
        t.entries.push_back({i + 1, z[i] * z[i], z[i], z[i]});
    return t;
}

EigenvalueTable eigenvalues_general(const ExtensionParams& ext, int count)
{
    if (ext.is_half())
        return eigenvalues_half(ext, count);
    if (ext.is_dirichlet())
        return eigenvalues_d(ext.g(), count);
    if (count < 0)
        throw DomainError("negative eigenvalue count");
    const double nu = ext.nu();
    const double r = rho(ext);
    const double ba = ext.beta_over_alpha();
    EigenvalueTable t{ext, {}, std::nullopt, ext.alpha_equals_beta()};

    bool first_interval = !t.zero_mode && ba < 1.0;
    int nz = first_interval ? count : count + 1;
    std::vector<double> z = bessel_zeros(nu, nz);
    std::vector<Interval> iv;
    if (first_interval && count > 0)
        iv.push_back({0.0, z[0]});
    for (int k = 0; int(iv.size()) < count; ++k)
        iv.push_back({z[k], z[k + 1]});
    t.entries = roots_in_intervals(iv, [&](double mu) { return h_general(nu, r, mu); }, "spectral equation");

    if (!t.zero_mode && ba > 1.0) {
        const double g = ext.g();
        auto q = [&](double mu) { return spectral_function_imag(g, mu) - r; };
        double hi = 1.0;
        while (q(hi) <= 0.0) {
            hi *= 2.0;
            if (hi > 1e8)
                throw NumericalError("negative eigenvalue bracket search failed");
        }
        Bracket b = solve_bracketed(q, 0.0, hi, q(0.0), q(hi), "negative eigenvalue");
        t.negative = -b.root * b.root;
    }
    return t;
}

EigenvalueTable eigenvalues_half(double theta, int count)
{
    return eigenvalues_half(ExtensionParams::from_theta(theta), count);
}

EigenvalueTable eigenvalues_half(const ExtensionParams& ext, int count)
{
    if (!ext.is_half())
        throw DomainError("eigenvalues_half requires g = 1/2");
    if (ext.is_dirichlet())
        return eigenvalues_d(0.5, count);
    if (count < 0)
        throw DomainError("negative eigenvalue count");
    const double ba = ext.beta_over_alpha();
    EigenvalueTable t{ext, {}, std::nullopt, ext.is_neumann()};
    bool first_interval = ba > 0.0;
    int nz = first_interval ? count : count + 1;
    std::vector<double> z = bessel_zeros(0.0, nz);
    std::vector<Interval> iv;
    if (first_interval && count > 0)
        iv.push_back({0.0, z[0]});
    for (int k = 0; int(iv.size()) < count; ++k)
        iv.push_back({z[k], z[k + 1]});
    t.entries = roots_in_intervals(iv, [&](double mu) { return half_spectral_function(ba, mu); },
                                   "g=1/2 spectral equation");

    if (ba < 0.0) {
        // log k + K0(k)/I0(k) = theta
        double theta = *ext.theta();
        auto q = [&](double k) {
            return std::log(k) + specfun::bessel_k0_scaled(k) / specfun::bessel_i_scaled(0.0, k) * std::exp(-2.0 * k) -
                   theta;
        };
        double lo = 1e-12, hi = 1.0;
        while (q(hi) <= 0.0) {
            hi *= 2.0;
            if (hi > 1e8)
                throw NumericalError("negative eigenvalue bracket search failed");
        }
        Bracket b = solve_bracketed(q, lo, hi, q(lo), q(hi), "negative eigenvalue");
        t.negative = -b.root * b.root;
    }
    return t;
}

EigenvalueTable eigenvalues(const ExtensionParams& ext, int count)
{
    if (ext.is_half())
        return eigenvalues_half(ext, count);
    if (ext.is_dirichlet())
        return eigenvalues_d(ext.g(), count);
    if (ext.is_neumann())
        return eigenvalues_n(ext.g(), count);
    return eigenvalues_general(ext, count);
}

} // namespace sspec
