#include "sspec/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <fmt/format.h>

namespace sspec::specfun {

namespace {

void check_order(double nu)
{
    if (!std::isfinite(nu) || std::abs(nu) > max_order + 1e-14)
        throw DomainError(fmt::format("Bessel order {} outside [-{}, {}]", nu, max_order, max_order));
}

void check_argument(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("non-finite Bessel argument");
    if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() != 0.0)
        throw DomainError("Bessel argument on the branch cut arg z = pi");
}

bool is_integer(double nu) { return std::abs(nu - std::round(nu)) < 1e-14; }

cplx scale_factor(cplx z) { return std::exp(-std::abs(z.imag())); }

dd::Complex series_sum(double nu, cplx z)
{
    // sum_k (-z^2/4)^k / (k! (nu+1)_k); no division by Gamma yet
    dd::Complex zz(z);
    dd::Complex q = -(zz * zz) / dd::Real(4.0);
    dd::Complex term(dd::Real(1.0));
    dd::Complex sum = term;
    double az = std::abs(z);
    for (int k = 1; k < 600; ++k) {
        dd::Real den = dd::two_sum(nu, double(k)) * dd::Real(double(k));
        term = (term * q) / den;
        sum += term;
        double t = term.abs_approx();
        double s = sum.abs_approx();
        if (k > az && t <= 1e-34 * s)
            return sum;
        if (k > az && s == 0.0 && t == 0.0)
            return sum;
    }
    throw NumericalError("ascending Bessel series did not converge");
}

struct HankelSums {
    cplx plus;  // P + iQ
    cplx minus; // P - iQ
};

HankelSums hankel_sums(double nu, cplx z)
{
    const double mu4 = 4.0 * nu * nu;
    cplx wp = cplx(0.0, 1.0) / (2.0 * z);
    cplx tp = 1.0, tm = 1.0;
    HankelSums s{1.0, 1.0};
    double last = 1.0;
    for (int k = 1; k < 80; ++k) {
        double f = (mu4 - double(2 * k - 1) * double(2 * k - 1)) / (4.0 * double(k));
        tp *= f * wp;
        tm *= -f * wp;
        double mag = std::abs(tp);
        if (mag == 0.0)
            break;
        if (mag > last)
            break;
        s.plus += tp;
        s.minus += tm;
        last = mag;
        if (mag < 1e-17 * std::abs(s.plus))
            break;
    }
    return s;
}

// Uses the integer-order logarithmic series; n >= 0, |z| <= switch radius.
cplx bessel_y_integer_series(int n, cplx z)
{
    dd::Complex zz(z);
    dd::Complex q = (zz * zz) / dd::Real(4.0); // z^2/4
    // finite part: -(1/pi) sum_{k<n} (n-k-1)!/k! (z/2)^{2k-n}
    cplx half = z / 2.0;
    cplx finite = 0.0;
    for (int k = 0; k < n; ++k)
        finite += std::tgamma(double(n - k)) / std::tgamma(double(k + 1)) * std::pow(half, 2 * k - n);

    // sum_k (H_k + H_{n+k}) (-z^2/4)^k / (k!(n+k)!)
    dd::Complex t(dd::Real(1.0 / std::tgamma(double(n + 1))));
    dd::Real hk(0.0), hnk(0.0);
    for (int j = 1; j <= n; ++j)
        hnk += dd::Real(1.0) / dd::Real(double(j));
    dd::Complex harm = t * (hk + hnk);
    dd::Complex plain = t;
    double az = std::abs(z);
    for (int k = 1; k < 600; ++k) {
        dd::Real den = dd::Real(double(k)) * dd::Real(double(n + k));
        t = -(t * q) / den;
        hk += dd::Real(1.0) / dd::Real(double(k));
        hnk += dd::Real(1.0) / dd::Real(double(n + k));
        dd::Complex th = t * (hk + hnk);
        harm += th;
        plain += t;
        if (k > az && th.abs_approx() <= 1e-34 * std::max(harm.abs_approx(), 1e-300))
            break;
    }
    cplx pn = std::pow(half, n);
    cplx jn = pn * plain.value();
    cplx lg = std::log(half) + euler_gamma;
    return (2.0 / pi) * lg * jn - pn * harm.value() / pi - finite / pi;
}

cplx j_scaled_unchecked(double nu, cplx z)
{
    if (z == 0.0) {
        if (nu == 0.0)
            return 1.0;
        if (nu > 0.0 || is_integer(nu))
            return 0.0;
        throw DomainError("J_nu(0) diverges for negative non-integer nu");
    }
    if (std::abs(z) > switch_radius) {
        HankelSums s = hankel_sums(nu, z);
        cplx chi = z - (nu / 2.0 + 0.25) * pi;
        double b = std::abs(z.imag());
        cplx ep = std::exp(cplx(-chi.imag() - b, chi.real()));
        cplx em = std::exp(cplx(chi.imag() - b, -chi.real()));
        return std::sqrt(2.0 / (pi * z)) * 0.5 * (ep * s.plus + em * s.minus);
    }
    if (nu < 0.0 && is_integer(nu)) {
        int n = int(std::lround(-nu));
        cplx v = j_scaled_unchecked(double(n), z);
        return (n % 2) ? -v : v;
    }
    dd::Complex s = series_sum(nu, z);
    cplx pref = std::pow(z / 2.0, nu) / std::tgamma(nu + 1.0);
    return pref * s.value() * scale_factor(z);
}

} // namespace

cplx RayArgument::value() const
{
    if (!(magnitude > 0.0))
        throw DomainError("ray argument magnitude must be positive");
    switch (ray) {
    case Ray::positive_real: return {magnitude, 0.0};
    case Ray::upper_diagonal: return std::polar(magnitude, pi / 4.0);
    case Ray::lower_diagonal: return std::polar(magnitude, -pi / 4.0);
    case Ray::positive_imaginary: return {0.0, magnitude};
    }
    return {magnitude, 0.0};
}

int RayArgument::sigma() const { return ray == Ray::lower_diagonal ? -1 : 1; }

cplx bessel_j_scaled(double nu, cplx z)
{
    check_order(nu);
    check_argument(z);
    return j_scaled_unchecked(nu, z);
}

cplx bessel_j(double nu, cplx z) { return bessel_j_scaled(nu, z) * std::exp(std::abs(z.imag())); }
cplx bessel_j(double nu, const RayArgument& z) { return bessel_j(nu, z.value()); }

cplx bessel_j_ascending(double nu, cplx z)
{
    check_order(nu);
    check_argument(z);
    if (nu < 0.0 && is_integer(nu)) {
        int n = int(std::lround(-nu));
        cplx v = bessel_j_ascending(double(n), z);
        return (n % 2) ? -v : v;
    }
    if (z == 0.0)
        return bessel_j(nu, z);
    dd::Complex s = series_sum(nu, z);
    return std::pow(z / 2.0, nu) / std::tgamma(nu + 1.0) * s.value();
}

cplx bessel_j_hankel(double nu, cplx z)
{
    check_order(nu);
    check_argument(z);
    if (z == 0.0)
        throw DomainError("Hankel expansion undefined at z = 0");
    HankelSums s = hankel_sums(nu, z);
    cplx chi = z - (nu / 2.0 + 0.25) * pi;
    return std::sqrt(2.0 / (pi * z)) * 0.5 * (std::exp(cplx(0, 1) * chi) * s.plus + std::exp(-cplx(0, 1) * chi) * s.minus);
}

dd::Complex bessel_series_normalized(double nu, cplx z)
{
    check_order(nu);
    if (nu < 0.0 && is_integer(nu)) {
        int n = int(std::lround(-nu));
        dd::Complex s = bessel_series_normalized(double(n), z);
        dd::Complex h(std::pow(z / 2.0, 2 * n) * ((n % 2) ? -1.0 : 1.0));
        return s * h;
    }
    dd::Complex s = series_sum(nu, z);
    return s / dd::Real(std::tgamma(nu + 1.0));
}

cplx bessel_y_scaled(double nu, cplx z)
{
    check_order(nu);
    check_argument(z);
    if (z == 0.0)
        throw DomainError("Y_nu diverges at z = 0");
    if (std::abs(z) > switch_radius) {
        HankelSums s = hankel_sums(nu, z);
        cplx chi = z - (nu / 2.0 + 0.25) * pi;
        double b = std::abs(z.imag());
        cplx ep = std::exp(cplx(-chi.imag() - b, chi.real()));
        cplx em = std::exp(cplx(chi.imag() - b, -chi.real()));
        return std::sqrt(2.0 / (pi * z)) * (ep * s.plus - em * s.minus) / cplx(0.0, 2.0);
    }
    if (is_integer(nu)) {
        int n = int(std::lround(nu));
        cplx v = bessel_y_integer_series(std::abs(n), z) * scale_factor(z);
        return (n < 0 && (n % 2)) ? -v : v;
    }
    cplx a = j_scaled_unchecked(nu, z);
    cplx b = j_scaled_unchecked(-nu, z);
    return (a * std::cos(nu * pi) - b) / std::sin(nu * pi);
}

cplx bessel_y(double nu, cplx z) { return bessel_y_scaled(nu, z) * std::exp(std::abs(z.imag())); }
cplx bessel_y(double nu, const RayArgument& z) { return bessel_y(nu, z.value()); }

cplx bessel_j_prime(double nu, cplx z)
{
    check_order(nu);
    check_argument(z);
    if (z == 0.0)
        throw DomainError("J'_nu evaluated at z = 0");
    double b = std::exp(std::abs(z.imag()));
    return (nu / z * j_scaled_unchecked(nu, z) - j_scaled_unchecked(nu + 1.0, z)) * b;
}

cplx bessel_j_prime(double nu, const RayArgument& z) { return bessel_j_prime(nu, z.value()); }

double bessel_i_scaled(double nu, double x)
{
    check_order(nu);
    if (!(x > 0.0))
        throw DomainError("bessel_i requires a positive argument");
    if (x <= 30.0) {
        double s = bessel_series_normalized(nu, cplx(0.0, x)).re.value();
        return std::pow(x / 2.0, nu) * s * std::exp(-x);
    }
    double sum = 1.0, term = 1.0, last = 1.0;
    const double mu4 = 4.0 * nu * nu;
    for (int k = 1; k < 80; ++k) {
        term *= -(mu4 - double(2 * k - 1) * double(2 * k - 1)) / (double(k) * 8.0 * x);
        double mag = std::abs(term);
        if (mag == 0.0 || mag > last)
            break;
        sum += term;
        last = mag;
        if (mag < 1e-17 * std::abs(sum))
            break;
    }
    return sum / std::sqrt(2.0 * pi * x);
}

double bessel_i(double nu, double x) { return bessel_i_scaled(nu, x) * std::exp(x); }

double bessel_k0(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k0 requires a positive argument");
    return boost::math::cyl_bessel_k(0, x);
}

double bessel_k0_scaled(double x)
{
    if (!(x > 0.0))
        throw DomainError("bessel_k0 requires a positive argument");
    if (x < 600.0)
        return boost::math::cyl_bessel_k(0, x) * std::exp(x);
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 20; ++k) {
        term *= -(double(2 * k - 1) * double(2 * k - 1)) / (double(k) * 8.0 * x);
        sum += term;
    }
    return std::sqrt(pi / (2.0 * x)) * sum;
}

double hankel_symbol(double nu, int k)
{
    if (k < 0)
        throw DomainError("Hankel symbol index must be non-negative");
    const double mu4 = 4.0 * nu * nu;
    double h = 1.0;
    for (int j = 1; j <= k; ++j)
        h *= (mu4 - double(2 * j - 1) * double(2 * j - 1)) / (4.0 * double(j));
    return h;
}

cplx HankelSeries::evaluate(cplx z) const
{
    cplx acc = 0.0;
    for (size_t k = coefficients.size(); k-- > 0;)
        acc = acc / z + coefficients[k];
    return acc;
}

HankelSeries hankel_pq(double nu, int sigma, int K)
{
    if (K < 0 || K > 40)
        throw DomainError("Hankel truncation K must lie in [0, 40]");
    HankelSeries s{nu, sigma, HankelSeries::Kind::PQ, {}};
    cplx w(0.0, -0.5 * sigma);
    cplx p = 1.0;
    for (int k = 0; k <= K; ++k) {
        s.coefficients.push_back(hankel_symbol(nu, k) * p);
        p *= w;
    }
    return s;
}

HankelSeries hankel_t(double nu, int sigma, int K)
{
    if (K < 0 || K > 40)
        throw DomainError("Hankel truncation K must lie in [0, 40]");
    HankelSeries s{nu, sigma, HankelSeries::Kind::T, {0.0}};
    cplx w(0.0, -0.5 * sigma);
    cplx p = w;
    for (int k = 1; k <= K; ++k) {
        s.coefficients.push_back(double(2 * k - 1) * hankel_symbol(nu, k - 1) * p);
        p *= w;
    }
    return s;
}

cplx expint_e1(cplx z)
{
    if (z == 0.0)
        throw DomainError("E1 diverges at 0");
    if (std::abs(z) < 8.0) {
        cplx sum = 0.0, term = 1.0;
        for (int k = 1; k < 400; ++k) {
            term *= -z / double(k);
            cplx add = term / double(k);
            sum += add;
            if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum)))
                break;
        }
        return -euler_gamma - std::log(z) - sum;
    }
    // modified Lentz for e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
    const double tiny = 1e-300;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 20000; ++i) {
        double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-z);
    }
    throw NumericalError("E1 continued fraction did not converge");
}

} // namespace sspec::specfun
