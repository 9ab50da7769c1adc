#pragma once

// Minimal double-double arithmetic (about 32 significant digits), enough
// to sum alternating power series with heavy cancellation.

#include <cmath>
#include <complex>

namespace sspec::dd {

struct Real {
    double hi = 0.0;
    double lo = 0.0;

    constexpr Real() = default;
    constexpr Real(double h) : hi(h) {}
    constexpr Real(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline Real two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline Real quick_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline Real two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real a, Real b)
{
    Real s = two_sum(a.hi, b.hi);
    Real t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }
inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, Real b)
{
    Real p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline Real operator/(Real a, Real b)
{
    double q1 = a.hi / b.hi;
    Real r = a - b * Real(q1);
    double q2 = r.hi / b.hi;
    r = r - b * Real(q2);
    double q3 = r.hi / b.hi;
    return Real(q1) + Real(q2) + Real(q3);
}

inline Real& operator+=(Real& a, Real b) { return a = a + b; }
inline Real& operator*=(Real& a, Real b) { return a = a * b; }

struct Complex {
    Real re;
    Real im;

    constexpr Complex() = default;
    constexpr Complex(Real r, Real i = Real()) : re(r), im(i) {}
    Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }
    double abs_approx() const { return std::hypot(re.hi, im.hi); }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Complex operator*(const Complex& a, const Complex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Complex operator*(const Complex& a, Real b) { return {a.re * b, a.im * b}; }
inline Complex operator/(const Complex& a, Real b) { return {a.re / b, a.im / b}; }

inline Complex operator/(const Complex& a, const Complex& b)
{
    Real den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline Complex& operator+=(Complex& a, const Complex& b) { return a = a + b; }

} // namespace sspec::dd
