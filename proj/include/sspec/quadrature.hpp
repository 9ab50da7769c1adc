#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include <fmt/format.h>

#include "sspec/common.hpp"

namespace sspec::quad {

struct Result {
    cplx value;
    double error;
    int evaluations;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478322, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx rk = fc * wgk[10];
    cplx rg = 0.0;
    for (int j = 0; j < 10; ++j) {
        cplx f1 = f(c - h * xgk[j]);
        cplx f2 = f(c + h * xgk[j]);
        rk += wgk[j] * (f1 + f2);
        if (j % 2 == 1)
            rg += wg[j / 2] * (f1 + f2);
    }
    cplx k = rk * h, g = rg * h;
    double err = std::abs(k - g);
    // QUADPACK-style scaling of the raw Gauss/Kronrod difference
    err = std::min(std::abs(k - g), 200.0 * err * std::sqrt(200.0 * err / std::max(std::abs(k), 1e-300)));
    err = std::max(err, 50.0 * 2.2e-16 * std::abs(k));
    return {a, b, k, err};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued f over [a, b].
/// Stops when the summed error estimate is below max(abs_tol, rel_tol |I|).
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_panels = 4000)
{
    std::priority_queue<detail::Panel> heap;
    heap.push(detail::gk21(f, a, b));
    int evals = 21;
    cplx total = heap.top().value;
    double err = heap.top().error;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (int(heap.size()) >= max_panels)
            throw NumericalError(fmt::format("quadrature on [{}, {}] did not converge: estimate {} error {}",
                                             a, b, std::abs(total), err));
        detail::Panel p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        detail::Panel l = detail::gk21(f, p.a, m), r = detail::gk21(f, m, p.b);
        evals += 42;
        heap.push(l);
        heap.push(r);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        if (heap.size() % 64 == 0 || err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            // resum to shed drift from the running updates
            total = 0.0;
            err = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, err, evals};
}

/// Integral over [a, inf) by doubling panels [a 2^j, a 2^{j+1}]; requires a > 0 and
/// an integrand that decays at least like an integrable power.
template <class F>
Result integrate_to_infinity(F&& f, double a, double abs_tol, double rel_tol, int max_panels = 400)
{
    if (!(a > 0.0))
        throw DomainError("integrate_to_infinity needs a positive lower limit");
    cplx total = 0.0;
    double err = 0.0;
    int evals = 0, quiet = 0;
    double lo = a;
    for (int j = 0; j < max_panels; ++j) {
        double hi = 2.0 * lo;
        Result r = integrate(f, lo, hi, 0.25 * abs_tol, rel_tol);
        total += r.value;
        err += r.error;
        evals += r.evaluations;
        if (std::abs(r.value) <= std::max(0.25 * abs_tol, 0.1 * rel_tol * std::abs(total)))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 3)
            return {total, err, evals};
        lo = hi;
        if (!std::isfinite(lo))
            break;
    }
    throw NumericalError(fmt::format("semi-infinite quadrature from {} did not converge (estimate {})", a,
                                     std::abs(total)));
}

} // namespace sspec::quad
