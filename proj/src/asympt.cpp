#include "sspec/asympt.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sspec/specfun.hpp"

namespace sspec::asympt {

GenPowerSeries GenPowerSeries::monomial(double exponent, cplx c, double truncation_order)
{
    GenPowerSeries s(truncation_order);
    s.add_term(exponent, c);
    return s;
}

void GenPowerSeries::add_term(double exponent, cplx c)
{
    if (!std::isfinite(exponent))
        throw DomainError("series exponent must be finite");
    if (exponent <= truncation_ + merge_tol)
        return;
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& t) { return t.exponent <= exponent + merge_tol; });
    if (it != terms_.end() && std::abs(it->exponent - exponent) <= merge_tol)
        it->coefficient += c;
    else
        terms_.insert(it, {exponent, c});
}

cplx GenPowerSeries::coefficient(double exponent) const
{
    for (const auto& t : terms_)
        if (std::abs(t.exponent - exponent) <= merge_tol)
            return t.coefficient;
    return 0.0;
}

double GenPowerSeries::leading_exponent() const
{
    return terms_.empty() ? -std::numeric_limits<double>::infinity() : terms_.front().exponent;
}

void GenPowerSeries::drop_truncated()
{
    std::erase_if(terms_, [&](const Term& t) { return t.exponent <= truncation_ + merge_tol; });
}

GenPowerSeries GenPowerSeries::truncated(double e_min) const
{
    GenPowerSeries r(truncation_);
    for (const auto& t : terms_) {
        if (t.exponent >= e_min - merge_tol)
            r.terms_.push_back(t);
        else
            r.truncation_ = std::max(r.truncation_, t.exponent);
    }
    return r;
}

cplx GenPowerSeries::evaluate(cplx mu) const
{
    const cplx lm = std::log(mu);
    cplx s = 0.0;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        s += it->coefficient * std::exp(it->exponent * lm);
    return s;
}

GenPowerSeries GenPowerSeries::operator+(const GenPowerSeries& o) const
{
    GenPowerSeries r(std::max(truncation_, o.truncation_));
    for (const auto& t : terms_)
        r.add_term(t.exponent, t.coefficient);
    for (const auto& t : o.terms_)
        r.add_term(t.exponent, t.coefficient);
    return r;
}

GenPowerSeries GenPowerSeries::operator-(const GenPowerSeries& o) const { return *this + o * cplx(-1.0); }

GenPowerSeries GenPowerSeries::operator*(cplx c) const
{
    GenPowerSeries r = *this;
    for (auto& t : r.terms_)
        t.coefficient *= c;
    return r;
}

GenPowerSeries GenPowerSeries::operator*(const GenPowerSeries& o) const
{
    double t = std::max(truncation_ + o.leading_exponent(), o.truncation_ + leading_exponent());
    if (std::isnan(t))
        t = exact;
    GenPowerSeries r(t);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            r.add_term(a.exponent + b.exponent, a.coefficient * b.coefficient);
    return r;
}

GenPowerSeries GenPowerSeries::reciprocal(double truncation_order) const
{
    if (terms_.empty() || std::abs(terms_.front().exponent) > merge_tol || terms_.front().coefficient == 0.0)
        throw DomainError("reciprocal needs a leading term c mu^0 with c != 0");
    const double t = std::max(truncation_order, truncation_);
    if (!std::isfinite(t))
        throw DomainError("reciprocal of a non-constant series needs a finite truncation order");
    const cplx c0 = terms_.front().coefficient;
    GenPowerSeries r(t);
    for (size_t i = 1; i < terms_.size(); ++i)
        r.add_term(terms_[i].exponent, -terms_[i].coefficient / c0);
    GenPowerSeries out = monomial(0.0, 1.0, t), power = out;
    while (true) {
        power = power * r;
        power.truncation_ = t;
        power.drop_truncated();
        if (power.terms_.empty())
            break;
        out = out + power;
    }
    return out * (1.0 / c0);
}

nlohmann::json GenPowerSeries::to_json() const
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& t : terms_)
        a.push_back({{"exponent", t.exponent}, {"re", t.coefficient.real()}, {"im", t.coefficient.imag()}});
    return a;
}

GenPowerSeries GenPowerSeries::from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw DomainError("series JSON must be an array of {exponent, re, im}");
    GenPowerSeries s;
    for (const auto& e : j)
        s.add_term(e.at("exponent").get<double>(), {e.at("re").get<double>(), e.at("im").get<double>()});
    return s;
}

cplx TraceAsymptotics::evaluate(cplx mu) const
{
    cplx s = 0.0, inv = 1.0 / mu;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        s = (s + *it) * inv;
    return s;
}

GenPowerSeries TraceAsymptotics::series() const
{
    GenPowerSeries s(-double(a.size()) - 1.0);
    for (size_t k = 0; k < a.size(); ++k)
        s.add_term(-double(k) - 1.0, a[k]);
    return s;
}

TraceAsymptotics trace_d_coefficients(double g, int sigma, int K)
{
    if (K < 1 || K > 20)
        throw DomainError(fmt::format("K = {} outside 1..20", K));
    if (sigma != 1 && sigma != -1)
        throw DomainError("sigma must be +1 or -1");
    const double nu = g - 0.5;
    // J'/J on the ray from (P - i sigma Q) and its derivative: q = T / S in w = -i sigma / (2 mu)
    std::vector<double> S(K), T(K, 0.0), q(K, 0.0);
    for (int k = 0; k < K; ++k) {
        S[k] = specfun::hankel_symbol(nu, k);
        if (k > 0)
            T[k] = (2.0 * k - 1.0) * specfun::hankel_symbol(nu, k - 1);
    }
    for (int n = 1; n < K; ++n) {
        double v = T[n];
        for (int j = 1; j <= n; ++j)
            v -= S[j] * q[n - j];
        q[n] = v / S[0];
    }
    TraceAsymptotics r{g, sigma, std::vector<cplx>(K)};
    const cplx step(0.0, -0.5 * sigma);
    cplx w = step;
    r.a[0] = cplx(0.0, 0.5 * sigma);
    for (int k = 2; k <= K; ++k) {
        w = w * step;
        r.a[k - 1] = -q[k - 1] * w;
        if (k == 2)
            r.a[1] += (2.0 * g - 1.0) / 4.0;
    }
    return r;
}

namespace {

void check_tau_pre(const ExtensionParams& ext, int sigma)
{
    if (ext.is_half())
        throw DomainError("tau expansion needs g in (1/2, 3/2)");
    if (ext.is_dirichlet())
        throw DomainError("tau expansion needs alpha != 0");
    if (sigma != 1 && sigma != -1)
        throw DomainError("sigma must be +1 or -1");
}

} // namespace

GenPowerSeries tau_series(const ExtensionParams& ext, int sigma, int K)
{
    check_tau_pre(ext, sigma);
    if (K < 0)
        throw DomainError("K must be non-negative");
    const double nu = ext.nu(), r = rho(ext);
    if (r == 0.0)
        return GenPowerSeries::monomial(0.0, 1.0);
    const cplx q = std::polar(1.0, sigma * pi * nu) * r;
    GenPowerSeries s(-2.0 * nu * (K + 1));
    cplx c = 1.0;
    for (int k = 0; k <= K; ++k) {
        s.add_term(-2.0 * nu * k, c);
        c *= q;
    }
    return s;
}

GenPowerSeries general_trace_series(const ExtensionParams& ext, int sigma, int K)
{
    GenPowerSeries a = trace_d_coefficients(ext.g(), sigma, K).series();
    if (ext.is_dirichlet())
        return a;
    check_tau_pre(ext, sigma);
    // Tr G_D - Tr G_N = (2g-1)/(2 mu^2) up to exponentially small terms on the rays
    GenPowerSeries diff = GenPowerSeries::monomial(-2.0, (2.0 * ext.g() - 1.0) / 2.0);
    return a - tau_series(ext, sigma, K) * diff;
}

} // namespace sspec::asympt
