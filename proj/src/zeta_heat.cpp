#include "sspec/zeta_heat.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sspec/asympt.hpp"
#include "sspec/quadrature.hpp"
#include "sspec/resolvent.hpp"
#include "sspec/specfun.hpp"
#include "sspec/spectral_sum.hpp"

namespace sspec::zeta_heat {

const char* kind_name(PoleKind k) { return k == PoleKind::regular ? "regular" : "anomalous"; }
const char* method_name(PoleMethod m) { return m == PoleMethod::formula ? "formula" : "numeric"; }

nlohmann::json PoleReport::to_json() const
{
    nlohmann::json j = {{"s0", s0}, {"residue", residue}, {"kind", kind_name(kind)}, {"k", k},
                        {"method", method_name(method)}};
    if (method == PoleMethod::numeric)
        j["error"] = error;
    return j;
}

nlohmann::json HeatExpansion::to_json() const
{
    nlohmann::json t = nlohmann::json::array();
    for (const auto& h : terms)
        t.push_back({{"k", h.k}, {"exponent", h.exponent}, {"coefficient", h.coefficient},
                     {"gamma_pole", h.gamma_pole}, {"limit", h.limit}});
    return {{"constant", constant}, {"terms", t}};
}

namespace {

cplx theta_term(double lambda_minus, cplx s)
{
    // principal branch, lambda_- = |lambda_-| e^{i pi}
    return std::exp(-s * std::log(-lambda_minus)) * std::exp(cplx(0.0, -pi) * s);
}

double anomalous_residue(double nu, double r, int k)
{
    return -nu * std::pow(r, k) / pi * std::sin(pi * nu * k);
}

bool has_anomalous(const ExtensionParams& ext) { return !ext.is_half() && !ext.is_dirichlet(); }

} // namespace

ZetaSum zeta_sum(const EigenvalueTable& table, cplx s)
{
    if (!(s.real() > 0.5))
        throw DomainError(fmt::format("zeta_sum needs Re s > 1/2 (s = {})", s.real()));
    SpectralSum sum = spectral_sum(
        table, [&](double mu) { return std::exp(-2.0 * s * std::log(mu)); },
        [&](double a) { return std::exp((1.0 - 2.0 * s) * std::log(a)) / (pi * (2.0 * s - 1.0)); });
    cplx neg = table.negative ? theta_term(*table.negative, s) : cplx(0.0);
    return {sum.value + neg, neg, s.real() < 0.51};
}

ZetaSum zeta_sum(const ExtensionParams& ext, cplx s, int n_explicit)
{
    return zeta_sum(eigenvalues(ext, n_explicit), s);
}

std::vector<PoleReport> pole_table(const ExtensionParams& ext, int K)
{
    std::vector<PoleReport> out;
    asympt::TraceAsymptotics a = asympt::trace_d_coefficients(ext.g(), 1, std::min(K, 20));
    for (int k = 1; k <= std::min(K, 20); ++k)
        out.push_back({1.0 - 0.5 * k, a.a[k - 1].imag() / pi, PoleKind::regular, k, PoleMethod::formula});
    if (has_anomalous(ext)) {
        const double nu = ext.nu(), r = rho(ext);
        for (int k = 1; k <= K; ++k)
            out.push_back({-nu * k, anomalous_residue(nu, r, k), PoleKind::anomalous, k, PoleMethod::formula});
    }
    return out;
}

namespace {

struct ContourModel {
    ExtensionParams ext;
    ExtensionParams dir;
    ZetaOptions opt;
    double nu;
    double r = 0.0;                 // rho, general extensions
    double theta = 0.0;             // g = 1/2 theta-extensions
    enum class Tail { none, tau, log } tail = Tail::none;
    asympt::TraceAsymptotics a_up, a_dn;
    double a_next = 0.0;            // |A_{K+1}|, for the error estimate
    double r0;
    std::optional<double> lambda_minus;
};

ContourModel make_model(const ExtensionParams& ext, const ZetaOptions& opt)
{
    if (opt.n_subtract < 1 || opt.n_subtract > 19)
        throw DomainError("n_subtract must lie in 1..19");
    ContourModel m{ext,
                   ExtensionParams::dirichlet(ext.g()),
                   opt,
                   ext.nu(),
                   0.0,
                   0.0,
                   ContourModel::Tail::none,
                   asympt::trace_d_coefficients(ext.g(), 1, opt.n_subtract),
                   asympt::trace_d_coefficients(ext.g(), -1, opt.n_subtract),
                   0.0,
                   1.0,
                   std::nullopt};
    m.a_next = std::abs(asympt::trace_d_coefficients(ext.g(), 1, opt.n_subtract + 1).a.back());
    if (ext.is_half() && !ext.is_dirichlet()) {
        m.tail = ContourModel::Tail::log;
        m.theta = *ext.theta();
    } else if (!ext.is_dirichlet()) {
        m.tail = ContourModel::Tail::tau;
        m.r = rho(ext);
    }
    EigenvalueTable t = eigenvalues(ext, 1);
    double l1 = t.first_positive();
    if (opt.mode == ZetaMode::difference)
        l1 = std::min(l1, eigenvalues(m.dir, 1).first_positive());
    m.r0 = std::min(1.0, 0.5 * l1);
    m.lambda_minus = t.negative;
    return m;
}

std::vector<double> singular_points(const ContourModel& m)
{
    std::vector<double> p;
    if (m.opt.mode == ZetaMode::full)
        for (int k = 1; k <= m.opt.n_subtract; ++k)
            p.push_back(1.0 - 0.5 * k);
    if (m.tail != ContourModel::Tail::none)
        p.push_back(0.0);
    if (m.tail == ContourModel::Tail::tau && m.r != 0.0)
        for (int k = 1; k <= 400; ++k)
            p.push_back(-m.nu * k);
    return p;
}

cplx trace_exact(const ContourModel& m, cplx mu)
{
    SpectralPoint p = SpectralPoint::from_mu(mu);
    cplx t = resolvent::trace_closed(m.ext, p).trace;
    if (m.opt.mode == ZetaMode::difference)
        t -= resolvent::trace_closed(m.dir, p).trace;
    return t;
}

cplx trace_at_lambda(const ContourModel& m, cplx lambda)
{
    SpectralPoint p = SpectralPoint::from_lambda(lambda);
    cplx t = resolvent::trace_closed(m.ext, p).trace;
    if (m.opt.mode == ZetaMode::difference)
        t -= resolvent::trace_closed(m.dir, p).trace;
    return t;
}

// Exact large-mu form of the extension-dependent part on the ray mu e^{i sigma pi/4}, mu real.
cplx tail_part(const ContourModel& m, int sigma, double mu)
{
    switch (m.tail) {
    case ContourModel::Tail::tau: {
        cplx q = m.r * std::polar(1.0, sigma * pi * m.nu / 2.0) * std::pow(mu, -2.0 * m.nu);
        return cplx(0.0, sigma * m.nu) / (mu * mu * (1.0 - q));
    }
    case ContourModel::Tail::log: {
        cplx a(m.theta, sigma * pi / 4.0);
        return cplx(0.0, -sigma) / (mu * mu * 2.0 * (a - std::log(mu)));
    }
    case ContourModel::Tail::none: break;
    }
    return 0.0;
}

cplx a_part(const ContourModel& m, int sigma, double mu)
{
    if (m.opt.mode == ZetaMode::difference)
        return 0.0;
    const auto& a = sigma > 0 ? m.a_up : m.a_dn;
    return a.evaluate(std::polar(mu, sigma * pi / 4.0));
}

struct Piece {
    cplx value = 0.0;
    double error = 0.0;
    void add(const quad::Result& r)
    {
        value += r.value;
        error += r.error;
    }
};

// int_{mu_a}^inf mu^{1-2s} tail_part dmu
cplx tail_readd(const ContourModel& m, int sigma, double s, double& error)
{
    const double mua = m.opt.mu_split;
    if (m.tail == ContourModel::Tail::log) {
        cplx a(m.theta, sigma * pi / 4.0);
        return cplx(0.0, sigma / 2.0) * std::exp(-2.0 * s * a) *
               specfun::expint_e1(2.0 * s * (std::log(mua) - a));
    }
    if (m.tail != ContourModel::Tail::tau)
        return 0.0;
    cplx v = 0.0;
    double mu1 = mua;
    if (m.r != 0.0)
        mu1 = std::max(mua, std::pow(2.0 * std::abs(m.r), 1.0 / (2.0 * m.nu)));
    if (mu1 > mua) {
        // in u = log mu
        auto f = [&](double u) {
            double mu = std::exp(u);
            return std::exp((2.0 - 2.0 * s) * u) * tail_part(m, sigma, mu);
        };
        quad::Result r = quad::integrate(f, std::log(mua), std::log(mu1), 1e-15, 1e-13);
        v += r.value;
        error += r.error;
    }
    // geometric series beyond mu1, |q(mu1)| <= 1/2
    const cplx step = m.r * std::polar(1.0, sigma * pi * m.nu / 2.0);
    cplx c(0.0, sigma * m.nu);
    const double lmu1 = std::log(mu1);
    for (int k = 0; k < 400; ++k) {
        cplx term = c * std::exp((-2.0 * s - 2.0 * m.nu * k) * lmu1) / (2.0 * s + 2.0 * m.nu * k);
        v += term;
        if (m.r == 0.0 || (k > 3 && std::abs(term) < 1e-18 * std::abs(v)))
            break;
        c *= step;
    }
    return v;
}

} // namespace

ZetaIntegral zeta_integral(const ExtensionParams& ext, double s, const ZetaOptions& opt)
{
    if (!std::isfinite(s))
        throw DomainError("s must be finite");
    if (opt.mode == ZetaMode::difference && ext.is_dirichlet())
        return {0.0, 0.0};
    ContourModel m = make_model(ext, opt);
    if (opt.mode == ZetaMode::full && !(s > 0.5 * (1.0 - opt.n_subtract)))
        throw DomainError(fmt::format("s = {} below the continuation limit {} for n_subtract = {}", s,
                                      0.5 * (1.0 - opt.n_subtract), opt.n_subtract));
    for (double p : singular_points(m))
        if (std::abs(s - p) < 1e-3)
            throw DomainError(fmt::format("s = {} is within 1e-3 of the pole at {}; use residue_numeric", s, p));

    const double mua = opt.mu_split, mumax = opt.mu_max;
    Piece total;
    // arc |lambda| = r0 through the positive axis
    {
        auto f = [&](double phi) {
            return std::exp(cplx(0.0, (1.0 - s) * phi)) * trace_at_lambda(m, std::polar(m.r0, phi));
        };
        quad::Result r = quad::integrate(f, -pi / 2.0, pi / 2.0, 1e-15, 1e-13);
        cplx pre = std::pow(m.r0, 1.0 - s) / (2.0 * pi);
        total.value += pre * r.value;
        total.error += std::abs(pre) * r.error;
    }
    for (int sigma : {1, -1}) {
        Piece ray;
        const cplx rot = std::polar(1.0, sigma * pi / 4.0);
        auto exact = [&](double mu) { return std::pow(mu, 1.0 - 2.0 * s) * trace_exact(m, rot * mu); };
        ray.add(quad::integrate(exact, std::sqrt(m.r0), mua, 1e-15, 1e-13));
        auto rest = [&](double mu) {
            cplx t = trace_exact(m, rot * mu) - a_part(m, sigma, mu) - tail_part(m, sigma, mu);
            return std::pow(mu, 1.0 - 2.0 * s) * t;
        };
        // beyond mu_top the subtracted integrand is below the rounding level of the trace itself;
        // what is left there is bounded by the first omitted A term
        const double K = opt.n_subtract;
        // difference mode: the remainder decays like exp(-sqrt(2) mu) and is below rounding past mu_split
        double mutop = mua;
        if (opt.mode == ZetaMode::full)
            mutop = std::clamp(std::pow(2e16 * std::max(m.a_next, 1e-300), 1.0 / K), mua, mumax);
        if (mutop > mua)
            // the subtraction leaves rounding noise of size eps |mu^{1-2s} T|
            ray.add(quad::integrate(rest, mua, mutop, std::max(1e-13, 1e-15 * std::pow(mutop, 1.0 - 2.0 * s)), 1e-12));
        if (opt.mode == ZetaMode::full) {
            const auto& a = sigma > 0 ? m.a_up : m.a_dn;
            for (int k = 1; k <= opt.n_subtract; ++k)
                ray.value += a.a[k - 1] * std::polar(1.0, -sigma * pi * k / 4.0) *
                             std::pow(mua, 2.0 - 2.0 * s - k) / (2.0 * s + k - 2.0);
            ray.error += m.a_next * std::pow(mutop, 1.0 - 2.0 * s - K) / std::max(2.0 * s + K - 1.0, 1e-3);
        }
        ray.value += tail_readd(m, sigma, s, ray.error);
        cplx pre = std::exp(cplx(0.0, -sigma * pi * s / 2.0)) / pi;
        total.value += pre * ray.value;
        total.error += ray.error / pi;
    }
    if (m.lambda_minus)
        total.value += theta_term(*m.lambda_minus, s);
    return {total.value, total.error};
}

PoleReport residue_numeric(const ExtensionParams& ext, double s0, const ZetaOptions& opt, double h)
{
    if (!(h > 0.0))
        throw DomainError("h must be positive");
    const bool full = opt.mode == ZetaMode::full;
    std::vector<PoleReport> poles = pole_table(ext, 400);
    PoleReport out{s0, 0.0, PoleKind::anomalous, 0, PoleMethod::numeric};
    bool hit_regular = false, hit_anomalous = false;
    std::vector<double> others;
    for (const auto& p : poles) {
        if (p.kind == PoleKind::regular && (!full || p.k > opt.n_subtract))
            continue;
        if (p.residue == 0.0)
            continue;
        if (std::abs(p.s0 - s0) < 1e-9) {
            (p.kind == PoleKind::regular ? hit_regular : hit_anomalous) = true;
            out.kind = p.kind;
            out.k = p.k;
        } else {
            others.push_back(p.s0);
        }
    }
    if (ext.is_half() && !ext.is_dirichlet() && std::abs(s0) > 1e-9)
        others.push_back(0.0);   // logarithmic branch point
    if (hit_regular && hit_anomalous)
        throw DomainError(fmt::format("regular and anomalous poles coincide at s = {}; use the difference mode", s0));
    for (double p : others)
        if (std::abs(p - s0) < 2.0 * h - 1e-9)
            throw DomainError(fmt::format("another singularity at s = {} lies within 2h = {} of s0 = {}; use a smaller h",
                                          p, 2.0 * h, s0));
    const int J = 5;
    double T[J][J];
    for (int j = 0; j < J; ++j) {
        const double d = h * std::ldexp(1.0, -j);
        cplx zp = zeta_integral(ext, s0 + d, opt).value, zm = zeta_integral(ext, s0 - d, opt).value;
        T[j][0] = (0.5 * d * (zp - zm)).real();
        for (int m = 1; m <= j; ++m)
            T[j][m] = T[j][m - 1] + (T[j][m - 1] - T[j - 1][m - 1]) / (std::ldexp(1.0, 2 * m) - 1.0);
    }
    out.residue = T[J - 1][J - 1];
    out.error = std::abs(T[J - 1][J - 1] - T[J - 2][J - 2]);
    return out;
}

HeatTrace heat_trace(const ExtensionParams& ext, double t, int n_explicit)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("t must be positive");
    HeatTrace out{0.0, false, n_explicit};
    const bool automatic = n_explicit <= 0;
    if (automatic) {
        out.n_explicit = int(std::ceil(std::sqrt(40.0 / t) / pi)) + 3;
        if (out.n_explicit > 20000)
            throw DomainError(fmt::format("t = {} needs {} explicit eigenvalues (budget 20000)", t, out.n_explicit));
    }
    EigenvalueTable table = eigenvalues(ext, out.n_explicit);
    if (automatic) {
        double sum = 0.0;
        for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it)
            sum += std::exp(-t * it->lambda);
        out.value = sum;
    } else {
        const double rt = std::sqrt(t);
        SpectralSum s = spectral_sum(
            table, [&](double mu) { return cplx(std::exp(-t * mu * mu)); },
            [&](double a) { return cplx(std::erfc(a * rt) / (2.0 * std::sqrt(pi * t))); });
        out.value = s.value.real();
    }
    if (table.negative)
        out.value += std::exp(-t * *table.negative);
    if (table.zero_mode) {
        out.value += 1.0;
        out.zero_mode = true;
    }
    return out;
}

double heat_difference(const ExtensionParams& ext, double t, int n_explicit)
{
    return heat_trace(ext, t, n_explicit).value - heat_trace(ExtensionParams::dirichlet(ext.g()), t, n_explicit).value;
}

HeatExpansion heat_expansion(const ExtensionParams& ext, int K)
{
    if (ext.is_half())
        throw DomainError("heat_expansion needs g != 1/2");
    if (ext.is_dirichlet())
        throw DomainError("heat_expansion needs alpha != 0 (the D-extension is the reference)");
    const double nu = ext.nu(), r = rho(ext);
    HeatExpansion out{nu, {}};
    for (int k = 1; k <= K; ++k) {
        const double x = nu * k;
        const bool pole = std::abs(x - std::round(x)) < 1e-12;
        const double rk = std::pow(r, k);
        HeatTerm term{k, x, 0.0, pole, nu * rk / std::tgamma(1.0 + x)};
        if (!pole)
            term.coefficient = -std::tgamma(-x) * (nu / pi) * rk * std::sin(pi * x);
        out.terms.push_back(term);
    }
    return out;
}

double heat_coeff_from_residue(const PoleReport& pole)
{
    if (pole.s0 <= 0.0 && std::abs(pole.s0 - std::round(pole.s0)) < 1e-12)
        return 0.0;
    return std::tgamma(pole.s0) * pole.residue;
}

ScalingReport scaling_check(const ExtensionParams& ext, double c, int K, double s, int n_explicit)
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("scaling factor must be positive");
    if (ext.is_half() && !ext.is_dirichlet())
        throw DomainError("scaling_check at g = 1/2 supports the D-extension only");
    ExtensionParams scaled = scale_extension(ext, c);
    ScalingReport rep{c, 0.0, {}, 0.0, s, 0.0, 0.0, 0.0};
    const double g = ext.g(), nu = ext.nu();
    if (has_anomalous(ext)) {
        const double r = rho(ext), r2 = rho(scaled);
        for (int k = 1; k <= K; ++k) {
            if (r == 0.0) {
                rep.rho_law_error = std::max(rep.rho_law_error, std::abs(r2));
                rep.residue_ratios.push_back(r2 == 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            double law = std::pow(r2, k) * std::pow(c, (1.0 - 2.0 * g) * k) / std::pow(r, k);
            rep.rho_law_error = std::max(rep.rho_law_error, std::abs(law - 1.0));
            double res = anomalous_residue(nu, r, k), res2 = anomalous_residue(nu, r2, k);
            double expect = std::pow(c, (2.0 * g - 1.0) * k) * res;
            rep.residue_ratios.push_back(expect == 0.0 ? (res2 == 0.0 ? 1.0 : 0.0) : res2 / expect);
        }
        for (double q : rep.residue_ratios)
            rep.residue_law_error = std::max(rep.residue_law_error, std::abs(q - 1.0));
    }
    // the operator on (0, L), L = 1/c, is L^{-2} times the operator on (0,1) with rho_eff = rho' L^{2 nu}
    const double L = 1.0 / c;
    ExtensionParams eff = has_anomalous(ext) ? ExtensionParams::from_rho(g, rho(scaled) * std::pow(L, 2.0 * nu))
                                             : ExtensionParams::dirichlet(g);
    rep.zeta_scaled = std::pow(L, 2.0 * s) * zeta_sum(eff, s, n_explicit).value;
    rep.zeta_expected = std::pow(c, -2.0 * s) * zeta_sum(ext, s, n_explicit).value;
    rep.zeta_error = std::abs(rep.zeta_scaled - rep.zeta_expected) / std::abs(rep.zeta_expected);
    return rep;
}

} // namespace sspec::zeta_heat
