#include "sspec/verify.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "sspec/asympt.hpp"
#include "sspec/quadrature.hpp"
#include "sspec/resolvent.hpp"
#include "sspec/specfun.hpp"
#include "sspec/spectrum.hpp"
#include "sspec/zeta_heat.hpp"

namespace sspec::verify {

nlohmann::json Check::to_json() const
{
    return {{"name", name}, {"measured", measured}, {"tolerance", tolerance}, {"pass", pass}};
}

bool Suite::pass() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return !checks.empty();
}

nlohmann::json Suite::to_json() const
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : checks)
        a.push_back(c.to_json());
    return {{"suite", name}, {"pass", pass()}, {"checks", a}};
}

namespace {

using zeta_heat::ZetaMode;
using zeta_heat::ZetaOptions;

// error <= tol; NaN fails
void add(Suite& s, std::string name, double err, double tol) { s.checks.push_back({std::move(name), err, tol, err <= tol}); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

ZetaOptions difference_mode()
{
    ZetaOptions o;
    o.mode = ZetaMode::difference;
    return o;
}

Suite regular_residue()
{
    Suite s{"regular pole residue 1/(2 pi) at s = 1/2", {}};
    for (double g : {0.6, 0.75, 1.0}) {
        auto r = zeta_heat::residue_numeric(ExtensionParams::dirichlet(g), 0.5);
        add(s, fmt::format("g={}", g), std::abs(r.residue - 1.0 / (2.0 * pi)), 1e-5);
    }
    return s;
}

Suite anomalous_residue()
{
    Suite s{"anomalous residues, g=3/4, rho=-3", {}};
    auto e = ExtensionParams::from_rho(0.75, -3.0);
    const double r1 = 3.0 * std::sqrt(2.0) / (8.0 * pi), r2 = -9.0 / (4.0 * pi);
    add(s, "s=-1/4", std::abs(zeta_heat::residue_numeric(e, -0.25).residue / r1 - 1.0), 0.01);
    add(s, "s=-1/2 (difference mode)",
        std::abs(zeta_heat::residue_numeric(e, -0.5, difference_mode()).residue / r2 - 1.0), 0.01);
    return s;
}

Suite half_null()
{
    Suite s{"g=1/2: no anomalous poles", {}};
    for (double th : {-1.0, 0.0, 3.0})
        for (double s0 : {-0.25, -0.5}) {
            auto r = zeta_heat::residue_numeric(ExtensionParams::from_theta(th), s0, difference_mode());
            add(s, fmt::format("theta={} s={}", th, s0), std::abs(r.residue), 1e-6);
        }
    return s;
}

Suite heat_fit()
{
    Suite s{"heat trace difference: constant and t^(g-1/2) coefficient", {}};
    const int n = 41, degree = 9;
    for (double g : {0.6, 0.75, 1.1})
        for (double ba : {-1.0, 0.5}) {
            auto ext = ExtensionParams::from_ab(g, 1.0, ba);
            const double nu = g - 0.5, xm = std::pow(1e-2, nu);
            // polynomial in x = t^nu, the natural variable of the expansion
            Eigen::MatrixXd A(n, degree + 1);
            Eigen::VectorXd b(n);
            int n_max = 0;
            for (int i = 0; i < n; ++i) {
                double t = std::pow(10.0, -3.0 + i / double(n - 1));
                double x = std::pow(t, nu) / xm;
                for (int k = 0; k <= degree; ++k)
                    A(i, k) = std::pow(x, k);
                b(i) = zeta_heat::heat_difference(ext, t);
                n_max = std::max(n_max, zeta_heat::heat_trace(ext, t).n_explicit);
            }
            Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
            const double want = -ba * std::pow(2.0, 2.0 * g - 1.0) / std::tgamma(0.5 - g);
            const std::string tag = fmt::format("g={} beta/alpha={}", g, ba);
            add(s, tag + " constant", std::abs(c(0) / nu - 1.0), 0.02);
            add(s, tag + " first coefficient", std::abs(c(1) / xm / want - 1.0), 0.05);
            add(s, tag + " explicit eigenvalues", n_max, 20000);
        }
    return s;
}

Suite trace_triangulation()
{
    Suite s{"trace triangulation: closed form, kernel quadrature, spectral sum", {}};
    for (double g : {0.6, 0.75, 1.0, 1.3}) {
        for (const auto& ext : {ExtensionParams::dirichlet(g), ExtensionParams::from_ab(g, 1.0, -0.7),
                                ExtensionParams::from_ab(g, 1.0, 2.0)}) {
            EigenvalueTable table = eigenvalues(ext, 2000);
            double worst = 0.0;
            for (double lam : {-1.0, -10.0, -100.0}) {
                auto p = SpectralPoint::from_lambda(lam);
                cplx c = resolvent::trace_closed(ext, p).trace;
                cplx q = resolvent::trace_quadrature(ext, p).trace;
                cplx t = resolvent::trace_spectral(table, p).trace;
                worst = std::max({worst, rel(q, c), rel(t, c), rel(t, q)});
            }
            add(s, ext.describe(), worst, 1e-8);
        }
    }
    return s;
}

Suite asymptotic_coefficients()
{
    Suite s{"asymptotic coefficients A_1..A_4 and the K=4 remainder", {}};
    const cplx I(0.0, 1.0);
    for (double g : {0.6, 0.75, 1.0, 1.3}) {
        for (int sigma : {1, -1}) {
            auto t = asympt::trace_d_coefficients(g, sigma, 4);
            const cplx want[4] = {I * double(sigma) / 2.0, g / 2.0, -I * double(sigma) * g * (g - 1.0) / 4.0,
                                  g * (g - 1.0) / 4.0};
            double err = 0.0;
            for (int k = 0; k < 4; ++k)
                err = std::max(err, std::abs(t.a[k] - want[k]) / std::max(1.0, std::abs(want[k])));
            add(s, fmt::format("A_1..A_4 g={} sigma={} (rounding)", g, sigma), err, 4.0 * 2.2e-16);
        }
    }
    for (int sigma : {1, -1}) {
        auto h = asympt::trace_d_coefficients(0.5, sigma, 4);
        const double sg = sigma;
        const cplx want[4] = {I * sg / 2.0, 0.25, I * sg / 16.0, -1.0 / 16.0};
        double err = 0.0;
        for (int k = 0; k < 4; ++k)
            err = std::max(err, std::abs(h.a[k] - want[k]));
        add(s, fmt::format("A_k(1/2, {})", sigma), err, 0.0);
    }
    for (double g : {0.75, 1.3}) {
        auto t = asympt::trace_d_coefficients(g, 1, 4);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = 11;
        for (int i = 0; i < n; ++i) {
            double m = 10.0 * std::pow(10.0, i / double(n - 1));
            cplx mu = std::polar(m, pi / 4.0);
            double x = std::log(m), y = std::log(std::abs(resolvent::trace_d(g, mu) - t.evaluate(mu)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        add(s, fmt::format("remainder slope g={} (slope {:.4f})", g, slope), std::abs(slope + 5.0), 0.2);
    }
    return s;
}

Suite spectrum_structure()
{
    Suite s{"spectrum: interlacing, zero mode, negative eigenvalue", {}};
    for (double g : {0.6, 0.75, 1.0, 1.4})
        for (double ba : {-2.0, 0.3, 1.0, 1.7}) {
            auto ext = ExtensionParams::from_ab(g, 1.0, ba);
            auto t = eigenvalues(ext, 300);
            auto z = bessel_zeros(g - 0.5, 302);
            const bool first = !t.zero_mode && ba < 1.0;
            int bad = 0;
            for (size_t i = 0; i < t.entries.size(); ++i) {
                double mu = std::sqrt(t.entries[i].lambda);
                double lo = first ? (i == 0 ? 0.0 : z[i - 1]) : z[i];
                double hi = first ? z[i] : z[i + 1];
                if (!(mu > lo && mu < hi))
                    ++bad;
            }
            add(s, fmt::format("interlacing g={} beta/alpha={}", g, ba), bad, 0);
        }
    for (double g : {0.6, 0.75, 1.3}) {
        int bad = 0;
        for (double ba : {0.5, 0.999, 1.0, 1.001, 1.2})
            if (eigenvalues(ExtensionParams::from_ab(g, 1.0, ba), 2).zero_mode != (ba == 1.0))
                ++bad;
        add(s, fmt::format("zero mode iff alpha=beta, g={}", g), bad, 0);
    }
    int bad = 0;
    double prev = 0.0;
    for (double ba : {0.5, 1.2, 5.0}) {
        auto t = eigenvalues(ExtensionParams::from_ab(0.75, 1.0, ba), 2);
        if (t.negative.has_value() != (ba > 1.0))
            ++bad;
        if (t.negative) {
            if (!(*t.negative < prev))
                ++bad;
            prev = *t.negative;
        }
    }
    add(s, "negative eigenvalue iff beta/alpha > 1, decreasing (g=3/4)", bad, 0);
    return s;
}

Suite scaling()
{
    Suite s{"scaling covariance", {}};
    for (const auto& ext : {ExtensionParams::from_rho(0.75, 2.0), ExtensionParams::from_ab(1.3, 1.0, -0.7),
                            ExtensionParams::from_ab(0.6, 1.0, 0.4)})
        for (double c : {0.5, 2.0}) {
            auto r = zeta_heat::scaling_check(ext, c, 5, 1.0);
            const std::string tag = fmt::format("{} c={}", ext.describe(), c);
            add(s, tag + " rho law", r.rho_law_error, 1e-12);
            add(s, tag + " residue law", r.residue_law_error, 1e-12);
            add(s, tag + " zeta(1)", r.zeta_error, 1e-7);
        }
    return s;
}

Suite special_functions()
{
    Suite s{"Bessel Wronskian and primitive identities", {}};
    for (double nu : {0.0, 0.25, -0.25, -0.1, -0.45, 0.6, 1.0}) {
        double err = 0.0;
        for (int i = 0; i < 100; ++i) {
            double x = 0.1 * std::pow(1000.0, i / 99.0);
            cplx j = specfun::bessel_j(nu, cplx(x)), y = specfun::bessel_y(nu, cplx(x));
            cplx jp = specfun::bessel_j_prime(nu, cplx(x));
            cplx yp = nu / x * y - specfun::bessel_y(nu + 1.0, cplx(x));
            err = std::max(err, std::abs((j * yp - jp * y).real() * pi * x / 2.0 - 1.0));
        }
        add(s, fmt::format("Wronskian nu={}", nu), err, 1e-10);
    }
    const std::pair<double, cplx> pairs[] = {
        {0.1, 1.0}, {0.25, 2.0}, {0.4, 5.0}, {0.25, cplx(3.0, 3.0)}, {0.45, 10.0}};
    for (const auto& [nu, mu] : pairs) {
        auto nn = quad::integrate([&](double x) { return x * std::pow(specfun::bessel_j(nu, mu * x), 2.0); }, 0.0,
                                  1.0, 1e-15, 1e-13);
        auto nm = quad::integrate(
            [&](double x) { return x * specfun::bessel_j(nu, mu * x) * specfun::bessel_j(-nu, mu * x); }, 0.0, 1.0,
            1e-15, 1e-13);
        const std::string tag = fmt::format("nu={} mu=({},{})", nu, mu.real(), mu.imag());
        add(s, "primitive J_nu^2 " + tag, rel(resolvent::primitive_nu_nu(nu, mu, 1.0), nn.value), 1e-10);
        add(s, "primitive J_nu J_-nu " + tag, rel(resolvent::primitive_nu_minus_nu(nu, mu, 1.0), nm.value), 1e-10);
        add(s, "1F2 Bessel form vs series " + tag,
            rel(resolvent::hyp1f2_bessel_form(nu, mu, 1.0), resolvent::hyp1f2_series(nu, mu, 1.0)), 1e-10);
    }
    return s;
}

} // namespace

Suite criterion(int id)
{
    switch (id) {
    case 1: return regular_residue();
    case 2: return anomalous_residue();
    case 3: return half_null();
    case 4: return heat_fit();
    case 5: return trace_triangulation();
    case 6: return asymptotic_coefficients();
    case 7: return spectrum_structure();
    case 8: return scaling();
    case 9: return special_functions();
    }
    throw DomainError(fmt::format("no acceptance criterion {}", id));
}

std::vector<Suite> invariant_suites()
{
    std::vector<Suite> out;
    out.push_back(special_functions());
    out.back().name = "specfun: " + out.back().name;

    Suite ext{"extension: rho(alpha=beta) and the scaling law", {}};
    add(ext, "rho_critical(3/4)", std::abs(rho_critical(0.75) - 1.0460496200531016), 1e-14);
    for (double c : {0.5, 3.0}) {
        auto e = ExtensionParams::from_rho(0.75, -3.0);
        add(ext, fmt::format("rho' c^(1-2g) = rho, c={}", c),
            std::abs(rho(scale_extension(e, c)) * std::pow(c, -0.5) / rho(e) - 1.0), 1e-13);
    }
    out.push_back(std::move(ext));

    Suite sp{"spectrum: interlacing and ordering", {}};
    for (double ba : {-2.0, 0.3, 1.7}) {
        auto t = eigenvalues(ExtensionParams::from_ab(0.75, 1.0, ba), 50);
        auto z = bessel_zeros(0.25, 52);
        const bool first = ba < 1.0;
        int bad = 0;
        for (size_t i = 0; i < t.entries.size(); ++i) {
            double mu = std::sqrt(t.entries[i].lambda);
            double lo = first ? (i == 0 ? 0.0 : z[i - 1]) : z[i];
            if (!(mu > lo && mu < (first ? z[i] : z[i + 1])))
                ++bad;
        }
        add(sp, fmt::format("g=0.75 beta/alpha={}", ba), bad, 0);
    }
    out.push_back(std::move(sp));

    Suite rs{"resolvent: closed form against kernel quadrature", {}};
    for (const auto& e : {ExtensionParams::from_rho(0.75, -3.0), ExtensionParams::from_theta(0.0)})
        for (cplx lam : {cplx(-10.0), cplx(5.0, 3.0)}) {
            auto p = SpectralPoint::from_lambda(lam);
            add(rs, fmt::format("{} lambda=({},{})", e.describe(), lam.real(), lam.imag()),
                rel(resolvent::trace_quadrature(e, p).trace, resolvent::trace_closed(e, p).trace), 1e-8);
        }
    out.push_back(std::move(rs));

    Suite as{"asympt: A_k(g,-1) = conj A_k(g,1)", {}};
    for (double g : {0.6, 1.3}) {
        auto up = asympt::trace_d_coefficients(g, 1, 20), dn = asympt::trace_d_coefficients(g, -1, 20);
        double err = 0.0;
        for (int k = 0; k < 20; ++k)
            err = std::max(err, std::abs(dn.a[k] - std::conj(up.a[k])));
        add(as, fmt::format("g={}", g), err, 0.0);
    }
    out.push_back(std::move(as));

    Suite zh{"zeta_heat: route agreement and heat/zeta duality", {}};
    for (const auto& e : {ExtensionParams::dirichlet(1.0), ExtensionParams::from_rho(0.75, -3.0)})
        add(zh, "zeta(1) sum vs contour " + e.describe(),
            std::abs(zeta_heat::zeta_sum(e, 1.0).value - zeta_heat::zeta_integral(e, 1.0).value), 1e-7);
    auto e = ExtensionParams::from_ab(0.75, 1.0, -0.8);
    auto x = zeta_heat::heat_expansion(e, 3);
    for (const auto& p : zeta_heat::pole_table(e, 3))
        if (p.kind == zeta_heat::PoleKind::anomalous)
            add(zh, fmt::format("anomalous k={}", p.k),
                std::abs(zeta_heat::heat_coeff_from_residue(p) - x.terms[p.k - 1].coefficient), 1e-12);
    out.push_back(std::move(zh));
    return out;
}

} // namespace sspec::verify
