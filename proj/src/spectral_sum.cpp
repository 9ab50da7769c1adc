#include "sspec/spectral_sum.hpp"

#include <cmath>
#include <fmt/format.h>

#include "sspec/quadrature.hpp"

namespace sspec {

namespace {

// psi = arg(P + iQ) and its derivative, from the Hankel series at real mu.
void hankel_phase(double nu, double mu, double& psi, double& dpsi)
{
    const double mu4 = 4.0 * nu * nu;
    cplx w = cplx(0.0, 1.0) / (2.0 * mu);
    cplx term = 1.0, s = 1.0, ds = 0.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= (mu4 - double(2 * k - 1) * double(2 * k - 1)) / (4.0 * k) * w;
        double mag = std::abs(term);
        if (mag == 0.0 || mag > last)
            break;
        s += term;
        ds += -double(k) / mu * term;
        last = mag;
        if (mag < 1e-18)
            break;
    }
    psi = std::arg(s);
    dpsi = (ds / s).imag();
}

} // namespace

CountingModel::CountingModel(const EigenvalueTable& table) : nu_(table.ext.nu())
{
    if (table.entries.empty())
        throw DomainError("counting model needs a non-empty eigenvalue table");
    const ExtensionParams& e = table.ext;
    if (e.is_half())
        kind_ = e.is_dirichlet() ? Kind::dirichlet : Kind::half;
    else if (e.is_dirichlet())
        kind_ = Kind::dirichlet;
    else if (e.is_neumann())
        kind_ = Kind::neumann;
    else
        kind_ = Kind::general;
    if (kind_ == Kind::general)
        rho_ = rho(e);
    if (kind_ == Kind::half)
        beta_over_alpha_ = e.beta_over_alpha();

    anchor_index_ = table.entries.back().index;
    anchor_mu_ = std::sqrt(table.entries.back().lambda);
    if (anchor_mu_ < 25.0)
        throw DomainError(fmt::format("counting model needs the last explicit eigenvalue above 625 (got {})",
                                      anchor_mu_ * anchor_mu_));
    double raw = anchor_index_ - (phase(anchor_mu_)) / pi;
    offset_ = std::round(raw);
    defect_ = std::abs(raw - offset_);
    if (defect_ > 1e-6)
        throw NumericalError(fmt::format("counting model offset is not an integer (defect {})", defect_));
}

double CountingModel::phase(double mu) const
{
    double psi, dpsi;
    hankel_phase(nu_, mu, psi, dpsi);
    double theta = mu - pi / 4.0 + psi;
    double phi = 0.0;
    switch (kind_) {
    case Kind::dirichlet: phi = nu_ * pi / 2.0 + pi / 2.0; break;
    case Kind::neumann: phi = pi / 2.0 - nu_ * pi / 2.0; break;
    case Kind::general: {
        double a = std::pow(mu, 2.0 * nu_);
        phi = std::atan2(std::cos(nu_ * pi / 2.0) * (a - rho_), std::sin(nu_ * pi / 2.0) * (a + rho_));
        break;
    }
    case Kind::half: {
        double th = std::log(2.0) - euler_gamma - beta_over_alpha_;
        phi = std::atan(2.0 / pi * (std::log(mu) - th));
        break;
    }
    }
    return theta - phi;
}

double CountingModel::phase_derivative(double mu) const
{
    double psi, dpsi;
    hankel_phase(nu_, mu, psi, dpsi);
    double dphi = 0.0;
    if (kind_ == Kind::general) {
        double a = std::pow(mu, 2.0 * nu_), da = 2.0 * nu_ * a / mu;
        double y = std::cos(nu_ * pi / 2.0) * (a - rho_), x = std::sin(nu_ * pi / 2.0) * (a + rho_);
        double dy = std::cos(nu_ * pi / 2.0) * da, dx = std::sin(nu_ * pi / 2.0) * da;
        dphi = (x * dy - y * dx) / (x * x + y * y);
    } else if (kind_ == Kind::half) {
        double th = std::log(2.0) - euler_gamma - beta_over_alpha_;
        double u = 2.0 / pi * (std::log(mu) - th);
        dphi = 2.0 / (pi * mu) / (1.0 + u * u);
    }
    return dpsi - dphi;
}

double CountingModel::count(double mu) const { return phase(mu) / pi + offset_; }
double CountingModel::density(double mu) const { return (1.0 + phase_derivative(mu)) / pi; }
double CountingModel::density_correction(double mu) const { return phase_derivative(mu) / pi; }

double CountingModel::mu_of(double n) const
{
    double mu = std::max(anchor_mu_ * 0.5, pi * (n - offset_) + pi / 4.0);
    for (int it = 0; it < 60; ++it) {
        double step = (count(mu) - n) / density(mu);
        mu -= step;
        if (std::abs(step) < 1e-15 * mu)
            return mu;
    }
    throw NumericalError(fmt::format("counting model inversion failed at n = {}", n));
}

SpectralSum spectral_sum(const EigenvalueTable& table, const std::function<cplx(double)>& f_mu,
                         const std::function<cplx(double)>& main_integral)
{
    cplx expl = 0.0;
    for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it)
        expl += f_mu(std::sqrt(it->lambda));

    CountingModel model(table);
    const double N = model.anchor_index();
    const double a = model.anchor_mu();
    auto fn = [&](double n) { return f_mu(model.mu_of(n)); };
    cplx f0 = f_mu(a);
    const double h = 0.25;
    cplx fp1 = fn(N + h), fm1 = fn(N - h), fp2 = fn(N + 2 * h), fm2 = fn(N - 2 * h);
    cplx d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    cplx d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);

    cplx main = main_integral(a);
    double scale = std::max(std::abs(main), std::abs(f0));
    cplx corr = 0.0;
    if (scale > 0.0) {
        auto integrand = [&](double mu) { return f_mu(mu) * model.density_correction(mu); };
        corr = quad::integrate_to_infinity(integrand, a, 1e-17 * scale, 1e-13).value;
    }
    cplx tail = main + corr - 0.5 * f0 - d1 / 12.0 + d3 / 720.0;
    return {expl + tail, expl, tail};
}

} // namespace sspec
