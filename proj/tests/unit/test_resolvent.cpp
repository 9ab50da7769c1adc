#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sspec/quadrature.hpp"
#include "sspec/resolvent.hpp"
#include "sspec/specfun.hpp"
#include "sspec/spectral_sum.hpp"

using namespace sspec;
using namespace sspec::resolvent;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<ExtensionParams> extensions(double g)
{
    return {ExtensionParams::dirichlet(g), ExtensionParams::neumann(g), ExtensionParams::from_ab(g, 1.0, -0.7),
            ExtensionParams::from_ab(g, 1.0, 2.0)};
}

} // namespace

TEST(Resolvent, BasisOracle)
{
    Basis b = basis_solutions(0.75, 2.0, 0.5);
    EXPECT_LT(rel(b.l_d, 0.5319078768262709262), 1e-14);
    EXPECT_LT(rel(b.l_n, 0.47332654350897722594), 1e-14);
    EXPECT_LT(rel(b.r, -0.18638662737880851855), 1e-13);
    for (double g : {0.6, 0.75, 1.0, 1.4})
        for (cplx mu : {cplx(2.0), cplx(0.0, 5.0), cplx(3.0, 4.0)})
            EXPECT_EQ(basis_solutions(g, mu, 1.0).r, cplx(0.0));
}

TEST(Resolvent, WronskianOracleAndDerivative)
{
    Wronskians w = wronskians(0.75, 2.0);
    EXPECT_LT(rel(w.d, -0.17907789598574312091), 1e-14);
    for (double g : {0.6, 0.75, 1.4}) {
        for (cplx mu : {cplx(2.0), cplx(1.0, 3.0)}) {
            const double x = 0.4, h = 1e-4;
            auto at = [&](double t) { return basis_solutions(g, mu, t); };
            Basis b = at(x), bp = at(x + h), bm = at(x - h), bp2 = at(x + 2 * h), bm2 = at(x - 2 * h);
            auto d = [&](cplx Basis::*f) {
                return ((bm2.*f) - 8.0 * (bm.*f) + 8.0 * (bp.*f) - (bp2.*f)) / (12.0 * h);
            };
            cplx wd = d(&Basis::l_d) * b.r - b.l_d * d(&Basis::r);
            cplx wn = d(&Basis::l_n) * b.r - b.l_n * d(&Basis::r);
            Wronskians ex = wronskians(g, mu);
            EXPECT_LT(rel(wd, ex.d), 1e-9) << g;
            EXPECT_LT(rel(wn, ex.n), 1e-9) << g;
        }
    }
}

TEST(Resolvent, BesselRecurrenceForKernelOrders)
{
    for (double g : {0.6, 0.75, 1.0, 1.4}) {
        const double nu = g - 0.5;
        for (cplx z : {cplx(0.3), cplx(2.0), cplx(7.0, 1.0), cplx(0.0, 9.0), cplx(30.0, 5.0)}) {
            for (double n : {nu, -nu}) {
                cplx lhs = specfun::bessel_j(n - 1.0, z) + specfun::bessel_j(n + 1.0, z);
                cplx rhs = 2.0 * n / z * specfun::bessel_j(n, z);
                EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1e-300)) << n << " " << z;
            }
        }
    }
}

TEST(Resolvent, ClosedFormOracles)
{
    auto p = SpectralPoint::from_lambda(-10.0);
    EXPECT_LT(rel(trace_closed(ExtensionParams::dirichlet(0.75), p).trace, 0.11854891927762640109), 1e-13);
    EXPECT_LT(rel(trace_closed(ExtensionParams::from_rho(0.75, -3.0), p).trace, 0.1275896837265881582), 1e-13);
    // g = 1 is the free Dirichlet operator
    auto q = SpectralPoint::from_lambda(-1.0);
    double free = (1.0 / std::tanh(1.0) - 1.0) / 2.0;
    EXPECT_LT(rel(trace_closed(ExtensionParams::dirichlet(1.0), q).trace, free), 1e-12);
}

TEST(Resolvent, MixedTraceMatchesTauCombination)
{
    for (double g : {0.6, 1.4}) {
        auto ext = ExtensionParams::from_ab(g, 1.0, -0.7);
        for (cplx lam : {cplx(-3.0), cplx(5.0, 2.0), cplx(-40.0, -7.0)}) {
            auto p = SpectralPoint::from_lambda(lam);
            cplx t = tau(ext, p);
            cplx combo = (1.0 - t) * trace_d(g, p.mu) + t * trace_n(g, p.mu);
            EXPECT_LT(rel(trace_closed(ext, p).trace, combo), 1e-12);
        }
    }
}

TEST(Resolvent, Triangulation)
{
    for (double g : {0.6, 0.75, 1.0, 1.4}) {
        for (const auto& ext : extensions(g)) {
            EigenvalueTable table = eigenvalues(ext, 2000);
            for (double lam : {-1.0, -10.0, -100.0}) {
                auto p = SpectralPoint::from_lambda(lam);
                cplx c = trace_closed(ext, p).trace;
                cplx q = trace_quadrature(ext, p).trace;
                cplx s = trace_spectral(table, p).trace;
                EXPECT_LT(rel(q, c), 1e-8) << ext.describe() << " " << lam;
                EXPECT_LT(rel(s, c), 1e-8) << ext.describe() << " " << lam;
                EXPECT_LT(rel(s, q), 1e-8) << ext.describe() << " " << lam;
            }
        }
    }
}

TEST(Resolvent, ComplexSpectralParameter)
{
    auto ext = ExtensionParams::from_ab(0.75, 1.0, 2.0);
    for (cplx lam : {cplx(30.0, 5.0), cplx(-2.0, -9.0), cplx(0.0, 150.0)}) {
        auto p = SpectralPoint::from_lambda(lam);
        EXPECT_LT(rel(trace_quadrature(ext, p).trace, trace_closed(ext, p).trace), 1e-9) << lam;
    }
}

TEST(Resolvent, ResolventIdentity)
{
    for (double g : {0.6, 1.4}) {
        auto ext = ExtensionParams::from_ab(g, 1.0, 2.0);
        EigenvalueTable table = eigenvalues(ext, 2000);
        const cplx l1 = -3.0, l2(4.0, 6.0);
        const cplx k1 = std::sqrt(-l1), k2 = std::sqrt(-l2);
        auto A = [](cplx k, double a) { return std::atan(k / a) / (pi * k); };
        SpectralSum s = spectral_sum(
            table, [&](double mu) { return 1.0 / ((mu * mu - l1) * (mu * mu - l2)); },
            [&](double a) { return (A(k1, a) - A(k2, a)) / (k2 * k2 - k1 * k1); });
        cplx sum = s.value + 1.0 / ((*table.negative - l1) * (*table.negative - l2));
        cplx lhs = trace_closed(ext, SpectralPoint::from_lambda(l1)).trace -
                   trace_closed(ext, SpectralPoint::from_lambda(l2)).trace;
        EXPECT_LT(std::abs(lhs - (l1 - l2) * sum), 1e-7);
    }
}

TEST(Resolvent, KernelSymmetricAndContinuous)
{
    for (const auto& ext : {ExtensionParams::from_ab(0.75, 1.0, -0.7), ExtensionParams::from_theta(0.3)}) {
        auto p = SpectralPoint::from_lambda(cplx(-4.0, 1.0));
        for (double x : {0.1, 0.35, 0.8}) {
            for (double y : {0.05, 0.5, 0.99}) {
                EXPECT_EQ(kernel(ext, p, x, y).value, kernel(ext, p, y, x).value);
            }
            cplx a = kernel(ext, p, x, x).value;
            EXPECT_LT(std::abs(kernel(ext, p, x, x + 1e-9).value - a), 1e-7 * std::abs(a));
        }
    }
    auto p = SpectralPoint::from_lambda(-4.0);
    auto d = ExtensionParams::dirichlet(0.75);
    Basis bx = basis_solutions(0.75, p.mu, 0.3), by = basis_solutions(0.75, p.mu, 0.6);
    cplx expect = bx.l_d * by.r / wronskians(0.75, p.mu).d;
    EXPECT_LT(rel(kernel(d, p, 0.3, 0.6).value, expect), 1e-13);
    EXPECT_LT(rel(diagonal_kernel(d, p.mu, 0.3), kernel(d, p, 0.3, 0.3).value), 1e-12);
}

namespace {

cplx apply_kernel(const ExtensionParams& ext, const SpectralPoint& p, const std::function<double(double)>& f,
                  double x)
{
    auto k = [&](double y) { return kernel(ext, p, x, y).value * f(y); };
    return quad::integrate(k, 1e-12, x, 1e-16, 1e-13).value + quad::integrate(k, x, 1.0, 1e-16, 1e-13).value;
}

} // namespace

TEST(Resolvent, KernelInvertsOperator)
{
    const double g = 0.75;
    auto p = SpectralPoint::from_lambda(-4.0);
    auto f = [](double x) { return x * (1.0 - x); };
    for (const auto& ext : extensions(g)) {
        for (double x : {0.2, 0.4, 0.6, 0.8}) {
            const double h = 2e-3;
            cplx u0 = apply_kernel(ext, p, f, x);
            cplx up = apply_kernel(ext, p, f, x + h), um = apply_kernel(ext, p, f, x - h);
            cplx up2 = apply_kernel(ext, p, f, x + 2 * h), um2 = apply_kernel(ext, p, f, x - 2 * h);
            cplx d2 = (-up2 + 16.0 * up - 30.0 * u0 + 16.0 * um - um2) / (12.0 * h * h);
            cplx Du = -d2 + g * (g - 1.0) / (x * x) * u0 - p.lambda * u0;
            EXPECT_LT(std::abs(Du - f(x)), 1e-6) << ext.describe() << " " << x;
        }
    }
}

TEST(Resolvent, KernelReproducesBoundaryData)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double g : {0.75, 1.2}) {
        auto p = SpectralPoint::from_lambda(-4.0);
        for (int trial = 0; trial < 3; ++trial) {
            double a0 = u(rng), a1 = u(rng), a2 = u(rng);
            auto f = [&](double y) { return a0 + a1 * y + a2 * std::cos(3.0 * y); };
            for (int kind = 0; kind < 2; ++kind) {
                auto ext = kind == 0 ? ExtensionParams::dirichlet(g) : ExtensionParams::neumann(g);
                auto phi = [&](double x) { return apply_kernel(ext, p, f, x); };
                BoundaryFit fit = fit_boundary_coefficients(g, p.mu, phi);
                double lead = std::abs(kind == 0 ? fit.data.c1 : fit.data.c2);
                double other = std::abs(kind == 0 ? fit.data.c2 : fit.data.c1);
                EXPECT_GT(lead, 1e-6);
                EXPECT_LT(other, 1e-8 * std::max(1.0, lead)) << ext.describe();
            }
        }
    }
}

TEST(Resolvent, NearEigenvalueNamesEigenvalue)
{
    auto ext = ExtensionParams::from_ab(0.75, 1.0, -0.7);
    EigenvalueTable t = eigenvalues(ext, 3);
    double l2 = t.entries[1].lambda;
    auto p = SpectralPoint::from_lambda(l2);
    try {
        trace_closed(ext, p);
        FAIL() << "expected NearEigenvalueError";
    } catch (const NearEigenvalueError& e) {
        EXPECT_NEAR(e.nearest(), l2, 1e-9 * l2);
    }
    EXPECT_THROW(kernel(ext, p, 0.3, 0.4), NearEigenvalueError);
    EXPECT_THROW(trace_quadrature(ext, p), NearEigenvalueError);
}

TEST(Resolvent, QuadratureRange)
{
    auto p = SpectralPoint::from_lambda(-900.0);
    EXPECT_THROW(trace_quadrature(ExtensionParams::dirichlet(0.75), p), DomainError);
}

TEST(Resolvent, DifferenceTraceAsymptotics)
{
    for (double g : {0.6, 0.75, 1.4}) {
        // beyond the leading term the difference is exponentially small on this ray
        for (double m : {10.0, 50.0, 200.0, 800.0}) {
            auto p = SpectralPoint::from_mu(std::polar(m, pi / 4.0));
            cplx diff = trace_d(g, p.mu) - trace_n(g, p.mu);
            cplx lead = (2.0 * g - 1.0) / (2.0 * p.mu * p.mu);
            EXPECT_LT(std::abs(diff / lead - 1.0), m == 10.0 ? 1e-3 : 1e-8) << g << " " << m;
        }
    }
}

TEST(Resolvent, Primitives)
{
    const cplx mu = 2.0;
    cplx nn = primitive_nu_nu(0.25, mu, 1.0);
    EXPECT_LT(rel(nn, 0.20112029712754452216), 1e-13);
    auto r = quad::integrate(
        [&](double x) { return x * std::pow(specfun::bessel_j(0.25, mu * x), 2.0); }, 0.0, 1.0, 1e-15, 1e-13);
    EXPECT_LT(rel(nn, r.value), 1e-12);

    EXPECT_LT(rel(hyp1f2_bessel_form(0.25, mu, 1.0), -10.112483864414166832), 1e-12);
    for (double nu : {0.1, 0.25, 0.5, 0.9})
        for (double x : {0.3, 1.0})
            EXPECT_LT(rel(hyp1f2_bessel_form(nu, mu, x), hyp1f2_series(nu, mu, x)), 1e-10) << nu << " " << x;

    cplx nm = primitive_nu_minus_nu(0.25, mu, 1.0);
    EXPECT_LT(rel(nm, 0.15632422712757257567), 1e-10);
    auto r2 = quad::integrate(
        [&](double x) { return x * specfun::bessel_j(0.25, mu * x) * specfun::bessel_j(-0.25, mu * x); }, 0.0,
        1.0, 1e-15, 1e-13);
    EXPECT_LT(rel(nm, r2.value), 1e-10);
}

TEST(ResolventHalf, ClosedFormOracles)
{
    auto p = SpectralPoint::from_lambda(-10.0);
    EXPECT_LT(rel(trace_half(ExtensionParams::from_theta(0.0), p).trace, 0.17170161248026802486), 1e-12);
    EXPECT_LT(rel(trace_half(ExtensionParams::from_theta(-1.0), p).trace, 0.152298337790223954), 1e-12);
    EXPECT_LT(rel(trace_half(ExtensionParams::dirichlet(0.5), p).trace, 0.12985914095892546359), 1e-12);
}

TEST(ResolventHalf, Triangulation)
{
    for (const auto& ext : {ExtensionParams::dirichlet(0.5), ExtensionParams::from_theta(0.0),
                            ExtensionParams::from_theta(-1.0), ExtensionParams::from_theta(2.0)}) {
        EigenvalueTable table = eigenvalues(ext, 2000);
        for (double lam : {-1.0, -10.0}) {
            auto p = SpectralPoint::from_lambda(lam);
            cplx c = trace_half(ext, p).trace;
            EXPECT_LT(rel(trace_quadrature(ext, p).trace, c), 1e-8) << ext.describe() << " " << lam;
            EXPECT_LT(rel(trace_spectral(table, p).trace, c), 1e-8) << ext.describe() << " " << lam;
        }
    }
}

TEST(ResolventHalf, SameAsymptoticExpansion)
{
    auto d = ExtensionParams::dirichlet(0.5), t = ExtensionParams::from_theta(0.0);
    double prev = 1.0;
    for (double m : {25.0, 50.0, 100.0, 200.0}) {
        auto p = SpectralPoint::from_mu(std::polar(m, pi / 4.0));
        cplx a = trace_half(d, p).trace, b = trace_half(t, p).trace;
        double ratio = std::abs(a - b) / std::abs(a);
        EXPECT_LT(ratio, prev);
        prev = ratio;
        if (m == 50.0)
            EXPECT_LT(ratio, 1e-2);
    }
}
