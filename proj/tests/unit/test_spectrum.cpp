#include <gtest/gtest.h>

#include <cmath>

#include "sspec/parallel.hpp"
#include "sspec/specfun.hpp"
#include "sspec/spectrum.hpp"

using namespace sspec;

TEST(BesselZero, HalfOrderAndOracle)
{
    for (int n = 1; n <= 40; ++n)
        EXPECT_NEAR(bessel_zero(0.5, n) / (n * pi), 1.0, 1e-13);
    EXPECT_NEAR(bessel_zero(0.0, 1), 2.4048255576957727686, 1e-14);
    EXPECT_NEAR(bessel_zero(0.25, 1), 2.7808877239949776268, 1e-14);
    EXPECT_NEAR(bessel_zero(-0.25, 1), 2.006299671789450416, 1e-14);
    EXPECT_THROW(bessel_zero(1.6, 1), DomainError);
}

TEST(BesselZero, McMahonRemainderScalesAsCube)
{
    double lo = 1e300, hi = 0.0;
    std::vector<double> z = bessel_zeros(0.25, 200);
    for (int n = 50; n <= 200; n += 10) {
        double gamma = (n + 0.125 - 0.25) * pi;
        double d = std::abs(z[n - 1] - mcmahon_zero(0.25, n)) * gamma * gamma * gamma;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        EXPECT_NEAR(z[n - 1], bessel_zero(0.25, n), 1e-12 * z[n - 1]);
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi / lo, 1.05);
}

TEST(Eigen, DirichletAndNeumann)
{
    auto t = eigenvalues_d(1.0, 3);
    EXPECT_NEAR(t.entries[2].lambda, 9 * pi * pi, 1e-11);
    auto d = eigenvalues_d(0.75, 1), n = eigenvalues_n(0.75, 1);
    EXPECT_NEAR(d.entries[0].lambda, std::pow(2.7808877239949776268, 2), 1e-13);
    EXPECT_NEAR(n.entries[0].lambda, std::pow(2.006299671789450416, 2), 1e-13);
    EXPECT_LT(n.entries[0].lambda, d.entries[0].lambda);
    EXPECT_FALSE(d.negative || d.zero_mode || n.negative || n.zero_mode);
}

TEST(Eigen, GeneralOracle)
{
    auto t = eigenvalues_general(ExtensionParams::from_rho(0.75, -3.0), 3);
    EXPECT_NEAR(t.entries[0].lambda, 6.3409813903264507448, 1e-12);
    EXPECT_NEAR(t.entries[1].lambda, 30.957005748560903768, 1e-11);
    EXPECT_NEAR(t.entries[2].lambda, 74.895144054833007018, 1e-11);
    EXPECT_FALSE(t.negative.has_value());
    EXPECT_FALSE(t.zero_mode);
}

TEST(Eigen, DirichletLimitDefers)
{
    auto a = eigenvalues_general(ExtensionParams::dirichlet(0.8), 5);
    auto b = eigenvalues_d(0.8, 5);
    for (int i = 0; i < 5; ++i)
        EXPECT_EQ(a.entries[i].lambda, b.entries[i].lambda);
}

TEST(Eigen, ZeroModeExactlyAtAlphaEqualsBeta)
{
    auto t = eigenvalues_general(ExtensionParams::from_ab(0.75, 1.0, 1.0), 4);
    EXPECT_TRUE(t.zero_mode);
    EXPECT_FALSE(t.negative.has_value());
    EXPECT_NEAR(spectral_function(0.75, 1e-6), rho_critical(0.75), 1e-10);
    for (double ba : {0.5, 0.999, 1.001, 1.2, -1.0})
        EXPECT_FALSE(eigenvalues_general(ExtensionParams::from_ab(0.75, 1.0, ba), 2).zero_mode);
}

TEST(Eigen, NegativeEigenvalue)
{
    EXPECT_FALSE(eigenvalues_general(ExtensionParams::from_ab(0.75, 1.0, 0.5), 2).negative.has_value());
    double expected[] = {-1.7685386619386279827, -19.140650884954986829, -748.32311710822017526};
    double ratios[] = {1.2, 2.0, 5.0};
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        auto t = eigenvalues_general(ExtensionParams::from_ab(0.75, 1.0, ratios[i]), 3);
        ASSERT_TRUE(t.negative.has_value());
        EXPECT_NEAR(*t.negative / expected[i], 1.0, 1e-12);
        EXPECT_LT(*t.negative, prev);
        prev = *t.negative;
    }
}

TEST(Eigen, HalfOracle)
{
    auto t = eigenvalues_half(0.0, 2);
    EXPECT_NEAR(t.entries[0].lambda, 0.43221455686510834878, 1e-13);
    EXPECT_FALSE(t.negative.has_value());
    auto d = eigenvalues(ExtensionParams::dirichlet(0.5), 1);
    EXPECT_NEAR(d.entries[0].lambda, std::pow(2.4048255576957727686, 2), 1e-13);
    auto s = eigenvalues_half(3.0, 2);
    ASSERT_TRUE(s.negative.has_value());
    EXPECT_NEAR(*s.negative / -403.42879349273511365, 1.0, 1e-12);
    auto z = eigenvalues(ExtensionParams::neumann(0.5), 2);
    EXPECT_TRUE(z.zero_mode);
}

TEST(Eigen, HalfApproachesDirichletForVeryNegativeTheta)
{
    auto t = eigenvalues_half(-1e6, 5);
    auto z = bessel_zeros(0.0, 5);
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(std::sqrt(t.entries[i].lambda), z[i], 1e-5);
}

TEST(Eigen, InterlacingAndResidual)
{
    for (double g : {0.6, 0.75, 1.0, 1.4})
        for (double ba : {-2.0, 0.3, 1.0, 1.7}) {
            auto ext = ExtensionParams::from_ab(g, 1.0, ba);
            auto t = eigenvalues_general(ext, 300);
            auto z = bessel_zeros(g - 0.5, 302);
            double r = rho(ext);
            bool first = !t.zero_mode && ba < 1.0;
            for (size_t i = 0; i < t.entries.size(); ++i) {
                const auto& e = t.entries[i];
                double mu = std::sqrt(e.lambda);
                double lo = first ? (i == 0 ? 0.0 : z[i - 1]) : z[i];
                double hi = first ? z[i] : z[i + 1];
                EXPECT_GT(mu, lo);
                EXPECT_LT(mu, hi);
                EXPECT_EQ(e.index, int(i) + 1);
                if (i > 0)
                    EXPECT_GT(e.lambda, t.entries[i - 1].lambda);
                double f = spectral_function(g, mu);
                // for larger n the slope of F times one ulp of mu dominates
                double h = 1e-7 * mu;
                double slope = std::abs(spectral_function(g, mu + h) - spectral_function(g, mu - h)) / (2 * h);
                double tol = 1e-10 * (1.0 + std::abs(r)) + 8.0 * 2.2e-16 * mu * slope;
                EXPECT_LT(std::abs(f - r), tol) << g << " " << ba << " " << i;
                if (i < 20)
                    EXPECT_LT(std::abs(f - r), 1e-10 * (1.0 + std::abs(r)));
            }
        }
}

TEST(Eigen, GrowthLikeFreeSpectrum)
{
    auto t = eigenvalues_general(ExtensionParams::from_rho(0.75, -3.0), 200);
    for (int n = 20; n <= 200; ++n)
        EXPECT_LT(std::abs(t.entries[n - 1].lambda - pi * pi * n * n) / n, 10.0);
}

TEST(Eigen, BoundaryConditionClosure)
{
    for (double ba : {-1.5, 0.4, 2.0}) {
        double g = 0.75, nu = 0.25;
        auto ext = ExtensionParams::from_ab(g, 1.0, ba);
        auto t = eigenvalues_general(ext, 5);
        for (const auto& e : t.entries) {
            cplx mu(std::sqrt(e.lambda));
            // coefficients with C1 = beta, C2 = -alpha
            cplx a = ext.beta() * std::tgamma(g + 0.5) / (std::sqrt(2 * g - 1) * std::pow(mu / 2.0, nu));
            cplx b = -ext.alpha() * std::tgamma(1.5 - g) * std::pow(mu / 2.0, nu) / std::sqrt(2 * g - 1);
            cplx at1 = a * specfun::bessel_j(nu, mu) + b * specfun::bessel_j(-nu, mu);
            EXPECT_LT(std::abs(at1), 1e-12 * (std::abs(a) + std::abs(b)));
            cplx jp = specfun::bessel_j(nu, mu), jm = specfun::bessel_j(-nu, mu);
            auto phi = [&](double x) {
                return std::sqrt(x) * (jm * specfun::bessel_j(nu, mu * x) - jp * specfun::bessel_j(-nu, mu * x));
            };
            auto fit = fit_boundary_coefficients(g, mu, phi);
            cplx r = ext.alpha() * fit.data.c1 + ext.beta() * fit.data.c2;
            EXPECT_LT(std::abs(r), 1e-9 * (std::abs(fit.data.c1) + std::abs(fit.data.c2)));
        }
    }
}

TEST(Eigen, DeterministicAcrossThreadCounts)
{
    auto ext = ExtensionParams::from_rho(0.6, -3.0);
    set_thread_count(1);
    auto a = eigenvalues(ext, 500);
    set_thread_count(3);
    auto b = eigenvalues(ext, 500);
    set_thread_count(1);
    for (int i = 0; i < 500; ++i)
        EXPECT_EQ(a.entries[i].lambda, b.entries[i].lambda);
}
