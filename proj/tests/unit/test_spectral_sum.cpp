#include <gtest/gtest.h>

#include <cmath>

#include "sspec/spectral_sum.hpp"

using namespace sspec;

namespace {

EigenvalueTable truncated(const EigenvalueTable& t, int n)
{
    EigenvalueTable c = t;
    c.entries.resize(n);
    return c;
}

} // namespace

TEST(CountingModel, PredictsLaterEigenvalues)
{
    std::vector<ExtensionParams> exts = {
        ExtensionParams::dirichlet(0.75), ExtensionParams::neumann(0.6), ExtensionParams::from_rho(0.75, -3.0),
        ExtensionParams::from_ab(1.4, 1.0, 2.0), ExtensionParams::from_ab(0.6, 1.0, -1.0),
        ExtensionParams::from_theta(0.0), ExtensionParams::from_theta(3.0), ExtensionParams::dirichlet(0.5)};
    for (const auto& e : exts) {
        auto full = eigenvalues(e, 400);
        CountingModel m(truncated(full, 100));
        EXPECT_LT(m.offset_defect(), 1e-9) << e.describe();
        for (int n : {101, 150, 399}) {
            double mu = std::sqrt(full.entries[n - 1].lambda);
            EXPECT_NEAR(m.count(mu), n, 1e-9) << e.describe() << " n=" << n;
            EXPECT_NEAR(m.mu_of(n), mu, 1e-10 * mu);
        }
    }
}

TEST(CountingModel, NeedsLargeAnchor)
{
    EXPECT_THROW(CountingModel(eigenvalues_d(0.75, 4)), DomainError);
}

TEST(SpectralSum, FreeDirichletZeta)
{
    auto t = eigenvalues_d(1.0, 50);
    auto r = spectral_sum(
        t, [](double mu) { return cplx(1.0 / (mu * mu)); }, [](double a) { return cplx(1.0 / (pi * a)); });
    EXPECT_NEAR(r.value.real(), 1.0 / 6.0, 1e-13);
    auto r2 = spectral_sum(
        t, [](double mu) { return cplx(std::pow(mu, -4.0)); }, [](double a) { return cplx(1.0 / (3.0 * pi * a * a * a)); });
    EXPECT_NEAR(r2.value.real(), 1.0 / 90.0, 1e-15);
}

TEST(SpectralSum, TailMatchesLongerExplicitSum)
{
    // sum of lambda^{-0.7} with 200 explicit terms + tail vs 2000 explicit + tail
    auto e = ExtensionParams::from_rho(0.75, -3.0);
    auto big = eigenvalues(e, 2000);
    auto f = [](double mu) { return cplx(std::pow(mu, -1.4)); };
    auto main = [](double a) { return cplx(std::pow(a, -0.4) / (0.4 * pi)); };
    auto a = spectral_sum(truncated(big, 200), f, main);
    auto b = spectral_sum(big, f, main);
    EXPECT_NEAR(a.value.real(), b.value.real(), 1e-11);
}
