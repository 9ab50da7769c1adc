#include <cmath>

#include <gtest/gtest.h>

#include "sspec/asympt.hpp"
#include "sspec/resolvent.hpp"

using namespace sspec;
using namespace sspec::asympt;

namespace {

const cplx I(0.0, 1.0);

// least-squares slope of log|r| against log m
double slope(const std::vector<double>& m, const std::vector<double>& r)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        double x = std::log(m[i]), y = std::log(r[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST(Series, MergesNearbyExponents)
{
    GenPowerSeries s;
    s.add_term(-0.3, 1.0);
    s.add_term(-0.3 + 1e-13, 2.0);
    s.add_term(-0.3 + 1e-9, 4.0);
    ASSERT_EQ(s.terms().size(), 2u);
    EXPECT_EQ(s.coefficient(-0.3), cplx(3.0));
    EXPECT_GT(s.terms()[0].exponent, s.terms()[1].exponent);
}

TEST(Series, TruncationBookkeeping)
{
    GenPowerSeries a(-3.0), b(-2.5);
    a.add_term(0.0, 1.0);
    a.add_term(-1.0, 2.0);
    a.add_term(-4.0, 9.0);   // below the truncation order: not representable
    EXPECT_EQ(a.terms().size(), 2u);
    b.add_term(-0.5, 1.0);
    b.add_term(-1.5, 1.0);
    GenPowerSeries p = a * b;
    // omitted terms of a times b's leading term reach -3.5, those of b times a's leading term -2.5
    EXPECT_DOUBLE_EQ(p.truncation_order(), -2.5);
    for (const auto& t : p.terms())
        EXPECT_GT(t.exponent, -2.5);
    EXPECT_EQ(p.coefficient(-1.5), cplx(1.0 + 2.0));
    GenPowerSeries s = a + b;
    EXPECT_DOUBLE_EQ(s.truncation_order(), -2.5);
    GenPowerSeries t = s.truncated(-1.0);
    EXPECT_DOUBLE_EQ(t.truncation_order(), -1.5);
}

TEST(Series, ReciprocalOfUnit)
{
    GenPowerSeries u = GenPowerSeries::monomial(0.0, 2.0);
    u.add_term(-0.5, 1.0);
    u.add_term(-1.0, cplx(0.0, 3.0));
    GenPowerSeries r = u.reciprocal(-6.0);
    GenPowerSeries one = u * r;
    EXPECT_LT(std::abs(one.coefficient(0.0) - 1.0), 1e-15);
    for (const auto& t : one.terms())
        if (t.exponent < 0.0)
            EXPECT_LT(std::abs(t.coefficient), 1e-12) << t.exponent;
    const cplx mu(400.0, 0.0);
    EXPECT_LT(std::abs(r.evaluate(mu) * u.evaluate(mu) - 1.0), 1e-14);
    EXPECT_THROW(GenPowerSeries::monomial(-1.0, 1.0).reciprocal(-3.0), DomainError);
    EXPECT_THROW(u.reciprocal(GenPowerSeries::exact), DomainError);
}

TEST(Series, JsonRoundTrip)
{
    GenPowerSeries s = general_trace_series(ExtensionParams::from_rho(0.75, -3.0), 1, 5);
    nlohmann::json j = s.to_json();
    ASSERT_TRUE(j.is_array());
    EXPECT_TRUE(j[0].contains("exponent") && j[0].contains("re") && j[0].contains("im"));
    GenPowerSeries back = GenPowerSeries::from_json(nlohmann::json::parse(j.dump()));
    ASSERT_EQ(back.terms().size(), s.terms().size());
    for (size_t i = 0; i < s.terms().size(); ++i) {
        EXPECT_EQ(back.terms()[i].exponent, s.terms()[i].exponent);
        EXPECT_EQ(back.terms()[i].coefficient, s.terms()[i].coefficient);
    }
}

TEST(TraceCoefficients, LowOrders)
{
    for (double g : {0.5, 0.6, 0.75, 1.0, 1.4}) {
        for (int sigma : {1, -1}) {
            TraceAsymptotics t = trace_d_coefficients(g, sigma, 4);
            const double s = sigma;
            EXPECT_LT(std::abs(t.a[0] - I * s / 2.0), 1e-16);
            EXPECT_LT(std::abs(t.a[1] - g / 2.0), 1e-15);
            EXPECT_LT(std::abs(t.a[2] + I * s * g * (g - 1.0) / 4.0), 1e-15);
            EXPECT_LT(std::abs(t.a[3] - g * (g - 1.0) / 4.0), 1e-15);
        }
    }
    TraceAsymptotics h = trace_d_coefficients(0.5, 1, 4);
    EXPECT_EQ(h.a[0], 0.5 * I);
    EXPECT_EQ(h.a[1], cplx(0.25));
    EXPECT_EQ(h.a[2], I / 16.0);
    EXPECT_EQ(h.a[3], cplx(-1.0 / 16.0));
}

TEST(TraceCoefficients, ParityAndConjugation)
{
    for (double g : {0.55, 0.75, 1.3}) {
        TraceAsymptotics up = trace_d_coefficients(g, 1, 20), dn = trace_d_coefficients(g, -1, 20);
        for (int k = 1; k <= 20; ++k) {
            cplx a = up.a[k - 1];
            if (k % 2 == 0)
                EXPECT_EQ(a.imag(), 0.0) << k;
            else
                EXPECT_EQ(a.real(), 0.0) << k;
            EXPECT_EQ(dn.a[k - 1], std::conj(a));
        }
        const double m = 37.0;
        EXPECT_EQ(dn.evaluate(m), std::conj(up.evaluate(m)));
    }
    EXPECT_THROW(trace_d_coefficients(0.75, 1, 21), DomainError);
}

TEST(TraceCoefficients, MatchClosedForm)
{
    for (double g : {0.6, 0.75, 1.0, 1.4}) {
        for (int sigma : {1, -1}) {
            TraceAsymptotics t = trace_d_coefficients(g, sigma, 12);
            cplx mu = std::polar(100.0, sigma * pi / 4.0);
            EXPECT_LT(std::abs(resolvent::trace_d(g, mu) - t.evaluate(mu)), 1e-16) << g;
        }
    }
}

TEST(TraceCoefficients, Reflection)
{
    // Tr G_N has the expansion of Tr G_D with g -> 1 - g
    for (double g : {0.6, 0.75, 1.4}) {
        TraceAsymptotics t = trace_d_coefficients(1.0 - g, 1, 12);
        cplx mu = std::polar(80.0, pi / 4.0);
        EXPECT_LT(std::abs(resolvent::trace_n(g, mu) - t.evaluate(mu)), 1e-15) << g;
    }
}

TEST(TauSeries, Terms)
{
    GenPowerSeries n = tau_series(ExtensionParams::neumann(0.75), 1, 6);
    ASSERT_EQ(n.terms().size(), 1u);
    EXPECT_EQ(n.coefficient(0.0), cplx(1.0));

    auto ext = ExtensionParams::from_rho(0.75, -3.0);
    GenPowerSeries t = tau_series(ext, 1, 6);
    EXPECT_EQ(t.coefficient(0.0), cplx(1.0));
    EXPECT_LT(std::abs(t.coefficient(-0.5) - std::polar(1.0, pi / 4.0) * -3.0), 1e-15);
    EXPECT_DOUBLE_EQ(t.truncation_order(), -3.5);
    EXPECT_THROW(tau_series(ExtensionParams::dirichlet(0.75), 1, 3), DomainError);

    // against tau itself on the ray
    for (int sigma : {1, -1}) {
        auto p = SpectralPoint::from_mu(std::polar(400.0, sigma * pi / 4.0));
        GenPowerSeries s = tau_series(ext, sigma, 40);
        EXPECT_LT(std::abs(s.evaluate(p.mu) - tau(ext, p)), 1e-12);
    }
}

TEST(GeneralSeries, Coefficients)
{
    for (double g : {0.6, 0.75, 1.3}) {
        GenPowerSeries d = general_trace_series(ExtensionParams::dirichlet(g), 1, 6);
        GenPowerSeries a = trace_d_coefficients(g, 1, 6).series();
        ASSERT_EQ(d.terms().size(), a.terms().size());
        for (size_t i = 0; i < a.terms().size(); ++i)
            EXPECT_EQ(d.terms()[i].coefficient, a.terms()[i].coefficient);

        GenPowerSeries n = general_trace_series(ExtensionParams::neumann(g), 1, 6);
        GenPowerSeries refl = trace_d_coefficients(1.0 - g, 1, 6).series();
        for (const auto& t : refl.terms())
            EXPECT_LT(std::abs(n.coefficient(t.exponent) - t.coefficient), 1e-15) << t.exponent;
        EXPECT_LT(std::abs(n.coefficient(-2.0) - (1.0 - g) / 2.0), 1e-15);

        auto ext = ExtensionParams::from_ab(g, 1.0, -0.7);
        for (int sigma : {1, -1}) {
            GenPowerSeries s = general_trace_series(ext, sigma, 6);
            const double nu = g - 0.5;
            cplx expect = -std::polar(1.0, sigma * pi * nu) * rho(ext) * (2.0 * g - 1.0) / 2.0;
            EXPECT_LT(std::abs(s.coefficient(-2.0 - 2.0 * nu) - expect), 1e-14);
            EXPECT_LT(std::abs(s.coefficient(-2.0) - (1.0 - g) / 2.0), 1e-15);
        }
    }
}

TEST(GeneralSeries, RemainderSlope)
{
    const std::vector<ExtensionParams> exts = {ExtensionParams::dirichlet(0.75), ExtensionParams::neumann(0.75),
                                               ExtensionParams::from_rho(0.75, -3.0),
                                               ExtensionParams::from_ab(1.25, 1.0, -0.7)};
    for (const auto& ext : exts) {
        GenPowerSeries s = general_trace_series(ext, 1, 4);
        const double next = s.truncation_order();
        std::vector<double> ms = {100.0, 200.0, 400.0, 800.0}, rs;
        for (double m : ms) {
            auto p = SpectralPoint::from_mu(std::polar(m, pi / 4.0));
            rs.push_back(std::abs(resolvent::trace_closed(ext, p).trace - s.evaluate(p.mu)));
        }
        double k = slope(ms, rs);
        EXPECT_NEAR(k, next, 0.2) << ext.describe();
        EXPECT_LT(k, s.terms().back().exponent);
    }
}
