#pragma once

#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "sspec/extension.hpp"

namespace sspec::asympt {

/// Finite sum of c_e mu^e with real exponents.  Every omitted exponent is <= truncation_order
/// (-infinity for an exact series).  Exponents within 1e-12 are merged.
class GenPowerSeries {
public:
    struct Term {
        double exponent;
        cplx coefficient;
    };

    static constexpr double merge_tol = 1e-12;
    static constexpr double exact = -std::numeric_limits<double>::infinity();

    GenPowerSeries() = default;
    explicit GenPowerSeries(double truncation_order) : truncation_(truncation_order) {}
    static GenPowerSeries monomial(double exponent, cplx c, double truncation_order = exact);

    void add_term(double exponent, cplx c);
    /// Terms in decreasing exponent order.
    const std::vector<Term>& terms() const { return terms_; }
    double truncation_order() const { return truncation_; }
    /// Coefficient of mu^e (0 if absent).
    cplx coefficient(double exponent) const;
    double leading_exponent() const;

    /// Terms with exponent >= e_min; the truncation order moves up to the largest dropped exponent.
    GenPowerSeries truncated(double e_min) const;
    cplx evaluate(cplx mu) const;

    GenPowerSeries operator+(const GenPowerSeries& o) const;
    GenPowerSeries operator-(const GenPowerSeries& o) const;
    GenPowerSeries operator*(const GenPowerSeries& o) const;
    GenPowerSeries operator*(cplx c) const;
    /// 1/u for u = c (1 + r) with leading exponent 0 and r of negative exponents only,
    /// truncated at max(truncation_order, this->truncation_order()).
    GenPowerSeries reciprocal(double truncation_order) const;

    /// [{exponent, re, im}, ...]; the truncation order is not part of the array.
    nlohmann::json to_json() const;
    static GenPowerSeries from_json(const nlohmann::json& j);

private:
    void drop_truncated();

    std::vector<Term> terms_;
    double truncation_ = exact;
};

/// Tr G_D ~ sum_{k=1..K} A_k mu^{-k} for mu -> infinity with sign(Im mu) = sigma.
struct TraceAsymptotics {
    double g;
    int sigma;
    std::vector<cplx> a;   ///< a[k-1] = A_k

    cplx evaluate(cplx mu) const;
    GenPowerSeries series() const;
};

TraceAsymptotics trace_d_coefficients(double g, int sigma, int K);

/// sum_{k=0..K} (e^{i sigma pi nu} rho)^k mu^{-2 nu k}: the large-mu form of tau.
GenPowerSeries tau_series(const ExtensionParams& ext, int sigma, int K);

/// Tr G_D - tau (Tr G_D - Tr G_N) with K terms in each of the two families.
GenPowerSeries general_trace_series(const ExtensionParams& ext, int sigma, int K);

} // namespace sspec::asympt
