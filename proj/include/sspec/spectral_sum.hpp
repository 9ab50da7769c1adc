#pragma once

#include <functional>

#include "sspec/spectrum.hpp"

namespace sspec {

/// Asymptotic counting function n(mu) of the positive spectrum, built from the
/// Hankel phase of J_{+-nu} and the boundary phase of the extension, and anchored
/// at the last entry of an eigenvalue table (which must satisfy mu_N >= 25).
class CountingModel {
public:
    explicit CountingModel(const EigenvalueTable& table);

    double count(double mu) const;
    /// dn/dmu.
    double density(double mu) const;
    /// dn/dmu - 1/pi.
    double density_correction(double mu) const;
    /// Inverse of count().
    double mu_of(double n) const;

    double anchor_mu() const { return anchor_mu_; }
    int anchor_index() const { return anchor_index_; }
    /// Distance of the fitted offset from an integer (a consistency diagnostic).
    double offset_defect() const { return defect_; }

private:
    double phase(double mu) const;
    double phase_derivative(double mu) const;

    double nu_;
    double rho_ = 0.0;
    double beta_over_alpha_ = 0.0;
    enum class Kind { dirichlet, neumann, general, half } kind_;
    int anchor_index_;
    double anchor_mu_;
    double offset_ = 0.0;
    double defect_ = 0.0;
};

/// Sum of f over the positive entries of `table` plus the Euler-Maclaurin tail
/// sum_{n > N} f(mu_n) from the counting model.
///   f_mu(mu)          the summand as a function of mu = sqrt(lambda)
///   main_integral(a)  (1/pi) int_a^inf f_mu(mu) dmu, supplied in closed form
struct SpectralSum {
    cplx value;
    cplx explicit_part;
    cplx tail;
};

SpectralSum spectral_sum(const EigenvalueTable& table, const std::function<cplx(double)>& f_mu,
                         const std::function<cplx(double)>& main_integral);

} // namespace sspec
