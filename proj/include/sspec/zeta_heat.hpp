#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sspec/spectrum.hpp"

namespace sspec::zeta_heat {

enum class PoleKind { regular, anomalous };
enum class PoleMethod { formula, numeric };

struct PoleReport {
    double s0;
    double residue;
    PoleKind kind;
    int k;
    PoleMethod method;
    /// Extrapolation error estimate (numeric reports only).
    double error = 0.0;

    nlohmann::json to_json() const;
};

struct ZetaSum {
    cplx value;
    /// lambda_-^{-s} = |lambda_-|^{-s} (cos pi s - i sin pi s), already included in value.
    cplx negative_part;
    /// Re s < 0.51: the tail converges too slowly for the nominal accuracy.
    bool accuracy_warning;
};

/// sum lambda_n^{-s} over the positive spectrum (explicit terms plus tail) and lambda_-^{-s};
/// the zero mode is excluded.  Re s > 1/2.
ZetaSum zeta_sum(const ExtensionParams& ext, cplx s, int n_explicit = 2000);
ZetaSum zeta_sum(const EigenvalueTable& table, cplx s);

enum class ZetaMode {
    full,
    /// zeta of the extension minus zeta of the D-extension with the same g
    difference
};

struct ZetaOptions {
    /// Number of A_k terms subtracted on the rays; valid for s > (1 - n_subtract) / 2.
    int n_subtract = 8;
    ZetaMode mode = ZetaMode::full;
    double mu_split = 25.0;
    double mu_max = 1000.0;
};

struct ZetaIntegral {
    cplx value;
    double error;
};

/// Meromorphic continuation through the contour representation with the rays arg lambda = +-pi/2.
/// Throws DomainError within 1e-3 of a predicted pole or below the continuation limit.
ZetaIntegral zeta_integral(const ExtensionParams& ext, double s, const ZetaOptions& opt = {});

/// Predicted poles: regular s = 1 - k/2 (k = 1..K) and, for g != 1/2 and alpha != 0,
/// anomalous s = (1/2 - g) k (k = 1..K).
std::vector<PoleReport> pole_table(const ExtensionParams& ext, int K);

/// lim (s - s0) zeta(s) by Richardson extrapolation of delta (zeta(s0+delta) - zeta(s0-delta)) / 2,
/// delta = h 2^{-j}, j = 0..4.  Refuses points where another pole is closer than 2h or where a
/// regular and an anomalous pole coincide (full mode).
PoleReport residue_numeric(const ExtensionParams& ext, double s0, const ZetaOptions& opt = {}, double h = 0.05);

struct HeatTrace {
    double value;
    /// A zero mode is present and contributes 1.
    bool zero_mode;
    int n_explicit;
};

/// sum exp(-t lambda_n) including lambda_- and the zero mode.  n_explicit = 0 picks N with
/// exp(-t lambda_N) < 1e-17 (at most 20000); a positive n_explicit adds the asymptotic tail.
HeatTrace heat_trace(const ExtensionParams& ext, double t, int n_explicit = 0);
/// Tr exp(-t D_ext) - Tr exp(-t D_D) at matched truncation.
double heat_difference(const ExtensionParams& ext, double t, int n_explicit = 0);

struct HeatTerm {
    int k;
    double exponent;      ///< (g - 1/2) k
    double coefficient;   ///< 0 when gamma_pole
    bool gamma_pole;      ///< Gamma((1/2 - g) k) is infinite; the sine factor vanishes
    double limit;         ///< nu rho^k / Gamma(1 + nu k), the finite value of the product
};

struct HeatExpansion {
    double constant;
    std::vector<HeatTerm> terms;

    nlohmann::json to_json() const;
};

/// Small-t expansion of heat_difference: (g - 1/2) + sum_k c_k t^{(g-1/2) k}.  g != 1/2.
HeatExpansion heat_expansion(const ExtensionParams& ext, int K);
/// Gamma(s0) times the residue: the heat coefficient of t^{-s0}.  0 at poles of Gamma.
double heat_coeff_from_residue(const PoleReport& pole);

struct ScalingReport {
    double c;
    /// max_k |rho'^k c^{(1-2g)k} / rho^k - 1|, k = 1..K
    double rho_law_error;
    /// per k: formula residue of the scaled extension over c^{(2g-1)k} times the original one
    std::vector<double> residue_ratios;
    double residue_law_error;
    double s;
    cplx zeta_scaled;     ///< zeta of the operator on (0, 1/c), from its own spectrum
    cplx zeta_expected;   ///< c^{-2s} zeta(s)
    double zeta_error;
};

/// The scaling isometry maps the extension on (0,1) to one on (0,1/c) whose zeta is c^{-2s} zeta(s).
ScalingReport scaling_check(const ExtensionParams& ext, double c, int K, double s = 1.0, int n_explicit = 2000);

const char* kind_name(PoleKind k);
const char* method_name(PoleMethod m);

} // namespace sspec::zeta_heat
