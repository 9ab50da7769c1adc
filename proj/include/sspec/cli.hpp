#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sspec/extension.hpp"

namespace sspec::cli {

enum ExitCode { ok = 0, validation_error = 2, numerical_error = 3 };

/// Fully resolved command configuration.  Serialized into every JSON report so that
/// `--replay report.json` re-runs it.
struct RunConfig {
    std::string command;
    double g = 0.0;
    std::optional<double> alpha, beta, rho, theta;

    int n = 10;                          // spectrum
    std::vector<double> lambda;          // trace
    double lambda_im = 0.0;
    double s_from = 1.0, s_to = 1.0;     // zeta
    int s_steps = 1;
    std::string mode = "full";
    std::vector<double> t;               // heat
    double t_from = 0.0, t_to = 0.0;
    int t_steps = 0;
    int K = 0;                           // 0: per-command default
    int n_explicit = 0;                  // 0: per-command default
    int sigma = 1;                       // asympt
    bool numeric = false;                // poles
    double h = 0.05;
    bool acceptance = false;             // verify
    std::vector<int> criteria;
    std::string precision = "double";
    std::string output = "json";

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

/// Throws DomainError on an inconsistent configuration.
void validate(const RunConfig& c);
ExtensionParams extension(const RunConfig& c);

/// Parses argv, runs the command and writes the report to out (diagnostics to err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int execute(const RunConfig& c, std::ostream& out);

} // namespace sspec::cli
