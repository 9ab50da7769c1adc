#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sspec::verify {

struct Check {
    std::string name;
    double measured;
    double tolerance;
    bool pass;

    nlohmann::json to_json() const;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;

    bool pass() const;
    nlohmann::json to_json() const;
};

/// Acceptance criteria 1..9.
Suite criterion(int id);
inline constexpr int criterion_count = 9;

/// Quick invariant checks, one suite per module.
std::vector<Suite> invariant_suites();

} // namespace sspec::verify
