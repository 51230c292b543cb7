#pragma once

// Check orchestration shared by the `verify` subcommand and the test suites.

#include <aximhd/diagnostics.hpp>
#include <aximhd/evolve.hpp>

#include <string>
#include <vector>

namespace aximhd {

extern const char* const kCheckNames[7];

/// Splits "a,b,c" and validates each name. Throws ConfigError on unknown names.
std::vector<std::string> parse_check_list(const std::string& list);

/// True when the check compares two resolutions.
bool needs_refinement(const std::string& check);

/// Same config on a grid with half the points per direction (at least 8).
RunConfig coarsened(const RunConfig& cfg);

struct RefinementPair {
    std::vector<DiagnosticsRecord> coarse;
    std::vector<DiagnosticsRecord> fine;
};

/// Evaluates one named check. `pair.coarse` may be empty for single-run checks.
CheckReport evaluate_check(const std::string& check, const RunConfig& cfg, const RefinementPair& pair);

/// sup over records of ||Omega||_2 / (1 + sqrt t).
double omega_growth_ratio(std::span<const DiagnosticsRecord> recs);

} // namespace aximhd
