#pragma once

#include <string>
#include <vector>

#include "bicomb/config.hpp"
#include "bicomb/report.hpp"

namespace bicomb {

struct SuiteOutcome {
  std::vector<PropertyReport> reports;
  std::string csv;
  bool all_passed = true;
};

// Names accepted in a [check] section, beyond the bicombing checks from
// check_names(): the flow sweeps, the fibered-model chain checks, the
// shadowing/contraction sweeps, the transfer suite, and recipe-curve.
const std::vector<std::string>& runner_check_names();

// Runs one spec; throws std::invalid_argument on unknown names or invalid
// parameters. Failing properties are report content, not errors.
PropertyReport run_spec(const CheckSpec& spec, const SuiteConfig& suite);

// Runs every [check] in order (aggregation is single-threaded and the
// per-check sweeps are thread-count independent, so outputs are
// deterministic at any parallelism degree).
SuiteOutcome run_suite(const SuiteConfig& cfg);

std::string summary_csv(const std::vector<PropertyReport>& reports);

// Writes per-check JSON reports, summary.csv, and manifest.json into dir
// (created if needed); returns the manifest.
nlohmann::json write_outcome(const SuiteOutcome& o, const SuiteConfig& cfg,
                             const std::string& dir);

// Stable text form for doubles (shortest round-trip), shared by the CSV
// writer and the plot labels.
std::string format_double(double v);

}  // namespace bicomb
