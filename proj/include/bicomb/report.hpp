#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace bicomb {

// Outcome of one property check. `max_violation <= tol` decides `passed`;
// the worst sample's inputs are kept as a replayable witness.
struct PropertyReport {
  static constexpr int kSchemaVersion = 1;

  std::string check;
  std::string space;
  std::string mode = "exact";  // "exact" or "one_sided"
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  double tol = 0.0;
  double max_violation = 0.0;
  bool passed = false;
  nlohmann::json witness;  // null when nothing violated enough to record
  nlohmann::json details; // per-check extras (curves, histograms, gaps)

  void finalize() { passed = max_violation <= tol; }

  nlohmann::json to_json() const;
  static PropertyReport from_json(const nlohmann::json& j);
};

// Equal-width histogram of per-sample slack values, used by the plot command.
nlohmann::json slack_histogram(const std::vector<double>& values, int buckets = 32);

nlohmann::json point_json(const class Point& p);

}  // namespace bicomb
