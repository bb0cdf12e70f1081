#include "bicomb/report.hpp"

#include <algorithm>
#include <cmath>

#include "bicomb/point.hpp"

namespace bicomb {

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["check"] = check;
  j["space"] = space;
  j["mode"] = mode;
  j["seed"] = seed;
  j["n"] = n;
  j["tol"] = tol;
  j["max_violation"] = max_violation;
  j["passed"] = passed;
  j["witness"] = witness;
  if (!details.is_null()) j["details"] = details;
  return j;
}

PropertyReport PropertyReport::from_json(const nlohmann::json& j) {
  PropertyReport r;
  r.check = j.at("check").get<std::string>();
  r.space = j.at("space").get<std::string>();
  r.mode = j.value("mode", "exact");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<std::uint64_t>();
  r.tol = j.at("tol").get<double>();
  r.max_violation = j.at("max_violation").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.witness = j.value("witness", nlohmann::json());
  r.details = j.value("details", nlohmann::json());
  return r;
}

nlohmann::json slack_histogram(const std::vector<double>& values, int buckets) {
  nlohmann::json h;
  if (values.empty() || buckets <= 0) return h;
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(std::isfinite(lo) && std::isfinite(hi))) return h;
  double width = hi > lo ? (hi - lo) / buckets : 1.0;
  std::vector<std::uint64_t> counts(buckets, 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width);
    if (b < 0) b = 0;
    if (b >= buckets) b = buckets - 1;
    counts[b]++;
  }
  h["lo"] = lo;
  h["hi"] = hi;
  h["counts"] = counts;
  return h;
}

nlohmann::json point_json(const Point& p) {
  nlohmann::json a = nlohmann::json::array();
  for (double v : p) a.push_back(v);
  return a;
}

}  // namespace bicomb
