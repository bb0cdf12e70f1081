#include "bicomb/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bicomb/checks.hpp"
#include "bicomb/contraction.hpp"
#include "bicomb/registry.hpp"
#include "bicomb/sl2.hpp"
#include "bicomb/trail.hpp"
#include "bicomb/transfer.hpp"

namespace bicomb {
namespace {

CheckParams params_of(const CheckSpec& spec, const SuiteConfig& suite) {
  CheckParams p;
  p.seed = spec.seed;
  p.n = spec.n;
  p.tol = spec.tol;
  p.scale = spec.scale;
  p.threads = suite.threads;
  p.keep_values = spec.keep_values;
  return p;
}

Point base_point_of(const GroupAction& action) {
  if (action.name() == "hyperbolic-pair") return Point{0.0, 1.0};
  return Point{0.0, 0.0};
}

std::vector<double> parse_deltas(const std::string& list) {
  std::vector<double> out;
  std::istringstream in(list.empty() ? std::string("1,0.1,0.01") : list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.size() < 2)
    throw std::invalid_argument("recipe-curve needs at least two deltas");
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Constants-vs-delta curve for the recipe; the flow time must not shrink
// when the target tightens.
PropertyReport recipe_curve(const CheckSpec& spec, const RegisteredSpace& rs) {
  ConvexityModulus A = make_modulus(spec.modulus, rs);
  LengthModulus f = make_length_modulus(spec.length, rs);
  PropertyReport rep;
  rep.check = "recipe-curve";
  rep.space = rs.space->name();
  rep.mode = rs.space->one_sided() ? "one_sided" : "exact";
  rep.seed = spec.seed;
  rep.tol = spec.tol < 0 ? 1e-12 : spec.tol;
  std::vector<double> deltas = parse_deltas(spec.deltas);
  rep.n = deltas.size();
  nlohmann::json curve = nlohmann::json::array();
  double viol = 0.0;
  double prev_T = -1.0;
  for (double d : deltas) {
    ContractionConstants c = contraction_constants(spec.beta, spec.L, d, A, f);
    curve.push_back({{"delta", d},
                     {"r_prime", c.r_prime},
                     {"r_double_prime", c.r_double_prime},
                     {"r", c.r},
                     {"T", c.T}});
    if (prev_T >= 0.0) viol = std::max(viol, prev_T - c.T);
    prev_T = c.T;
  }
  rep.max_violation = viol;
  rep.details["curve"] = std::move(curve);
  rep.details["beta"] = spec.beta;
  rep.details["L"] = spec.L;
  rep.finalize();
  return rep;
}

}  // namespace

const std::vector<std::string>& runner_check_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names = check_names();
    const char* extra[] = {"flow-eval",        "flow-shift",
                           "flow-restrict",    "chain-convexity",
                           "length-difference", "shadow",
                           "contraction",      "transfer-condition",
                           "homotopy-axioms",  "retraction-semigroup",
                           "recipe-curve"};
    names.insert(names.end(), std::begin(extra), std::end(extra));
    return names;
  }();
  return kNames;
}

PropertyReport run_spec(const CheckSpec& spec, const SuiteConfig& suite) {
  if (spec.space.empty())
    throw std::invalid_argument("check '" + spec.check + "': missing space");
  RegisteredSpace rs = make_space(spec.space);
  const Space& s = *rs.space;
  CheckParams p = params_of(spec, suite);
  const std::string& c = spec.check;

  const auto& basic = check_names();
  if (std::find(basic.begin(), basic.end(), c) != basic.end()) {
    ConvexityModulus A = make_modulus(spec.modulus, rs);
    LengthModulus f = make_length_modulus(spec.length, rs);
    return run_check(c, s, A, f, p);
  }
  if (c == "flow-eval") return check_flow_eval(s, p);
  if (c == "flow-shift") return check_flow_shift(s, p);
  if (c == "flow-restrict") return check_flow_restrict(s, p);
  if (c == "chain-convexity") return sl2::check_chain_convexity(s, p);
  if (c == "length-difference") return sl2::check_length_difference(s, p);
  if (c == "shadow") {
    ConvexityModulus A = monotonize_modulus(make_modulus(spec.modulus, rs));
    LengthModulus f = make_length_modulus(spec.length, rs);
    ContractionConstants cc =
        spec.r_prime > 0 && spec.r_double_prime > 0
            ? shadow_constants(spec.beta, spec.L, spec.r_prime,
                               spec.r_double_prime, A, f)
            : contraction_constants(spec.beta, spec.L, spec.delta, A, f);
    return check_shadow_sweep(s, A, f, cc, spec.beta, spec.L, p);
  }
  if (c == "contraction") {
    ConvexityModulus A = monotonize_modulus(make_modulus(spec.modulus, rs));
    LengthModulus f = make_length_modulus(spec.length, rs);
    return check_contraction(s, A, f, spec.beta, spec.L, spec.delta, p);
  }
  if (c == "transfer-condition" || c == "homotopy-axioms" ||
      c == "retraction-semigroup") {
    if (spec.action.empty() && c != "retraction-semigroup")
      throw std::invalid_argument("check '" + c + "': missing action");
    if (c == "retraction-semigroup") {
      Point x0;
      if (spec.action.empty()) {
        Rng rng(0);
        x0 = s.sample(rng, 1.0);
      } else {
        x0 = base_point_of(*make_action(spec.action));
      }
      return check_retraction_semigroup(s, x0, spec.R, p);
    }
    auto action = make_action(spec.action);
    Point x0 = base_point_of(*action);
    if (c == "homotopy-axioms")
      return check_homotopy_axioms(s, *action, x0, spec.R, p);
    ConvexityModulus A = monotonize_modulus(make_modulus(spec.modulus, rs));
    LengthModulus f = make_length_modulus(spec.length, rs);
    TransferConfig cfg =
        transfer_constants(s, *action, spec.k, spec.delta, x0, A, f);
    return check_transfer_condition(s, *action, cfg, p);
  }
  if (c == "recipe-curve") return recipe_curve(spec, rs);
  throw std::invalid_argument("unknown check: " + c);
}

SuiteOutcome run_suite(const SuiteConfig& cfg) {
  SuiteOutcome out;
  out.reports.reserve(cfg.checks.size());
  for (const CheckSpec& spec : cfg.checks) {
    PropertyReport rep = run_spec(spec, cfg);
    out.all_passed = out.all_passed && rep.passed;
    out.reports.push_back(std::move(rep));
  }
  out.csv = summary_csv(out.reports);
  return out;
}

std::string format_double(double v) {
  // nlohmann serializes doubles with the shortest representation that
  // round-trips, which is stable across runs and platforms using the same
  // library.
  return nlohmann::json(v).dump();
}

std::string summary_csv(const std::vector<PropertyReport>& reports) {
  std::ostringstream out;
  out << "check,space,mode,seed,n,tol,max_violation,passed\n";
  for (const PropertyReport& r : reports) {
    out << r.check << ',' << r.space << ',' << r.mode << ',' << r.seed << ','
        << r.n << ',' << format_double(r.tol) << ','
        << format_double(r.max_violation) << ',' << (r.passed ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json write_outcome(const SuiteOutcome& o, const SuiteConfig& cfg,
                             const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json manifest;
  manifest["schema"] = 1;
  manifest["tool"] = "bicomb 0.1.0";
  {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    manifest["created"] = buf;
  }
  {
    // FNV-1a over the config text.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : cfg.raw) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    manifest["config_hash"] = buf;
  }
  manifest["config_text"] = cfg.raw;
  manifest["summary"] = "summary.csv";
  manifest["all_passed"] = o.all_passed;

  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < o.reports.size(); ++i) {
    const PropertyReport& r = o.reports[i];
    char idx[8];
    std::snprintf(idx, sizeof idx, "%03zu", i + 1);
    std::string name = std::string(idx) + "-" + r.check + "-" + r.space + ".json";
    std::ofstream out(fs::path(dir) / name);
    out << r.to_json().dump(2) << '\n';
    files.push_back({{"file", name},
                     {"check", r.check},
                     {"space", r.space},
                     {"passed", r.passed}});
  }
  manifest["reports"] = std::move(files);

  std::ofstream csv(fs::path(dir) / "summary.csv");
  csv << o.csv;
  std::ofstream mf(fs::path(dir) / "manifest.json");
  mf << manifest.dump(2) << '\n';
  return manifest;
}

}  // namespace bicomb
