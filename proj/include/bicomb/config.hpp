#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bicomb {

// One requested check. Which fields matter depends on the check: every
// sweep uses (space, n, seed, tol, scale, threads); convexity and
// length-modulus also read the modulus overrides; shadow/contraction read
// (beta, L, delta) and the manual radii; the transfer checks read
// (action, k, delta, R).
struct CheckSpec {
  std::string check;
  std::string space;
  std::uint64_t n = 1000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = -1.0;
  double scale = -1.0;
  bool keep_values = false;
  std::string modulus;
  std::string length;
  std::string action;
  int k = 1;
  double delta = 0.1;
  double beta = 1.0;
  double L = 1.0;
  double r_prime = -1.0;        // manual shadowing radii; < 0 uses the recipe
  double r_double_prime = -1.0;
  double R = 8.0;               // ball radius for the homotopy checks
  int grid = 100;
  std::string deltas;           // comma list for recipe-curve
};

struct SuiteConfig {
  std::string out;
  int threads = 0;
  std::uint64_t seed = 1;
  std::vector<CheckSpec> checks;
  std::string raw;  // original text, embedded into the run manifest
};

// Flat INI-style text: `[suite]` once for defaults, one `[check]` section
// per requested check, `key = value` lines, `#`/`;` comments. Unknown
// sections or keys throw std::invalid_argument.
SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);

}  // namespace bicomb
