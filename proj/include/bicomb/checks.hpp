#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bicomb/modulus.hpp"
#include "bicomb/report.hpp"
#include "bicomb/space.hpp"

namespace bicomb {

struct CheckParams {
  std::uint64_t seed = 1;
  std::uint64_t n = 1000;
  double tol = -1.0;    // < 0: use space.declared_tol()
  double scale = -1.0;  // < 0: use space.default_scale()
  int threads = 0;      // 0: auto
  bool keep_values = false;  // record per-sample slack for histograms
};

// Every checker draws sample i from its own stream Rng(seed, i), so reports
// are reproducible and independent of the thread count. max_violation is the
// worst signed slack (LHS - RHS); the worst sample is replayed to build the
// witness. On one-sided spaces each inequality is downgraded to its sound
// form (certified upper estimates where larger distances only strengthen the
// bound, certified lower estimates on the left-hand side).

// Symmetry, triangle inequality, nonnegativity, lower <= upper, and
// path length >= distance.
PropertyReport check_metric(const Space& s, const CheckParams& p);

// Constant speed: d(gamma(t1), gamma(t2)) = |t1 - t2| d(x, y), plus the same
// statement for path lengths.
PropertyReport check_geodesic(const Space& s, const CheckParams& p);

// Restriction: the path from gamma(t1) to gamma(t2) retraces gamma.
PropertyReport check_consistency(const Space& s, const CheckParams& p);

// Paths commute with the space's isometries.
PropertyReport check_equivariance(const Space& s, const CheckParams& p);

// The maps in isometries() preserve the metric (and both certified
// estimates on one-sided spaces).
PropertyReport check_isometry_invariance(const Space& s, const CheckParams& p);

// d(gamma_{x,y}(t), gamma_{x',y'}(t)) <= A(t, d(x,x'), d(y,y')). On one-sided
// spaces the left side is the smaller of the direct path length and the
// two-hop split through gamma_{x,y'}(t), whose legs the modulus bounds
// per-endpoint; requires A increasing in both distance arguments.
PropertyReport check_convexity(const Space& s, const ConvexityModulus& a,
                               const CheckParams& p);

// |l(x,y) - l(x',y')| <= f(d(x,x') + d(y,y')); requires f nondecreasing for
// the one-sided form.
PropertyReport check_length_modulus(const Space& s, const LengthModulus& f,
                                    const CheckParams& p);

// Shared sweep driver: evaluates samples 0..n-1 (eval gets the sample index
// and a witness sink that is non-null only when the worst sample is
// replayed), then packages the PropertyReport. Used by all checkers.
PropertyReport run_sweep(
    const std::string& check, const Space& s, const CheckParams& p,
    const std::function<double(std::uint64_t, nlohmann::json*)>& eval);

// p.scale if set, otherwise the space default.
double effective_scale(const Space& s, const CheckParams& p);

// Name-indexed dispatch used by the runner and CLI.
const std::vector<std::string>& check_names();
PropertyReport run_check(const std::string& check, const Space& s,
                         const ConvexityModulus& a, const LengthModulus& f,
                         const CheckParams& p);

}  // namespace bicomb
