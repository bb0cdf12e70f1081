#pragma once

#include <array>

#include "bicomb/checks.hpp"
#include "bicomb/modulus.hpp"
#include "bicomb/report.hpp"
#include "bicomb/space.hpp"
#include "bicomb/trail.hpp"

namespace bicomb {

// Constants for the shadowing/contraction estimates at inputs (beta, L,
// delta): radii r' (shadowing half-window), r'' (depth), r = 2r' + r'' +
// f(beta) (where far endpoints get pulled back to), T = r - r' - f(beta)
// (the flow time), and the intermediate bound delta'.
struct ContractionConstants {
  double r_prime = 0.0;
  double delta_prime = 0.0;
  double r_double_prime = 0.0;
  double r = 0.0;
  double T = 0.0;
};

// r'' / (r'' + 2r' + f(beta) + L): where the shadowing bound samples the
// convexity modulus; always in [2/3, 1) for valid constants.
double shadow_ratio(const ContractionConstants& c, double beta, double L,
                    const LengthModulus& f);

// A(ratio, beta, 0) + f(beta) (2r' + f(beta) + L) / r'': the pointwise
// shadowing bound.
double shadow_bound(const ContractionConstants& c, double beta, double L,
                    const ConvexityModulus& A, const LengthModulus& f);

// Pulls q along the path from center until path_length(center, .) <= radius;
// used to build samples that satisfy radius preconditions.
Point pull_toward(const Space& s, const Point& center, const Point& q,
                  double radius);

// Signed residuals (all <= 0 when the constants are valid) of the five
// defining conditions, in closed form with no quadrature:
//   [0] tail weight:  (2 + r') e^{-r'} - delta/3
//   [1] window mass:  2 delta' (1 - e^{-r'}) - delta/3
//   [2] ratio floor:  2/3 - shadow_ratio
//   [3] shadow fit:   shadow_bound - delta'
//   [4] algebra:      |r - (2r' + r'' + f(beta))| + |T - (r - r' - f(beta))|
std::array<double, 5> recipe_residuals(const ContractionConstants& c,
                                       double beta, double L, double delta,
                                       const ConvexityModulus& A,
                                       const LengthModulus& f);

// Deterministic recipe: minimal r' > 1 with (2 + r') e^{-r'} <= delta/3
// (doubling then bisection), the largest delta' < 1 the window-mass
// condition allows, then minimal r'' on a doubling grid starting from
// 2 (2r' + f(beta) + L) — which already forces the ratio floor — until the
// shadowing bound fits under delta'. Requires A(t, beta, 0) -> 0 as t -> 1
// (verified on a grid; std::invalid_argument otherwise) and throws
// std::runtime_error when the doubling search hits its cap. The returned
// constants are re-verified against recipe_residuals before returning.
ContractionConstants contraction_constants(double beta, double L, double delta,
                                           const ConvexityModulus& A,
                                           const LengthModulus& f);

// Packages shadowing constants from chosen parts (used for small-scale
// instances where the full recipe's radii would dwarf the space):
// r = 2r' + r'' + f(beta), T = r - r' - f(beta), delta_prime = the
// resulting shadow_bound. Validates r' > 0, r'' > f(beta), and the ratio
// floor.
ContractionConstants shadow_constants(double beta, double L, double r_prime,
                                      double r_double_prime,
                                      const ConvexityModulus& A,
                                      const LengthModulus& f);

// Single-instance shadowing check. With tau = l(c_{x2,x}) - l(c_{x1,x}),
// verifies on `grid` points t in [T - r', T + r'] that
//   d(c_{x1,x}(t), c_{x2,x}(t + tau)) <= shadow_bound(c, beta, L, A, f)
// using the certified lower estimate on one-sided spaces. Requires the
// monotonized decreasing-tail flag on A, d(x1, x2) <= beta and
// l(c_{x1,x}) <= r + L (std::invalid_argument otherwise).
PropertyReport check_shadow_lemma(const Space& s, const ConvexityModulus& A,
                                  const LengthModulus& f,
                                  const ContractionConstants& c, double beta,
                                  double L, const Point& x1, const Point& x2,
                                  const Point& x, int grid);

// Sweep form of the shadowing check: samples x1 at the check scale, pulls
// x2 into the beta-ball around it and x into P_{r+L}(x1) along
// distinguished paths, and takes the worst grid violation per sample.
PropertyReport check_shadow_sweep(const Space& s, const ConvexityModulus& A,
                                  const LengthModulus& f,
                                  const ContractionConstants& c, double beta,
                                  double L, const CheckParams& p);

// Contraction in the flow metric: derives constants from (beta, L, delta),
// samples triples (x1, x2, x) with d(x1, x2) <= beta and x in P_{r+L}(x1),
// pulls the far endpoint back to z_i = c_{x_i, x}(r), and verifies that
// some tau — the length-difference witness l(c_{x2,x}) - l(c_{x1,x}) or a
// grid point in [-f(beta), f(beta)] — achieves
//   fs(shift_T c_{x1,z1}, shift_{T+tau} c_{x2,z2}) <= delta
// within quadrature error (certified lower values on one-sided spaces).
PropertyReport check_contraction(const Space& s, const ConvexityModulus& A,
                                 const LengthModulus& f, double beta, double L,
                                 double delta, const CheckParams& p);

}  // namespace bicomb
