#pragma once

#include "bicomb/checks.hpp"
#include "bicomb/point.hpp"
#include "bicomb/report.hpp"
#include "bicomb/space.hpp"

namespace bicomb {

// A unit-speed path following the space's distinguished path from x to y,
// constant outside of it, pre-composed with a time shift: as a map it is
// t -> path(clamp(t + shift, 0, l)) where l is the path length of (x, y).
// The space pointer is non-owning; trails are transient values.
struct Trail {
  const Space* space = nullptr;
  Point x;
  Point y;
  double shift = 0.0;
};

double trail_length(const Trail& c);  // path length between the endpoints
double trail_cmin(const Trail& c);    // where the moving part starts: -shift
double trail_cmax(const Trail& c);    // where it ends: length - shift
Point trail_eval(const Trail& c, double t);

// Time shift: flow_shift(c, tau) evaluates to c(t + tau).
Trail flow_shift(const Trail& c, double tau);

// Freeze c outside [a, b]: the result agrees with c on [a, b] and is
// constant beyond. Requires a < b.
Trail restrict_trail(const Trail& c, double a, double b);

struct FlowDistance {
  double value = 0.0;
  double error_bound = 0.0;
};

// Integral distance between trails in the same space:
//   fs(c, d) = integral of d(c(t), d(t)) / (2 e^|t|) dt.
// The constant tails beyond the outermost breakpoints integrate in closed
// form; if a tail starts extremely far out the window is clipped and the
// remainder is bounded through the 1-Lipschitz growth
// d(c(t), d(t)) <= d(c(T), d(T)) + 2|t - T|; the interior uses adaptive
// Simpson. Throws std::runtime_error when error_bound cannot be brought
// below tol. With lower = true (for one-sided spaces) the integrand uses
// the certified lower estimate and value - error_bound is a true lower
// bound; by default the certified upper estimate is integrated and
// value + error_bound is a true upper bound.
FlowDistance fs_distance(const Trail& c, const Trail& d, double tol = 1e-9,
                         bool lower = false);

// Property sweeps over random trail pairs (endpoints at the check scale,
// shifts and probe times uniform in [-3, 3]).

// Pointwise comparison: d(c(t0), d(t0)) <= e^|t0| fs(c, d) + 2.
PropertyReport check_flow_eval(const Space& s, const CheckParams& p);

// Shift bounds: fs(shift_tau c, shift_sigma d) <= e^|tau| fs(c, d)
// + |sigma - tau|, and fs(shift_tau c, c) <= |tau|.
PropertyReport check_flow_shift(const Space& s, const CheckParams& p);

// Restriction agrees with the original on [a, b], freezes at c(a) / c(b)
// outside, and its moving window is the overlap of [a, b] with the
// original's.
PropertyReport check_flow_restrict(const Space& s, const CheckParams& p);

}  // namespace bicomb
