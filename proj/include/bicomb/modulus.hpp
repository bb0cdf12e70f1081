#pragma once

#include <functional>
#include <string>

namespace bicomb {

// Convexity modulus A(t, s, s'). The flags record which monotonicity
// properties the modulus is known to satisfy; the monotonization below
// produces all four.
struct ConvexityModulus {
  std::function<double(double, double, double)> eval;
  std::string name;
  bool increasing_in_s = false;
  bool increasing_in_s2 = false;
  bool increasing_head = false;   // in t on [0, 1/3]
  bool decreasing_tail = false;   // in t on [2/3, 1]

  double operator()(double t, double s, double s2) const { return eval(t, s, s2); }
};

// Length modulus f: continuous, f(0) = 0, bounds |l(x,y) - l(x',y')| by
// f(d(x,x') + d(y,y')).
struct LengthModulus {
  std::function<double(double)> eval;
  std::string name;
  double operator()(double s) const { return eval(s); }
};

// A(t,s,s') = (1-t)s + t s'.
ConvexityModulus linear_modulus();

// factor * base, used for negative controls such as half the linear modulus.
ConvexityModulus scaled_modulus(const ConvexityModulus& base, double factor,
                                const std::string& name);

// Monotone envelope: B takes the max of A over the rectangle [0,s] x [0,s'];
// the t coordinate is then flattened to be increasing on [0,1/3], decreasing
// on [2/3,1], and at least the chord interpolation in between. Maxima are
// located on a grid of `grid_res` points per axis and refined by golden
// section around the best cell. grid_res >= 16.
ConvexityModulus monotonize_modulus(const ConvexityModulus& a, int grid_res = 24);

LengthModulus identity_length_modulus();
LengthModulus zero_length_modulus();  // negative control, not a valid modulus
LengthModulus scaled_identity_length_modulus(double factor, const std::string& name);

// l2 combinations used by product spaces.
ConvexityModulus l2_combined_modulus(const ConvexityModulus& a1,
                                     const ConvexityModulus& a2);
LengthModulus l2_combined_length_modulus(const LengthModulus& f1,
                                         const LengthModulus& f2);

}  // namespace bicomb
