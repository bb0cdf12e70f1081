#pragma once

#include <vector>

#include "bicomb/checks.hpp"
#include "bicomb/h2.hpp"
#include "bicomb/modulus.hpp"
#include "bicomb/space.hpp"

namespace bicomb::sl2 {

// Point of the fibered model over the half-plane: base (x, y), fiber angle
// theta (the universal cover of the unit tangent bundle, so theta is a real
// number, not an angle mod 2*pi). Metric: ds^2_base + (dtheta + dx/y)^2.
struct Sl2Point {
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;
};

void validate(const Sl2Point& p);

// Flattened coordinates of b relative to a along the base geodesic:
// `base` is the half-plane distance between the base points and `h` is the
// fiber offset theta_b - theta_a + drift(base_a -> base_b). The strip of
// fibers over the base geodesic is flat in (arclength, theta + drift), so
// the distinguished path is a straight segment there.
struct StripCoords {
  double base = 0.0;
  double h = 0.0;
};

StripCoords strip_coords(const Sl2Point& a, const Sl2Point& b);

// The distinguished path: half-plane geodesic downstairs, straight line in
// the flattened strip upstairs.
Sl2Point interpolate(const Sl2Point& a, const Sl2Point& b, double t);

// Exact length of the distinguished path, sqrt(base^2 + h^2). An upper bound
// for the metric (the strip is isometrically immersed).
double path_upper(const Sl2Point& a, const Sl2Point& b);

// Base-projection lower bound for the metric (the projection that forgets
// theta is 1-Lipschitz).
double path_lower(const Sl2Point& a, const Sl2Point& b);

// Independent oracle: integrates sqrt(|dz/dt|^2 / y^2 + (dtheta/dt + (dx/dt)/y)^2)
// along the distinguished path with finite-difference velocities and a
// composite Simpson rule.
double path_length_quadrature(const Sl2Point& a, const Sl2Point& b, int segments);

// Moebius action lifted to the fibered model:
// (z, theta) -> (m z, theta - 2 arg(c z + d)) for det-normalized m.
// Preserves the metric, strip coordinates, and the distinguished paths.
Sl2Point lift_apply(const h2::Moebius& m, const Sl2Point& p);

// Largest hyperbolic triangle area over a side of length r:
// g(r) = pi - 2 acos(tanh(r/2)); g(0) = 0, g' (0) = 1, g <= min(r, pi).
double area_gain(double r);

// Length modulus: moving the two endpoints by a combined half-plane upper
// distance x moves the strip vector (base, h) by at most (x, 3x + g(x)), and
// the factor 2 absorbs the fiber contribution of the endpoint moves:
// f(x) = 2 sqrt(x^2 + (3x + g(x))^2).
double length_modulus_value(double x);
LengthModulus length_modulus();

// Per-endpoint convexity gain a(t, r) = sqrt((t r)^2 + (4 t r + t g(r) + g(t r))^2),
// the bound on how far two distinguished paths sharing their source have
// drifted apart at parameter t when the free endpoints sit r apart.
// a(0, r) = a(t, 0) = 0, increasing in both arguments.
double convexity_gain(double t, double r);

// The two-endpoint combination as printed for this model,
// a(t, x) + a(1 - t, x2). Note its boundary quirk: the value at (1, s, 0)
// is a(1, s), not 0, so as written it pairs the first separation with the
// far end of the parameter; kept verbatim, with measured boundary values
// recorded rather than forced.
double convexity_combined(double t, double x, double x2);

// The modulus handed to the generic convexity checker: the same function in
// the orientation where the first argument is the source separation, i.e.
// convexity_combined(1 - t, s, s2) = a(1 - t, s) + a(t, s2). Increasing in
// both distance arguments; not monotone in t when both separations are
// positive, so monotonize it for recipes that need the t-shape.
ConvexityModulus convexity_modulus();

// Certified two-sided distance estimates. `lower` is the base-projection
// distance. `upper` is the length of the best polyline found by locally
// relaxing a chain of `mesh` links between a and b, each link measured by
// its strip length — every link is a true upper bound for the metric, so
// the sum is too. The relaxation refines through a fixed mesh ladder and
// only ever accepts improvements, so upper never exceeds path_upper(a, b)
// and is non-increasing as the mesh doubles. Requires mesh >= 8.
struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
};
DistanceBounds distance_bounds(const Sl2Point& a, const Sl2Point& b, int mesh);

// Residuals of the computable convexity chain at parameter t for paths from
// a common source A to endpoints B, B2, with C = interpolate(A, B, t) and
// C2 = interpolate(A, B2, t):
//   base:     d(p(C), p(C2)) - t * d(p(B), p(B2)) (base convexity)
//   holonomy: strip h of (C, C2) against t * (h_B2 - h_B) plus the signed
//             drift around the base loop p(A) -> p(C) -> p(C2) -> p(A)
//             (an identity; checks the holonomy bookkeeping)
//   modulus:  path_upper(C, C2) - a(t, upper(B, B2)) (one-sided: a is
//             increasing, so feeding the certified upper estimate is sound)
struct ChainResiduals {
  double base = 0.0;
  double holonomy = 0.0;
  double modulus = 0.0;
  double worst() const;
};
ChainResiduals chain_residuals(const Sl2Point& a, const Sl2Point& b,
                               const Sl2Point& b2, double t);

// |l(gamma_{A,B}) - l(gamma_{A,B2})| - f'(upper(B, B2)) where f' is half
// the length modulus, sqrt(x^2 + (3x + g(x))^2).
double length_difference_residual(const Sl2Point& a, const Sl2Point& b,
                                  const Sl2Point& b2);

// Sweeps over random triples of diameter <= 3 (endpoints pulled into a
// radius-1.5 ball around the source along distinguished paths).
PropertyReport check_chain_convexity(const bicomb::Space& s,
                                     const CheckParams& p);
PropertyReport check_length_difference(const bicomb::Space& s,
                                       const CheckParams& p);

// The fibered model as a one-sided space: `dist` returns the certified upper
// estimate (strip length), `dist_lower` the certified lower estimate (base
// distance). Coordinates are packed [x, y, theta].
class Space final : public bicomb::Space {
 public:
  Space();
  int dim() const override { return 3; }
  double dist(const Point& a, const Point& b) const override;
  double dist_lower(const Point& a, const Point& b) const override;
  bool one_sided() const override { return true; }
  Point bicombe(const Point& x, const Point& y, double t) const override;
  double path_length(const Point& x, const Point& y) const override;
  Point sample(Rng& rng, double scale) const override;
  double declared_tol() const override { return 1e-6; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

  static Sl2Point unpack(const Point& p);
  static Point pack(const Sl2Point& p);

 private:
  std::vector<Isometry> isos_;
};

}  // namespace bicomb::sl2
