#pragma once

#include <vector>

#include "bicomb/space.hpp"

namespace bicomb::h2 {

// Upper half-plane, metric ds^2 = (dx^2 + dy^2) / y^2.
struct H2Point {
  double x = 0.0;
  double y = 1.0;
};

void validate(const H2Point& p);  // throws std::domain_error on y <= 0 / non-finite

double distance(const H2Point& p, const H2Point& q);

// Constant-speed geodesic, gamma(0) = p, gamma(1) = q.
H2Point geodesic(const H2Point& p, const H2Point& q, double t);

// Angle defect via the hyperbolic law of cosines. Degenerate triangles
// (coincident or collinear vertices) give 0.
double triangle_area(const H2Point& p, const H2Point& q, const H2Point& r);

// Largest area of a triangle having a side of length r:
// pi - 2*acos(tanh(r/2)). Throws std::domain_error for r < 0.
double max_area_for_side(double r);

// Sampled path with strictly increasing time stamps.
struct H2Path {
  std::vector<double> t;
  std::vector<H2Point> p;
  H2Path(std::vector<double> ts, std::vector<H2Point> ps);
};

// Line integral of the connection form dx/y along the sampled path,
// chord rule (each chord integrated in closed form). Positive drift around a
// positively oriented loop equals the enclosed area.
double transport_drift(const H2Path& path);

// Same integral along the geodesic from p to q, exact: zero on vertical
// lines, the angle difference theta_p - theta_q on circles centered on the
// real axis (dx/y = -dtheta there).
double geodesic_drift(const H2Point& p, const H2Point& q);

// Chord-rule value refined by doubling until it moves less than tol.
double geodesic_drift_adaptive(const H2Point& p, const H2Point& q, double tol);

// Exact signed loop integral around the geodesic triangle p -> q -> r -> p.
// Equals the oriented area.
double signed_triangle_drift(const H2Point& p, const H2Point& q, const H2Point& r);

struct Holonomy {
  double loop_drift = 0.0;
  double area = 0.0;
  double residual = 0.0;  // | |loop_drift| - area |
};

// Closes the triangle loop with `samples_per_side` chords per side and
// compares the transported drift against the angle-defect area.
Holonomy holonomy_check(const H2Point& p, const H2Point& q, const H2Point& r,
                        int samples_per_side);

// Real Moebius transformation z -> (az + b)/(cz + d), ad - bc > 0.
struct Moebius {
  double a = 1, b = 0, c = 0, d = 1;
  H2Point apply(const H2Point& z) const;
  // Rotation the differential applies to the global frame at z:
  // -2 * arg(c z + d) after det-normalization.
  double frame_rotation(const H2Point& z) const;
  Moebius inverse() const;
  Moebius operator*(const Moebius& o) const;  // composition: this after o
};

// Verifies once that the drift sign convention matches oriented area on a
// reference counterclockwise triangle; throws std::logic_error otherwise.
void assert_orientation_convention();

class Space final : public bicomb::Space {
 public:
  Space();
  int dim() const override { return 2; }
  double dist(const Point& a, const Point& b) const override;
  Point bicombe(const Point& x, const Point& y, double t) const override;
  Point sample(Rng& rng, double scale) const override;
  double declared_tol() const override { return 1e-9; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

  static H2Point unpack(const Point& p);
  static Point pack(const H2Point& p);

 private:
  std::vector<Isometry> isos_;
};

}  // namespace bicomb::h2
