#include "bicomb/h2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace bicomb::h2 {
namespace {

constexpr double kDegenerate = 1e-14;

// Exact hyperbolic length of the Euclidean chord between two points; also the
// building block of the mesh oracles in the tests.
double chord_drift(const H2Point& a, const H2Point& b) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  if (std::abs(dy) <= 1e-9 * std::min(a.y, b.y)) return dx * 2.0 / (a.y + b.y);
  return dx * std::log(b.y / a.y) / dy;
}

double side_drift_sampled(const H2Point& p, const H2Point& q, int n) {
  double s = 0.0;
  H2Point prev = p;
  for (int i = 1; i <= n; ++i) {
    H2Point cur = geodesic(p, q, static_cast<double>(i) / n);
    s += chord_drift(prev, cur);
    prev = cur;
  }
  return s;
}

}  // namespace

void validate(const H2Point& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw std::domain_error("h2: non-finite coordinates");
  if (!(p.y > 0.0)) throw std::domain_error("h2: point below the real axis");
}

double distance(const H2Point& p, const H2Point& q) {
  validate(p);
  validate(q);
  double dx = p.x - q.x;
  double dy = p.y - q.y;
  // 2*asinh form of the arcosh metric formula; stable for nearby points.
  return 2.0 * std::asinh(std::sqrt((dx * dx + dy * dy) / (4.0 * p.y * q.y)));
}

H2Point geodesic(const H2Point& p, const H2Point& q, double t) {
  if (!std::isfinite(t)) throw std::domain_error("h2: non-finite parameter");
  t = std::clamp(t, 0.0, 1.0);
  double d = distance(p, q);
  if (d < kDegenerate)
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
  // Hyperboloid interpolation written with positive weights only:
  // the half-plane inverse needs X0 - X1 = 1/y, and that combination is a
  // positive linear combination of the endpoints' 1/y, so no cancellation.
  // alpha = sinh((1-t)d)/sinh(d), beta = sinh(td)/sinh(d), in exp-scaled form.
  double denom = -std::expm1(-2.0 * d);
  double alpha = std::exp(-t * d) * (-std::expm1(-2.0 * (1.0 - t) * d)) / denom;
  double beta = std::exp(-(1.0 - t) * d) * (-std::expm1(-2.0 * t * d)) / denom;
  double wp = alpha / p.y;
  double wq = beta / q.y;
  double w = wp + wq;
  return {(wp * p.x + wq * q.x) / w, 1.0 / w};
}

double triangle_area(const H2Point& p, const H2Point& q, const H2Point& r) {
  double a = distance(q, r);
  double b = distance(p, r);
  double c = distance(p, q);
  if (a < kDegenerate || b < kDegenerate || c < kDegenerate) return 0.0;
  auto angle = [](double opp, double s1, double s2) {
    double v = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) /
               (std::sinh(s1) * std::sinh(s2));
    return std::acos(std::clamp(v, -1.0, 1.0));
  };
  double defect = 3.14159265358979323846 - angle(a, b, c) - angle(b, a, c) -
                  angle(c, a, b);
  return std::max(0.0, defect);
}

double max_area_for_side(double r) {
  if (!(r >= 0.0)) throw std::domain_error("max_area_for_side: negative side length");
  return 3.14159265358979323846 - 2.0 * std::acos(std::tanh(r / 2.0));
}

H2Path::H2Path(std::vector<double> ts, std::vector<H2Point> ps)
    : t(std::move(ts)), p(std::move(ps)) {
  if (t.size() != p.size() || t.size() < 2)
    throw std::invalid_argument("H2Path: need >= 2 samples with matching stamps");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1]))
      throw std::invalid_argument("H2Path: time stamps must strictly increase");
  for (const auto& pt : p) validate(pt);
}

double transport_drift(const H2Path& path) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < path.p.size(); ++i)
    s += chord_drift(path.p[i], path.p[i + 1]);
  return s;
}

double geodesic_drift(const H2Point& p, const H2Point& q) {
  validate(p);
  validate(q);
  double dx = p.x - q.x;
  if (dx == 0.0) return 0.0;  // vertical line, dx/y vanishes
  // Circle center on the real axis, cancellation-free form.
  double c = 0.5 * (p.x + q.x) + (p.y + q.y) * (p.y - q.y) / (2.0 * dx);
  double tp = std::atan2(p.y, p.x - c);
  double tq = std::atan2(q.y, q.x - c);
  return tp - tq;
}

double geodesic_drift_adaptive(const H2Point& p, const H2Point& q, double tol) {
  if (!(tol > 0)) throw std::domain_error("geodesic_drift_adaptive: tol <= 0");
  int n = 8;
  double prev = side_drift_sampled(p, q, n);
  double prev_rich = prev;
  for (int it = 0; it < 18; ++it) {
    n *= 2;
    double cur = side_drift_sampled(p, q, n);
    double rich = (4.0 * cur - prev) / 3.0;  // chord error is O(n^-2)
    if (std::abs(rich - prev_rich) <= tol * 0.5) return rich;
    prev = cur;
    prev_rich = rich;
  }
  return prev_rich;
}

double signed_triangle_drift(const H2Point& p, const H2Point& q, const H2Point& r) {
  return geodesic_drift(p, q) + geodesic_drift(q, r) + geodesic_drift(r, p);
}

Holonomy holonomy_check(const H2Point& p, const H2Point& q, const H2Point& r,
                        int samples_per_side) {
  if (samples_per_side < 1)
    throw std::invalid_argument("holonomy_check: need >= 1 sample per side");
  Holonomy h;
  h.loop_drift = side_drift_sampled(p, q, samples_per_side) +
                 side_drift_sampled(q, r, samples_per_side) +
                 side_drift_sampled(r, p, samples_per_side);
  h.area = triangle_area(p, q, r);
  h.residual = std::abs(std::abs(h.loop_drift) - h.area);
  return h;
}

H2Point Moebius::apply(const H2Point& z) const {
  validate(z);
  if (!(a * d - b * c > 0.0)) throw std::domain_error("Moebius: determinant <= 0");
  std::complex<double> w(z.x, z.y);
  std::complex<double> img = (a * w + b) / (c * w + d);
  H2Point out{img.real(), img.imag()};
  validate(out);
  return out;
}

double Moebius::frame_rotation(const H2Point& z) const {
  // arg of the derivative det/(cz+d)^2; det > 0 contributes nothing.
  return -2.0 * std::arg(std::complex<double>(c * z.x + d, c * z.y));
}

Moebius Moebius::inverse() const { return {d, -b, -c, a}; }

Moebius Moebius::operator*(const Moebius& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

void assert_orientation_convention() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    H2Point p{0.0, 1.0}, q{1.0, 1.0}, r{0.5, 1.5};  // counterclockwise
    double signed_drift = signed_triangle_drift(p, q, r);
    double area = triangle_area(p, q, r);
    if (!(signed_drift > 0.0) || std::abs(signed_drift - area) > 1e-9)
      throw std::logic_error("h2: drift sign convention broken");
  });
}

Space::Space() : bicomb::Space("h2") {
  double u = 0.4;
  Moebius a{std::exp(u), 0, 0, std::exp(-u)};           // axis: imaginary half-line
  Moebius b{std::cosh(u), std::sinh(u), std::sinh(u), std::cosh(u)};  // axis: unit circle
  auto lift = [](const Moebius& m) {
    return [m](const Point& p) { return pack(m.apply(unpack(p))); };
  };
  isos_.push_back({"a", lift(a)});
  isos_.push_back({"a^-1", lift(a.inverse())});
  isos_.push_back({"b", lift(b)});
  isos_.push_back({"b^-1", lift(b.inverse())});
}

H2Point Space::unpack(const Point& p) {
  if (p.size() != 2) throw std::domain_error("h2: point needs 2 coordinates");
  return {p[0], p[1]};
}

Point Space::pack(const H2Point& p) { return Point{p.x, p.y}; }

double Space::dist(const Point& a, const Point& b) const {
  return distance(unpack(a), unpack(b));
}

Point Space::bicombe(const Point& x, const Point& y, double t) const {
  return pack(geodesic(unpack(x), unpack(y), t));
}

Point Space::sample(Rng& rng, double scale) const {
  // Exponential map around (0,1); radius capped so that every pair of
  // sampled points stays well inside double range in the distance formula.
  double rho = rng.uniform(0.0, std::min(scale, 25.0));
  double phi = rng.uniform(0.0, 6.283185307179586476925286766559);
  double ch = std::cosh(rho), sh = std::sinh(rho);
  double x0 = ch, x1 = sh * std::cos(phi), x2 = sh * std::sin(phi);
  double y = 1.0 / (x0 - x1);
  return Point{x2 * y, y};
}

}  // namespace bicomb::h2
