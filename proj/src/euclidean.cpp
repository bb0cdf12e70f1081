#include "bicomb/euclidean.hpp"

#include <cmath>
#include <stdexcept>

namespace bicomb {

EuclideanSpace::EuclideanSpace(int dim, std::string name)
    : Space(name.empty() ? "euclidean" + std::to_string(dim) : std::move(name)),
      dim_(dim) {
  if (dim < 1 || dim > static_cast<int>(Point::kMaxDim))
    throw std::invalid_argument("EuclideanSpace: unsupported dimension");
  isos_.push_back({"shift", [](const Point& p) {
                     Point q = p;
                     q[0] += 1.25;
                     return q;
                   }});
  isos_.push_back({"shift^-1", [](const Point& p) {
                     Point q = p;
                     q[0] -= 1.25;
                     return q;
                   }});
  if (dim_ >= 2) {
    double co = std::cos(0.6), si = std::sin(0.6);
    isos_.push_back({"rot", [co, si](const Point& p) {
                       Point q = p;
                       q[0] = co * p[0] - si * p[1];
                       q[1] = si * p[0] + co * p[1];
                       return q;
                     }});
    isos_.push_back({"rot^-1", [co, si](const Point& p) {
                       Point q = p;
                       q[0] = co * p[0] + si * p[1];
                       q[1] = -si * p[0] + co * p[1];
                       return q;
                     }});
  }
}

double EuclideanSpace::dist(const Point& a, const Point& b) const {
  if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_)
    throw std::domain_error("EuclideanSpace: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point EuclideanSpace::bicombe(const Point& x, const Point& y, double t) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw std::domain_error("EuclideanSpace: dimension mismatch");
  Point p;
  for (int i = 0; i < dim_; ++i) p.push(x[i] + t * (y[i] - x[i]));
  return p;
}

Point EuclideanSpace::sample(Rng& rng, double scale) const {
  Point p;
  for (int i = 0; i < dim_; ++i) p.push(rng.uniform(-scale, scale));
  return p;
}

}  // namespace bicomb
