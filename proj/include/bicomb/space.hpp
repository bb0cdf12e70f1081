#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bicomb/point.hpp"
#include "bicomb/rng.hpp"

namespace bicomb {

struct Isometry {
  std::string label;
  std::function<Point(const Point&)> map;
};

// A metric space carrying a distinguished path assignment gamma_{x,y} with
// constant-speed parameterization. `dist` is the exact metric where one is
// computable; spaces flagged `one_sided` return a certified upper estimate
// from `dist` and a certified lower estimate from `dist_lower`, and the
// checkers downgrade to sound necessary-condition form.
class Space {
 public:
  virtual ~Space() = default;

  const std::string& name() const { return name_; }
  virtual int dim() const = 0;

  virtual double dist(const Point& a, const Point& b) const = 0;
  virtual double dist_lower(const Point& a, const Point& b) const { return dist(a, b); }
  virtual bool one_sided() const { return false; }

  virtual Point bicombe(const Point& x, const Point& y, double t) const = 0;

  // Length of gamma_{x,y}; equals dist for geodesic assignments.
  virtual double path_length(const Point& x, const Point& y) const { return dist(x, y); }

  virtual Point sample(Rng& rng, double scale) const = 0;
  virtual double default_scale() const { return 2.5; }
  virtual double declared_tol() const = 0;

  virtual const std::vector<Isometry>& isometries() const {
    static const std::vector<Isometry> kNone;
    return kNone;
  }

 protected:
  explicit Space(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

using SpacePtr = std::shared_ptr<const Space>;

}  // namespace bicomb
