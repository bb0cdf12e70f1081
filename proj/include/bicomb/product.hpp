#pragma once

#include <vector>

#include "bicomb/space.hpp"

namespace bicomb {

// l2 product: coordinates are concatenated, distances combine as
// sqrt(d1^2 + d2^2), and paths run component-wise (which keeps them constant
// speed). Inherits one-sidedness from either factor; certified estimates
// combine factor-wise.
class ProductSpace final : public Space {
 public:
  ProductSpace(SpacePtr left, SpacePtr right, std::string name = "");
  int dim() const override { return dim_; }
  double dist(const Point& a, const Point& b) const override;
  double dist_lower(const Point& a, const Point& b) const override;
  bool one_sided() const override { return one_sided_; }
  Point bicombe(const Point& x, const Point& y, double t) const override;
  double path_length(const Point& x, const Point& y) const override;
  Point sample(Rng& rng, double scale) const override;
  double default_scale() const override { return scale_; }
  double declared_tol() const override { return tol_; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

 private:
  Point left_of(const Point& p) const;
  Point right_of(const Point& p) const;
  static Point glue(const Point& a, const Point& b);

  SpacePtr left_, right_;
  int dim_;
  bool one_sided_;
  double scale_;
  double tol_;
  std::vector<Isometry> isos_;
};

}  // namespace bicomb
