#pragma once

#include <vector>

#include "bicomb/space.hpp"

namespace bicomb {

// Flat R^n with the straight-line path assignment.
class EuclideanSpace final : public Space {
 public:
  explicit EuclideanSpace(int dim, std::string name = "");
  int dim() const override { return dim_; }
  double dist(const Point& a, const Point& b) const override;
  Point bicombe(const Point& x, const Point& y, double t) const override;
  Point sample(Rng& rng, double scale) const override;
  double declared_tol() const override { return 1e-12; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

 private:
  int dim_;
  std::vector<Isometry> isos_;
};

}  // namespace bicomb
