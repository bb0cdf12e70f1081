#include "bicomb/product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bicomb {

ProductSpace::ProductSpace(SpacePtr left, SpacePtr right, std::string name)
    : Space(name.empty() ? left->name() + "x" + right->name() : std::move(name)),
      left_(std::move(left)),
      right_(std::move(right)),
      dim_(left_->dim() + right_->dim()),
      one_sided_(left_->one_sided() || right_->one_sided()),
      scale_(std::min(left_->default_scale(), right_->default_scale())),
      tol_(std::max(left_->declared_tol(), right_->declared_tol())) {
  if (dim_ > static_cast<int>(Point::kMaxDim))
    throw std::invalid_argument("ProductSpace: combined dimension too large");
  for (const auto& iso : left_->isometries()) {
    auto inner = iso.map;
    isos_.push_back({"left:" + iso.label, [this, inner](const Point& p) {
                       return glue(inner(left_of(p)), right_of(p));
                     }});
  }
  for (const auto& iso : right_->isometries()) {
    auto inner = iso.map;
    isos_.push_back({"right:" + iso.label, [this, inner](const Point& p) {
                       return glue(left_of(p), inner(right_of(p)));
                     }});
  }
}

Point ProductSpace::left_of(const Point& p) const {
  if (static_cast<int>(p.size()) != dim_)
    throw std::domain_error("ProductSpace: dimension mismatch");
  Point q;
  for (int i = 0; i < left_->dim(); ++i) q.push(p[i]);
  return q;
}

Point ProductSpace::right_of(const Point& p) const {
  if (static_cast<int>(p.size()) != dim_)
    throw std::domain_error("ProductSpace: dimension mismatch");
  Point q;
  for (int i = left_->dim(); i < dim_; ++i) q.push(p[i]);
  return q;
}

Point ProductSpace::glue(const Point& a, const Point& b) {
  Point p = a;
  for (double v : b) p.push(v);
  return p;
}

double ProductSpace::dist(const Point& a, const Point& b) const {
  return std::hypot(left_->dist(left_of(a), left_of(b)),
                    right_->dist(right_of(a), right_of(b)));
}

double ProductSpace::dist_lower(const Point& a, const Point& b) const {
  return std::hypot(left_->dist_lower(left_of(a), left_of(b)),
                    right_->dist_lower(right_of(a), right_of(b)));
}

Point ProductSpace::bicombe(const Point& x, const Point& y, double t) const {
  return glue(left_->bicombe(left_of(x), left_of(y), t),
              right_->bicombe(right_of(x), right_of(y), t));
}

double ProductSpace::path_length(const Point& x, const Point& y) const {
  return std::hypot(left_->path_length(left_of(x), left_of(y)),
                    right_->path_length(right_of(x), right_of(y)));
}

Point ProductSpace::sample(Rng& rng, double scale) const {
  return glue(left_->sample(rng, scale), right_->sample(rng, scale));
}

}  // namespace bicomb
