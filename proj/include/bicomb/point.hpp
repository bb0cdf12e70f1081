#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace bicomb {

// Fixed-capacity coordinate tuple. Spaces interpret their own coordinates
// (half-plane: [x,y]; fibered model: [x,y,theta]; products: concatenation;
// tree realizations: [edge_index, offset]).
class Point {
 public:
  static constexpr std::size_t kMaxDim = 8;

  Point() = default;
  Point(std::initializer_list<double> v) {
    if (v.size() > kMaxDim) throw std::length_error("Point: too many coordinates");
    for (double x : v) c_[n_++] = x;
  }

  static Point zeros(std::size_t n) {
    if (n > kMaxDim) throw std::length_error("Point: too many coordinates");
    Point p;
    p.n_ = n;
    return p;
  }

  std::size_t size() const { return n_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  void push(double v) {
    if (n_ == kMaxDim) throw std::length_error("Point: too many coordinates");
    c_[n_++] = v;
  }

  const double* begin() const { return c_.data(); }
  const double* end() const { return c_.data() + n_; }

  bool finite() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t n_ = 0;
};

}  // namespace bicomb
