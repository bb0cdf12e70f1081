#include "bicomb/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bicomb {
namespace {

constexpr double kGolden = 0.6180339887498948482;

// Maximize f on [lo, hi]: coarse grid including both endpoints, then golden
// section around the best grid point. Never returns less than the grid max,
// so maxima attained at endpoints are exact.
double line_max(const std::function<double(double)>& f, double lo, double hi, int res) {
  if (!(hi > lo)) return f(lo);
  double best = -std::numeric_limits<double>::infinity();
  int besti = 0;
  for (int i = 0; i <= res; ++i) {
    double x = lo + (hi - lo) * i / res;
    double v = f(x);
    if (v > best) {
      best = v;
      besti = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, besti - 1) / res;
  double b = lo + (hi - lo) * std::min(res, besti + 1) / res;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 48 && b - a > 1e-14 * (hi - lo); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
    best = std::max(best, std::max(f1, f2));
  }
  return best;
}

// Maximize f over the rectangle [0,s] x [0,s2].
double rect_max(const std::function<double(double, double)>& f, double s, double s2,
                int res) {
  if (s <= 0 && s2 <= 0) return f(0, 0);
  if (s <= 0) return line_max([&](double r2) { return f(0, r2); }, 0, s2, res);
  if (s2 <= 0) return line_max([&](double r) { return f(r, 0); }, 0, s, res);
  double best = -std::numeric_limits<double>::infinity();
  double br = 0, br2 = 0;
  for (int i = 0; i <= res; ++i) {
    for (int j = 0; j <= res; ++j) {
      double r = s * i / res, r2 = s2 * j / res;
      double v = f(r, r2);
      if (v > best) {
        best = v;
        br = r;
        br2 = r2;
      }
    }
  }
  // Coordinate-wise golden refinement around the best cell.
  for (int round = 0; round < 3; ++round) {
    double fixed2 = br2;
    double lo = std::max(0.0, br - s / res), hi = std::min(s, br + s / res);
    best = std::max(best, line_max([&](double r) { return f(r, fixed2); }, lo, hi, 8));
    double fixed = br;
    double lo2 = std::max(0.0, br2 - s2 / res), hi2 = std::min(s2, br2 + s2 / res);
    best = std::max(best, line_max([&](double r2) { return f(fixed, r2); }, lo2, hi2, 8));
  }
  return best;
}

}  // namespace

ConvexityModulus linear_modulus() {
  ConvexityModulus m;
  m.name = "linear";
  m.eval = [](double t, double s, double s2) { return (1.0 - t) * s + t * s2; };
  m.increasing_in_s = true;
  m.increasing_in_s2 = true;
  m.increasing_head = false;  // (1-t)s decreases in t
  m.decreasing_tail = true;
  return m;
}

ConvexityModulus scaled_modulus(const ConvexityModulus& base, double factor,
                                const std::string& name) {
  ConvexityModulus m = base;
  auto inner = base.eval;
  m.eval = [inner, factor](double t, double s, double s2) {
    return factor * inner(t, s, s2);
  };
  m.name = name;
  return m;
}

ConvexityModulus monotonize_modulus(const ConvexityModulus& a, int grid_res) {
  if (grid_res < 16) throw std::invalid_argument("monotonize_modulus: grid_res < 16");
  auto base = a.eval;
  int res = grid_res;

  // B(t,s,s') = max A(t, r, r') over the rectangle below (s, s').
  auto big_b = [base, res](double t, double s, double s2) {
    return rect_max([&](double r, double r2) { return base(t, r, r2); },
                    std::max(0.0, s), std::max(0.0, s2), res);
  };

  auto head = [big_b, res](double t, double s, double s2) {
    return line_max([&](double tp) { return big_b(tp, s, s2); }, 0.0, t, res);
  };
  auto tail = [big_b, res](double t, double s, double s2) {
    return line_max([&](double tp) { return big_b(tp, s, s2); }, t, 1.0, res);
  };

  ConvexityModulus m;
  m.name = a.name + "-monotone";
  m.eval = [big_b, head, tail](double t, double s, double s2) {
    t = std::clamp(t, 0.0, 1.0);
    if (t <= 1.0 / 3.0) return head(t, s, s2);
    if (t >= 2.0 / 3.0) return tail(t, s, s2);
    double left = head(1.0 / 3.0, s, s2);
    double right = tail(2.0 / 3.0, s, s2);
    double chord = (3.0 * t - 1.0) * right + (2.0 - 3.0 * t) * left;
    return std::max(big_b(t, s, s2), chord);
  };
  m.increasing_in_s = true;
  m.increasing_in_s2 = true;
  m.increasing_head = true;
  m.decreasing_tail = true;
  return m;
}

LengthModulus identity_length_modulus() {
  LengthModulus f;
  f.name = "identity";
  f.eval = [](double s) { return s; };
  return f;
}

LengthModulus zero_length_modulus() {
  LengthModulus f;
  f.name = "zero";
  f.eval = [](double) { return 0.0; };
  return f;
}

LengthModulus scaled_identity_length_modulus(double factor, const std::string& name) {
  LengthModulus f;
  f.name = name;
  f.eval = [factor](double s) { return factor * s; };
  return f;
}

ConvexityModulus l2_combined_modulus(const ConvexityModulus& a1,
                                     const ConvexityModulus& a2) {
  if (!(a1.increasing_in_s && a1.increasing_in_s2 && a2.increasing_in_s &&
        a2.increasing_in_s2)) {
    throw std::invalid_argument(
        "l2_combined_modulus: factors must be monotone in both distance "
        "arguments (monotonize first)");
  }
  ConvexityModulus m;
  m.name = "l2(" + a1.name + "," + a2.name + ")";
  auto e1 = a1.eval, e2 = a2.eval;
  m.eval = [e1, e2](double t, double s, double s2) {
    return std::hypot(e1(t, s, s2), e2(t, s, s2));
  };
  m.increasing_in_s = true;
  m.increasing_in_s2 = true;
  m.increasing_head = a1.increasing_head && a2.increasing_head;
  m.decreasing_tail = a1.decreasing_tail && a2.decreasing_tail;
  return m;
}

LengthModulus l2_combined_length_modulus(const LengthModulus& f1,
                                         const LengthModulus& f2) {
  LengthModulus f;
  f.name = "l2(" + f1.name + "," + f2.name + ")";
  auto e1 = f1.eval, e2 = f2.eval;
  f.eval = [e1, e2](double s) { return std::hypot(e1(s), e2(s)); };
  return f;
}

}  // namespace bicomb
