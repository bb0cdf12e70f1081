#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bicomb/checks.hpp"
#include "bicomb/rng.hpp"
#include "bicomb/sl2.hpp"

using namespace bicomb;
using namespace bicomb::sl2;

namespace {
Sl2Point random_point(Rng& rng, double box = 2.0) {
  return {rng.uniform(-box, box), std::exp(rng.uniform(-1, 1)),
          rng.uniform(-box, box)};
}
}  // namespace

TEST_CASE("strip coordinates round-trip through the distinguished path") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Sl2Point a = random_point(rng);
    Sl2Point b = random_point(rng);
    StripCoords sc = strip_coords(a, b);
    CHECK(sc.base == doctest::Approx(h2::distance({a.x, a.y}, {b.x, b.y}))
                         .epsilon(1e-12));
    Sl2Point end = interpolate(a, b, 1.0);
    CHECK(path_upper(end, b) < 1e-8);
    Sl2Point start = interpolate(a, b, 0.0);
    CHECK(path_upper(start, a) < 1e-12);
    // midpoint sits at half the strip vector
    StripCoords half = strip_coords(a, interpolate(a, b, 0.5));
    CHECK(std::abs(half.base - sc.base / 2) < 1e-9);
    CHECK(std::abs(half.h - sc.h / 2) < 1e-9);
  }
}

TEST_CASE("degenerate base pair interpolates the fiber linearly") {
  Sl2Point a{0.5, 1.2, 0.0}, b{0.5, 1.2, 2.0};
  StripCoords sc = strip_coords(a, b);
  CHECK(sc.base == doctest::Approx(0.0));
  CHECK(std::abs(sc.h - 2.0) < 1e-12);
  Sl2Point mid = interpolate(a, b, 0.25);
  CHECK(std::abs(mid.x - 0.5) < 1e-12);
  CHECK(std::abs(mid.y - 1.2) < 1e-12);
  CHECK(std::abs(mid.theta - 0.5) < 1e-12);
  CHECK(std::abs(path_upper(a, b) - 2.0) < 1e-12);
}

TEST_CASE("equal fibers after transport give a horizontal strip vector") {
  // vertical base geodesic: no drift, so h is the raw fiber difference
  Sl2Point a{0, 1, 0.3}, b{0, 2.718281828459045, 0.3};
  StripCoords sc = strip_coords(a, b);
  CHECK(std::abs(sc.h) < 1e-12);
  CHECK(std::abs(sc.base - 1.0) < 1e-12);
  CHECK(std::abs(path_upper(a, b) - 1.0) < 1e-12);
}

TEST_CASE("path length against the metric-integration oracle") {
  Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    Sl2Point a = random_point(rng);
    Sl2Point b = random_point(rng);
    double closed = path_upper(a, b);
    double quad = path_length_quadrature(a, b, 4000);
    CHECK(std::abs(closed - quad) < 1e-5);
    CHECK(closed >= path_lower(a, b) - 1e-12);
    CHECK(closed >= std::abs(strip_coords(a, b).h) - 1e-12);
    CHECK(std::abs(path_upper(b, a) - closed) < 1e-9);
  }
}

TEST_CASE("frozen modulus values") {
  CHECK(std::abs(area_gain(1) - 0.9607621582674589) < 1e-13);
  CHECK(std::abs(area_gain(2) - 1.7315389664793172) < 1e-13);
  CHECK(area_gain(0) == 0.0);
  CHECK(std::abs(convexity_gain(0.5, 1.0) - 3.0169733993826232) < 1e-12);
  CHECK(std::abs(convexity_gain(1.0, 1.0) - 6.0053684509207531) < 1e-12);
  CHECK(std::abs(convexity_gain(0.25, 2.0) - 2.9701443035614206) < 1e-12);
  CHECK(std::abs(length_modulus_value(1.0) - 8.1701008254154365) < 1e-12);
  CHECK(std::abs(length_modulus_value(0.5) - 4.1131558163370791) < 1e-12);
}

TEST_CASE("modulus boundary behaviour") {
  for (double r : {0.1, 0.7, 1.3, 2.9}) {
    CHECK(convexity_gain(0.0, r) == doctest::Approx(0.0));
    CHECK(std::abs(convexity_combined(0.0, 0.0, r) - convexity_gain(1.0, r)) <
          1e-12);
  }
  for (double t : {0.1, 0.5, 0.9}) CHECK(convexity_gain(t, 0.0) == doctest::Approx(0.0));
  // the printed combination does not vanish at (1, s, 0)
  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(convexity_combined(1.0, s, 0.0) - convexity_gain(1.0, s)) <
          1e-12);
    CHECK(convexity_combined(1.0, s, 0.0) > 1.0);
  }
  // f' >= 3x, i.e. f >= 6x
  for (double x = 0.05; x < 4.0; x += 0.05)
    CHECK(length_modulus_value(x) >= 6.0 * x - 1e-12);
  // monotone, vanishing at 0
  CHECK(length_modulus_value(0.0) == 0.0);
  double prev = 0.0;
  for (double x = 0.1; x < 5.0; x += 0.1) {
    CHECK(length_modulus_value(x) >= prev);
    prev = length_modulus_value(x);
  }
}

TEST_CASE("certified distance bounds tighten as the mesh refines") {
  Rng rng(19);
  for (int i = 0; i < 15; ++i) {
    Sl2Point a = random_point(rng, 1.5);
    Sl2Point b = random_point(rng, 1.5);
    DistanceBounds d16 = distance_bounds(a, b, 16);
    DistanceBounds d32 = distance_bounds(a, b, 32);
    DistanceBounds d64 = distance_bounds(a, b, 64);
    CHECK(d16.lower <= d16.upper + 1e-12);
    CHECK(d16.upper <= path_upper(a, b) + 1e-9);
    CHECK(d32.upper <= d16.upper + 1e-9);
    CHECK(d64.upper <= d32.upper + 1e-9);
    CHECK(d64.lower <= d64.upper + 1e-12);
  }
  Sl2Point p{0.3, 1.1, -0.4};
  DistanceBounds same = distance_bounds(p, p, 16);
  CHECK(same.lower == 0.0);
  CHECK(same.upper < 1e-12);
}

TEST_CASE("horizontal pairs are resolved exactly by the bounds") {
  Sl2Point a{0, 1, 0.3}, b{0, 2.718281828459045, 0.3};
  DistanceBounds d = distance_bounds(a, b, 64);
  CHECK(std::abs(d.lower - 1.0) < 1e-9);
  CHECK(std::abs(d.upper - 1.0) < 1e-6);
}

TEST_CASE("paper bounds relating strip height, length, and distance") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    Sl2Point a = random_point(rng, 1.5);
    Sl2Point b = random_point(rng, 1.5);
    DistanceBounds d = distance_bounds(a, b, 16);
    StripCoords sc = strip_coords(a, b);
    CHECK(std::abs(sc.h) <= 3.0 * d.upper + 1e-9);
    CHECK(path_upper(a, b) <= 3.1622776601683795 * d.upper + 1e-9);
  }
}

TEST_CASE("lifted Moebius maps preserve the strip data") {
  h2::Moebius m{1.3, 0.4, 0.2, 1.0};
  Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    Sl2Point a = random_point(rng);
    Sl2Point b = random_point(rng);
    StripCoords before = strip_coords(a, b);
    StripCoords after = strip_coords(lift_apply(m, a), lift_apply(m, b));
    CHECK(std::abs(before.base - after.base) < 1e-10);
    CHECK(std::abs(before.h - after.h) < 1e-9);
    double t = rng.uniform();
    Sl2Point inner = lift_apply(m, interpolate(a, b, t));
    Sl2Point outer = interpolate(lift_apply(m, a), lift_apply(m, b), t);
    CHECK(path_upper(inner, outer) < 1e-8);
  }
}

TEST_CASE("chain residuals collapse on degenerate inputs") {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    Sl2Point a = random_point(rng, 1.0);
    Sl2Point b = random_point(rng, 1.0);
    ChainResiduals same = chain_residuals(a, b, b, rng.uniform());
    CHECK(same.worst() < 1e-9);
    ChainResiduals zero = chain_residuals(a, b, random_point(rng, 1.0), 0.0);
    CHECK(zero.worst() < 1e-9);
    CHECK(std::abs(length_difference_residual(a, b, b)) < 1e-9);
  }
}

TEST_CASE("computable convexity chain holds on 500 sampled triples") {
  sl2::Space s;
  CheckParams p;
  p.seed = 2;
  p.n = 500;
  p.tol = 1e-6;
  PropertyReport chain = check_chain_convexity(s, p);
  CHECK(chain.passed);
  CHECK(chain.mode == "one_sided");
  PropertyReport len = check_length_difference(s, p);
  CHECK(len.passed);
}

TEST_CASE("model space wrapper: one-sided estimates and packing") {
  sl2::Space s;
  CHECK(s.one_sided());
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Point a = s.sample(rng, 1.5);
    Point b = s.sample(rng, 1.5);
    CHECK(s.dist_lower(a, b) <= s.dist(a, b) + 1e-12);
    Sl2Point ua = sl2::Space::unpack(a);
    CHECK(sl2::Space::pack(ua) == a);
  }
}
