#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bicomb/contraction.hpp"
#include "bicomb/euclidean.hpp"
#include "bicomb/h2.hpp"
#include "bicomb/modulus.hpp"
#include "bicomb/trail.hpp"

using namespace bicomb;

TEST_CASE("trail evaluation clamps to the endpoints and follows the path") {
  EuclideanSpace s(2);
  Point x{0, 0}, y{3, 4};
  Trail c{&s, x, y, 0.0};
  CHECK(trail_length(c) == doctest::Approx(5.0));
  CHECK(trail_cmin(c) == 0.0);
  CHECK(trail_cmax(c) == doctest::Approx(5.0));
  CHECK(s.dist(trail_eval(c, -10), x) < 1e-12);
  CHECK(s.dist(trail_eval(c, 99), y) < 1e-12);
  Point mid = trail_eval(c, 2.5);
  CHECK(std::abs(mid[0] - 1.5) < 1e-12);
  CHECK(std::abs(mid[1] - 2.0) < 1e-12);
  // unit speed inside the window
  CHECK(s.dist(trail_eval(c, 1.0), trail_eval(c, 3.5)) == doctest::Approx(2.5));
}

TEST_CASE("time shift moves the window") {
  EuclideanSpace s(2);
  Trail c{&s, {0, 0}, {3, 4}, 0.0};
  Trail shifted = flow_shift(c, 2.0);
  CHECK(trail_cmin(shifted) == doctest::Approx(-2.0));
  CHECK(trail_cmax(shifted) == doctest::Approx(3.0));
  for (double t : {-3.0, -2.0, 0.0, 1.7, 3.0, 8.0})
    CHECK(s.dist(trail_eval(shifted, t), trail_eval(c, t + 2.0)) < 1e-12);
}

TEST_CASE("restriction freezes the trail outside the window") {
  EuclideanSpace s(2);
  Trail c{&s, {0, 0}, {10, 0}, 3.0};  // window [-3, 7]
  Trail r = restrict_trail(c, -1.0, 2.0);
  for (double t : {-1.0, 0.0, 1.5, 2.0})
    CHECK(s.dist(trail_eval(r, t), trail_eval(c, t)) < 1e-12);
  CHECK(s.dist(trail_eval(r, -5.0), trail_eval(c, -1.0)) < 1e-12);
  CHECK(s.dist(trail_eval(r, 9.0), trail_eval(c, 2.0)) < 1e-12);
  CHECK(trail_cmin(r) == doctest::Approx(-1.0));
  CHECK(trail_cmax(r) == doctest::Approx(2.0));
  CHECK_THROWS_AS(restrict_trail(c, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("constant trails embed isometrically in the flow metric") {
  h2::Space s;
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Point x = s.sample(rng, 2.0);
    Point y = s.sample(rng, 2.0);
    Trail cx{&s, x, x, 0.0};
    Trail cy{&s, y, y, 0.0};
    FlowDistance fd = fs_distance(cx, cy, 1e-10);
    CHECK(std::abs(fd.value - s.dist(x, y)) <= 1e-8);
    CHECK(fd.error_bound <= 1e-10);
  }
}

TEST_CASE("flow distance is symmetric and vanishes on identical trails") {
  EuclideanSpace s(2);
  Trail c{&s, {0, 0}, {2, 1}, 0.5};
  Trail d{&s, {1, -1}, {0, 3}, -0.3};
  FlowDistance cd = fs_distance(c, d, 1e-9);
  FlowDistance dc = fs_distance(d, c, 1e-9);
  CHECK(std::abs(cd.value - dc.value) <= cd.error_bound + dc.error_bound + 1e-12);
  FlowDistance cc = fs_distance(c, c, 1e-9);
  CHECK(cc.value <= 1e-12);
}

TEST_CASE("shift inequality: fs(shift_tau c, c) <= |tau|") {
  h2::Space s;
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    Point x = s.sample(rng, 2.0);
    Point y = s.sample(rng, 2.0);
    Trail c{&s, x, y, rng.uniform(-2, 2)};
    double tau = rng.uniform(-3, 3);
    FlowDistance fd = fs_distance(flow_shift(c, tau), c, 1e-9, true);
    CHECK(fd.value - fd.error_bound <= std::abs(tau) + 1e-9);
  }
}

TEST_CASE("unreachable accuracy raises instead of lying") {
  EuclideanSpace s(2);
  Trail c{&s, {0, 0}, {1, 1}, 200.0};
  Trail d{&s, {1, 0}, {0, 2}, 200.0};
  CHECK_THROWS_AS(fs_distance(c, d, 1e-60), std::runtime_error);
}

TEST_CASE("flow sweeps pass on flat and hyperbolic spaces") {
  CheckParams p;
  p.seed = 4;
  p.n = 150;
  EuclideanSpace e2(2);
  CHECK(check_flow_eval(e2, p).passed);
  CHECK(check_flow_shift(e2, p).passed);
  CHECK(check_flow_restrict(e2, p).passed);
  h2::Space h;
  p.n = 80;
  CHECK(check_flow_eval(h, p).passed);
  CHECK(check_flow_shift(h, p).passed);
  CHECK(check_flow_restrict(h, p).passed);
}

TEST_CASE("recipe constants satisfy their defining residuals") {
  ConvexityModulus A = linear_modulus();
  LengthModulus f = identity_length_modulus();
  for (double delta : {1.0, 0.1, 0.01}) {
    ContractionConstants c = contraction_constants(1.0, 1.0, delta, A, f);
    auto res = recipe_residuals(c, 1.0, 1.0, delta, A, f);
    CHECK(res[0] <= 1e-12);
    CHECK(res[1] <= 1e-12);
    CHECK(res[2] <= 1e-12);
    CHECK(res[3] <= 1e-12);
    CHECK(res[4] <= 1e-9);
    CHECK(c.r_prime > 1.0);
    CHECK(c.T > 0.0);
    CHECK(shadow_ratio(c, 1.0, 1.0, f) >= 2.0 / 3 - 1e-12);
  }
  // tighter targets need longer flows
  double t_loose = contraction_constants(1.0, 1.0, 1.0, A, f).T;
  double t_tight = contraction_constants(1.0, 1.0, 0.01, A, f).T;
  CHECK(t_loose <= t_tight);
  CHECK_THROWS_AS(contraction_constants(-1.0, 1.0, 0.1, A, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(contraction_constants(1.0, 1.0, 0.0, A, f),
                  std::invalid_argument);
}

TEST_CASE("manually assembled shadowing constants validate their parts") {
  ConvexityModulus A = monotonize_modulus(linear_modulus());
  LengthModulus f = identity_length_modulus();
  ContractionConstants c = shadow_constants(1.0, 1.0, 1.25, 40.0, A, f);
  CHECK(std::abs(c.r - (2 * 1.25 + 40.0 + f(1.0))) < 1e-12);
  CHECK(std::abs(c.T - (c.r - 1.25 - f(1.0))) < 1e-12);
  CHECK(c.delta_prime == doctest::Approx(shadow_bound(c, 1.0, 1.0, A, f)));
  CHECK_THROWS_AS(shadow_constants(1.0, 1.0, -1.0, 40.0, A, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(shadow_constants(1.0, 1.0, 1.25, 0.5, A, f),
                  std::invalid_argument);
}

TEST_CASE("contraction sweep achieves the target bound on the plane") {
  EuclideanSpace s(2);
  ConvexityModulus A = monotonize_modulus(linear_modulus());
  LengthModulus f = identity_length_modulus();
  ContractionConstants cc = contraction_constants(1.0, 1.0, 0.1, A, f);
  CheckParams p;
  p.seed = 6;
  p.n = 40;
  p.scale = cc.r;  // reach the pull-back sphere
  PropertyReport rep = check_contraction(s, A, f, 1.0, 1.0, 0.1, p);
  CHECK(rep.passed);
}
