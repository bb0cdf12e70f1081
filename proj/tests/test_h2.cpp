#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bicomb/h2.hpp"
#include "bicomb/rng.hpp"

using namespace bicomb;
using namespace bicomb::h2;

namespace {
H2Point random_point(Rng& rng, double box = 3.0, double spread = 1.0) {
  return {rng.uniform(-box, box), std::exp(rng.uniform(-spread, spread))};
}
}  // namespace

TEST_CASE("half-plane distance matches closed-form values") {
  CHECK(std::abs(distance({0, 1}, {0, 2}) - 0.6931471805599453) < 1e-14);
  CHECK(std::abs(distance({0, 1}, {1, 1}) - 0.9624236501192069) < 1e-14);
  CHECK(std::abs(distance({-1, 2}, {3, 0.5}) - 3.0057071717139604) < 1e-13);
  CHECK(distance({0.3, 0.7}, {0.3, 0.7}) < 1e-15);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    H2Point p = random_point(rng, 5.0, 2.0);
    H2Point q = random_point(rng, 5.0, 2.0);
    H2Point r = random_point(rng, 5.0, 2.0);
    CHECK(std::abs(distance(p, q) - distance(q, p)) < 1e-13);
    CHECK(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12);
  }
}

TEST_CASE("geodesic endpoints, midpoint, and constant speed") {
  H2Point p{0, 1}, q{1, 1};
  CHECK(distance(geodesic(p, q, 0.0), p) < 1e-12);
  CHECK(distance(geodesic(p, q, 1.0), q) < 1e-12);
  H2Point mid = geodesic(p, q, 0.5);
  CHECK(std::abs(mid.x - 0.5) < 1e-12);
  CHECK(std::abs(mid.y - 1.118033988749895) < 1e-12);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    H2Point u = random_point(rng, 4.0, 1.5);
    H2Point v = random_point(rng, 4.0, 1.5);
    double t1 = rng.uniform(), t2 = rng.uniform();
    double got = distance(geodesic(u, v, t1), geodesic(u, v, t2));
    CHECK(std::abs(got - std::abs(t1 - t2) * distance(u, v)) < 1e-9);
  }
}

TEST_CASE("vertical geodesics stay vertical") {
  H2Point p{2, 0.5}, q{2, 4};
  for (double t : {0.1, 0.35, 0.8})
    CHECK(std::abs(geodesic(p, q, t).x - 2.0) < 1e-14);
}

TEST_CASE("triangle area matches the law-of-cosines value and its bounds") {
  CHECK(std::abs(triangle_area({0, 1}, {1, 1}, {0.5, 2}) - 0.2667005083431049) <
        1e-12);
  CHECK(triangle_area({0, 1}, {0, 1}, {1, 2}) < 1e-12);   // coincident
  CHECK(triangle_area({0, 1}, {0, 2}, {0, 3}) < 1e-12);   // collinear

  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    double ar = triangle_area(random_point(rng), random_point(rng), random_point(rng));
    CHECK(ar >= -1e-12);
    CHECK(ar < 3.14159265358979324);
  }
}

TEST_CASE("largest area over a fixed side") {
  CHECK(std::abs(max_area_for_side(0)) < 1e-15);
  CHECK(std::abs(max_area_for_side(1) - 0.9607621582674589) < 1e-13);
  CHECK(std::abs(max_area_for_side(2) - 1.7315389664793172) < 1e-13);
  CHECK(max_area_for_side(50) >= 3.141592653589793 - 1e-9);
  CHECK(max_area_for_side(50) <= 3.1415926535897933);
  CHECK_THROWS_AS(max_area_for_side(-0.1), std::domain_error);

  double prev = 0.0;
  for (double r = 0.05; r < 6.0; r += 0.05) {
    double g = max_area_for_side(r);
    CHECK(g <= std::min(r, 3.14159265358979324) + 1e-12);
    CHECK(g >= prev - 1e-12);
    prev = g;
  }
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    H2Point p = random_point(rng), q = random_point(rng), r = random_point(rng);
    double ar = triangle_area(p, q, r);
    CHECK(ar <= max_area_for_side(distance(p, q)) + 1e-9);
    CHECK(ar <= max_area_for_side(distance(q, r)) + 1e-9);
    CHECK(ar <= max_area_for_side(distance(p, r)) + 1e-9);
  }
}

TEST_CASE("exact connection-form drift against the chord rule") {
  CHECK(std::abs(std::abs(geodesic_drift({0, 1}, {1, 1})) - 0.9272952180016122) <
        1e-13);
  CHECK(std::abs(geodesic_drift({2, 0.5}, {2, 4})) < 1e-15);

  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    H2Point p = random_point(rng, 4.0, 1.5);
    H2Point q = random_point(rng, 4.0, 1.5);
    double exact = geodesic_drift(p, q);
    double quad = geodesic_drift_adaptive(p, q, 1e-11);
    CHECK(std::abs(exact - quad) < 1e-9);
    CHECK(std::abs(geodesic_drift(q, p) + exact) < 1e-12);
  }
}

TEST_CASE("chord-rule drift error falls off quadratically") {
  H2Point p{-1, 0.8}, q{2, 1.7};
  double exact = geodesic_drift(p, q);
  auto chord_err = [&](int n) {
    std::vector<double> ts;
    std::vector<H2Point> ps;
    for (int i = 0; i <= n; ++i) {
      ts.push_back(static_cast<double>(i) / n);
      ps.push_back(geodesic(p, q, ts.back()));
    }
    return std::abs(transport_drift(H2Path(std::move(ts), std::move(ps))) - exact);
  };
  double e64 = chord_err(64), e128 = chord_err(128), e256 = chord_err(256);
  CHECK(e128 < e64 * 0.4);
  CHECK(e256 < e128 * 0.4);
}

TEST_CASE("loop drift around a geodesic triangle equals the oriented area") {
  assert_orientation_convention();
  CHECK(std::abs(std::abs(signed_triangle_drift({0, 1}, {1, 1}, {0.5, 2})) -
                 0.2667005083431049) < 1e-11);
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    H2Point p = random_point(rng), q = random_point(rng), r = random_point(rng);
    CHECK(std::abs(std::abs(signed_triangle_drift(p, q, r)) -
                   triangle_area(p, q, r)) < 1e-9);
  }
}

TEST_CASE("holonomy check converges on sampled triangles") {
  Holonomy h = holonomy_check({0, 1}, {1, 1}, {0.5, 2}, 4000);
  CHECK(std::abs(h.area - 0.2667005083431049) < 1e-12);
  CHECK(h.residual < 1e-7);
}

TEST_CASE("Moebius maps preserve distance and compose") {
  Moebius m{2, 1, 1, 1};
  Moebius w{1, -0.5, 0.3, 1};
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    H2Point p = random_point(rng), q = random_point(rng);
    CHECK(std::abs(distance(m.apply(p), m.apply(q)) - distance(p, q)) < 1e-10);
    CHECK(distance((m * w).apply(p), m.apply(w.apply(p))) < 1e-10);
    CHECK(distance(m.inverse().apply(m.apply(p)), p) < 1e-10);
  }
}

TEST_CASE("space wrapper round-trips and samples valid points") {
  h2::Space s;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Point p = s.sample(rng, 2.0);
    H2Point h = h2::Space::unpack(p);
    validate(h);
    CHECK(h2::Space::pack(h) == p);
  }
  CHECK_THROWS_AS(validate(H2Point{0, -1}), std::domain_error);
  CHECK_THROWS_AS(validate(H2Point{0, 0}), std::domain_error);
}
