#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "bicomb/checks.hpp"
#include "bicomb/euclidean.hpp"
#include "bicomb/modulus.hpp"
#include "bicomb/product.hpp"
#include "bicomb/registry.hpp"

using namespace bicomb;

namespace {
CheckParams quick(std::uint64_t seed = 1, std::uint64_t n = 300) {
  CheckParams p;
  p.seed = seed;
  p.n = n;
  return p;
}
}  // namespace

TEST_CASE("path axioms hold on every registered honest space") {
  for (const std::string& name : registered_space_names()) {
    RegisteredSpace rs = make_space(name);
    if (rs.control) continue;
    CAPTURE(name);
    for (const std::string& check : check_names()) {
      CAPTURE(check);
      PropertyReport rep = run_check(check, *rs.space, rs.modulus, rs.length,
                                     quick(1, name == "tree-random8" ? 150 : 300));
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("broken path assignment is caught by the geodesic check") {
  RegisteredSpace rs = make_space("broken-bicombe");
  PropertyReport rep = run_check("geodesic", *rs.space, rs.modulus, rs.length, quick());
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_violation > 0.1);
  CHECK_FALSE(rep.witness.is_null());
  // the metric itself is fine, only the paths are wrong
  CHECK(run_check("metric", *rs.space, rs.modulus, rs.length, quick()).passed);
}

TEST_CASE("broken isometry declaration is caught by the invariance check") {
  RegisteredSpace rs = make_space("broken-isometry");
  PropertyReport rep = run_check("isometry", *rs.space, rs.modulus, rs.length, quick());
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_violation > 0.01);
}

TEST_CASE("halved modulus control fails convexity, zero length control fails") {
  RegisteredSpace rs = make_space("euclidean2");
  ConvexityModulus half = make_modulus("half-linear", rs);
  PropertyReport conv = check_convexity(*rs.space, half, quick());
  CHECK_FALSE(conv.passed);
  LengthModulus zero = make_length_modulus("zero", rs);
  PropertyReport len = check_length_modulus(*rs.space, zero, quick());
  CHECK_FALSE(len.passed);
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(make_space("no-such-space"), std::invalid_argument);
  CHECK_THROWS_AS(make_action("no-such-action"), std::invalid_argument);
  RegisteredSpace rs = make_space("euclidean2");
  CHECK_THROWS_AS(make_modulus("no-such-modulus", rs), std::invalid_argument);
  CHECK_THROWS_AS(make_length_modulus("nope", rs), std::invalid_argument);
  CHECK_THROWS_AS(
      run_check("no-such-check", *rs.space, rs.modulus, rs.length, quick()),
      std::invalid_argument);
}

TEST_CASE("product distances combine factor-wise") {
  RegisteredSpace rs = make_space("r2xh2");
  const Space& s = *rs.space;
  Point a{0, 0, 0, 1};
  Point b{3, 4, 0, 1};
  CHECK(std::abs(s.dist(a, b) - 5.0) < 1e-12);
  Point c{0, 0, 0, 2};
  CHECK(std::abs(s.dist(a, c) - 0.6931471805599453) < 1e-12);
  Point m{3, 4, 0, 2};
  double want = std::sqrt(25.0 + 0.6931471805599453 * 0.6931471805599453);
  CHECK(std::abs(s.dist(a, m) - want) < 1e-12);
  // paths run component-wise
  Point mid = s.bicombe(a, b, 0.5);
  CHECK(std::abs(mid[0] - 1.5) < 1e-12);
  CHECK(std::abs(mid[1] - 2.0) < 1e-12);
  CHECK(std::abs(mid[3] - 1.0) < 1e-12);
}

TEST_CASE("product of one-sided factor is one-sided with combined bounds") {
  auto e2 = std::make_shared<EuclideanSpace>(2, "flat");
  RegisteredSpace fib = make_space("sl2r-model");
  ProductSpace prod(e2, fib.space, "flatxfib");
  CHECK(prod.one_sided());
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Point a = prod.sample(rng, 1.5);
    Point b = prod.sample(rng, 1.5);
    CHECK(prod.dist_lower(a, b) <= prod.dist(a, b) + 1e-12);
  }
}

TEST_CASE("monotone envelope dominates and carries the advertised shape") {
  ConvexityModulus lin = linear_modulus();
  ConvexityModulus mono = monotonize_modulus(lin);
  CHECK(mono.increasing_in_s);
  CHECK(mono.increasing_in_s2);
  CHECK(mono.increasing_head);
  CHECK(mono.decreasing_tail);
  for (double t : {0.0, 0.2, 1.0 / 3, 0.5, 2.0 / 3, 0.9, 1.0})
    for (double s : {0.0, 0.5, 1.0, 2.0})
      for (double s2 : {0.0, 0.7, 1.5}) {
        CAPTURE(t);
        CAPTURE(s);
        CAPTURE(s2);
        CHECK(mono(t, s, s2) >= lin(t, s, s2) - 1e-9);
      }
  // increasing in s and s2
  CHECK(mono(0.4, 1.0, 1.0) <= mono(0.4, 2.0, 1.0) + 1e-9);
  CHECK(mono(0.4, 1.0, 1.0) <= mono(0.4, 1.0, 2.0) + 1e-9);
  // head rises, tail falls
  CHECK(mono(0.05, 1.0, 0.0) <= mono(0.30, 1.0, 0.0) + 1e-9);
  CHECK(mono(0.70, 0.0, 1.0) >= mono(0.95, 0.0, 1.0) - 1e-9);
  // the tail end still vanishes when the source separation is zero
  CHECK(mono(1.0, 1.0, 0.0) <= lin(1.0, 1.0, 0.0) + 0.5);
}

TEST_CASE("negative-control moduli are labelled and scaled as advertised") {
  ConvexityModulus lin = linear_modulus();
  ConvexityModulus half = scaled_modulus(lin, 0.5, "half-linear");
  CHECK(std::abs(half(0.3, 2.0, 1.0) - 0.5 * lin(0.3, 2.0, 1.0)) < 1e-15);
  LengthModulus ident = identity_length_modulus();
  CHECK(std::abs(ident(1.7) - 1.7) < 1e-15);
  LengthModulus zero = zero_length_modulus();
  CHECK(zero(3.0) == 0.0);
}

TEST_CASE("l2 combination of moduli matches the factor formula") {
  ConvexityModulus lin = linear_modulus();
  ConvexityModulus comb = l2_combined_modulus(lin, lin);
  // both factors see the full separations: hypot(a1, a2)
  double a1 = lin(0.3, 2.0, 1.0);
  CHECK(std::abs(comb(0.3, 2.0, 1.0) - std::hypot(a1, a1)) < 1e-14);
  CHECK(comb(0.3, 2.0, 1.0) >= a1 - 1e-12);
  LengthModulus f = l2_combined_length_modulus(identity_length_modulus(),
                                               identity_length_modulus());
  CHECK(std::abs(f(2.0) - std::hypot(2.0, 2.0)) < 1e-14);
}
