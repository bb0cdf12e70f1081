#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bicomb/rng.hpp"
#include "bicomb/tight_span.hpp"

using namespace bicomb;

namespace {
FiniteMetric random_metric(Rng& rng, int n) {
  // random points in the plane -> a genuine metric
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = rng.uniform(-5, 5);
    ys[i] = rng.uniform(-5, 5);
  }
  FiniteMetric m;
  m.n = n;
  m.d.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
  return m;
}
}  // namespace

TEST_CASE("metric validation catches each defect") {
  FiniteMetric m;
  m.n = 3;
  m.d = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  m.validate();
  FiniteMetric bad = m;
  bad.at(0, 1) = 2.0;  // asymmetric
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = m;
  bad.at(1, 1) = 0.5;  // diagonal
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = m;
  bad.at(0, 2) = bad.at(2, 0) = 5.0;  // triangle violation
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = m;
  bad.at(0, 1) = bad.at(1, 0) = -1.0;  // negative
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("graph metric: paths, cycles, and disconnection") {
  FiniteMetric path = graph_metric(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  CHECK(path.at(0, 2) == doctest::Approx(3.0));
  FiniteMetric cyc = graph_metric(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  CHECK(cyc.at(0, 2) == doctest::Approx(2.0));
  CHECK(cyc.at(1, 3) == doctest::Approx(2.0));
  CHECK_THROWS_AS(graph_metric(4, {{0, 1, 1.0}, {2, 3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_metric(2, {{0, 5, 1.0}}), std::invalid_argument);
}

TEST_CASE("two-point extremal functions split the distance") {
  FiniteMetric m;
  m.n = 2;
  m.d = {0, 3, 3, 0};
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> g{rng.uniform(0, 4), rng.uniform(0, 4)};
    std::vector<double> f = project_extremal(m, make_admissible(m, g), 1e-12);
    CHECK(std::abs(f[0] + f[1] - 3.0) < 1e-10);
    CHECK(f[0] >= -1e-12);
    CHECK(f[1] >= -1e-12);
  }
}

TEST_CASE("tripod legs are the Gromov products") {
  FiniteMetric m;
  m.n = 3;
  m.d = {0, 3, 4, 3, 0, 5, 4, 5, 0};
  CHECK(four_point_delta(m) == doctest::Approx(0.0));
  TreeRealization t = realize_tree_metric(m, 1e-12);
  CHECK(t.n_original == 3);
  CHECK(t.n_nodes == 4);
  // legs (d01+d02-d12)/2 = 1, (d01+d12-d02)/2 = 2, (d02+d12-d01)/2 = 3
  CHECK(t.node_dist(0, 3) == doctest::Approx(1.0));
  CHECK(t.node_dist(1, 3) == doctest::Approx(2.0));
  CHECK(t.node_dist(2, 3) == doctest::Approx(3.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(t.node_dist(i, j) == doctest::Approx(m.at(i, j)).epsilon(1e-12));
}

TEST_CASE("four-point condition separates trees from the unit square") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    FiniteMetric tree = random_tree_metric(rng, 3 + static_cast<int>(rng.below(8)));
    CHECK(four_point_delta(tree) < 1e-12);
  }
  FiniteMetric cyc = graph_metric(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  CHECK(four_point_delta(cyc) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("canonical rows are admissible and extremal, exactly on integers") {
  FiniteMetric cyc = graph_metric(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
  for (int i = 0; i < cyc.n; ++i) {
    std::vector<double> row = kuratowski_row(cyc, i);
    CHECK(admissible(cyc, row, 0.0));
    CHECK(extremality_defect(cyc, row) == 0.0);
  }
}

TEST_CASE("conjugation and admissibility plumbing") {
  Rng rng(17);
  FiniteMetric m = random_metric(rng, 5);
  std::vector<double> g{1, 2, 0.5, 3, 0.2};
  std::vector<double> lifted = make_admissible(m, g);
  CHECK(admissible(m, lifted, 1e-12));
  std::vector<double> pg = conjugate(m, lifted);
  // p(g)(x) = max_y d(x,y) - g(y) <= g(x) for admissible g
  for (int i = 0; i < m.n; ++i) CHECK(pg[i] <= lifted[i] + 1e-12);
  CHECK(linf(lifted, lifted) == 0.0);
  CHECK(linf(g, lifted) >= 0.0);
}

TEST_CASE("extremal projection converges on random six-point metrics") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    FiniteMetric m = random_metric(rng, 6);
    std::vector<double> g(6);
    for (double& v : g) v = rng.uniform(0, 10);
    std::vector<double> f = project_extremal(m, make_admissible(m, g), 1e-9, 100);
    CHECK(extremality_defect(m, f) <= 1e-9);
    CHECK(admissible(m, f, 1e-9));
  }
}

TEST_CASE("projection fixes functions that are already extremal") {
  Rng rng(29);
  FiniteMetric m = random_metric(rng, 6);
  std::vector<double> row = kuratowski_row(m, 2);
  std::vector<double> f = project_extremal(m, row, 1e-12);
  CHECK(linf(f, row) < 1e-11);
}

TEST_CASE("covering radius of the star is half an edge") {
  FiniteMetric star = graph_metric(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  Rng rng(31);
  double est = covering_radius_estimate(star, rng, 200);
  CHECK(est <= 0.5 + 1e-9);
  CHECK(est >= 0.4);  // 200 seeded probes land near a mid-edge point
}

TEST_CASE("tree realization reproduces random tree metrics") {
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    FiniteMetric m = random_tree_metric(rng, 8);
    TreeRealization t = realize_tree_metric(m, 1e-9);
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b)
        CHECK(std::abs(t.node_dist(a, b) - m.at(a, b)) < 1e-9);
  }
  // a non-tree metric is rejected
  FiniteMetric cyc = graph_metric(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  CHECK_THROWS_AS(realize_tree_metric(cyc, 1e-9), std::invalid_argument);
}

TEST_CASE("tree space distances match the realization") {
  FiniteMetric m;
  m.n = 3;
  m.d = {0, 3, 4, 3, 0, 5, 4, 5, 0};
  TreeRealization t = realize_tree_metric(m, 1e-12);
  TreeSpace s(t, "tripod");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(s.dist(s.original_point(i), s.original_point(j)) - m.at(i, j)) <
            1e-12);
  // geodesic midpoint between leaves 1 and 2 is 2.5 from either
  Point mid = s.bicombe(s.original_point(1), s.original_point(2), 0.5);
  CHECK(std::abs(s.dist(s.original_point(1), mid) - 2.5) < 1e-12);
}
