#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "bicomb/rng.hpp"
#include "bicomb/space.hpp"

namespace bicomb {

// Dense metric on n points, row-major.
struct FiniteMetric {
  int n = 0;
  std::vector<double> d;

  double at(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return d[static_cast<std::size_t>(i) * n + j]; }

  // Throws std::invalid_argument on asymmetry, nonzero diagonal, negativity,
  // or a triangle violation beyond tol.
  void validate(double tol = 1e-9) const;
};

// Shortest-path metric of an undirected weighted graph; throws if the graph
// is disconnected or an edge is invalid.
FiniteMetric graph_metric(int n,
                          const std::vector<std::tuple<int, int, double>>& edges);

// Path metric of a random tree: node i >= 1 hangs off a uniformly chosen
// earlier node with length in [0.5, 2].
FiniteMetric random_tree_metric(Rng& rng, int n);

double linf(const std::vector<double>& f, const std::vector<double>& g);

// f(x) + f(y) >= d(x,y) - tol for all pairs.
bool admissible(const FiniteMetric& m, const std::vector<double>& f, double tol);

// max_x |f(x) - max_y (d(x,y) - f(y))|; zero exactly on the tight span.
double extremality_defect(const FiniteMetric& m, const std::vector<double>& f);

// p(g)(x) = max_y (d(x,y) - g(y)).
std::vector<double> conjugate(const FiniteMetric& m, const std::vector<double>& g);

// The distance row d(i, .): the canonical embedding of point i.
std::vector<double> kuratowski_row(const FiniteMetric& m, int i);

// Smallest uniform lift making g admissible.
std::vector<double> make_admissible(const FiniteMetric& m, std::vector<double> g);

// Iterates g <- (g + p(g))/2 from an admissible start until the extremality
// defect drops below eps (the map halves the defect, keeps admissibility,
// and fixes exactly the extremal functions). Throws std::runtime_error if
// max_iter iterations do not converge.
std::vector<double> project_extremal(const FiniteMetric& m, std::vector<double> g,
                                     double eps = 1e-12, int max_iter = 100);

// Four-point hyperbolicity: max over quadruples of half the gap between the
// largest and second-largest of the three matching pair sums. Zero exactly
// for tree metrics.
double four_point_delta(const FiniteMetric& m);

// Empirical covering radius of the canonical rows inside the tight span:
// random admissible probes are projected to extremal functions and measured
// against their nearest row. A lower bound for the true covering radius.
double covering_radius_estimate(const FiniteMetric& m, Rng& rng, int probes);

// Explicit tree carrying a tree metric: original points first, split nodes
// appended. Built by inserting points one at a time at their projection onto
// the span of the previous ones (the pair with the smallest stub length).
struct TreeRealization {
  struct Edge {
    int u = 0, v = 0;
    double len = 0.0;
  };

  int n_original = 0;
  int n_nodes = 0;
  std::vector<Edge> edges;

  double node_dist(int a, int b) const;
  // Node sequence of the geodesic from a to b, inclusive.
  std::vector<int> node_path(int a, int b) const;
  const std::vector<int>& edges_at(int node) const;
  int edge_between(int u, int v) const;  // -1 if none

  // Recomputes shortest paths; called by the builder after every insertion.
  void refresh();

 private:
  std::vector<double> dist_;
  std::vector<int> next_;
  std::vector<std::vector<int>> incident_;
};

// Realizes a tree metric; throws std::invalid_argument if the realized
// distances disagree with m by more than tol.
TreeRealization realize_tree_metric(const FiniteMetric& m, double tol = 1e-9);

// Points are (edge index, offset from edge.u), packed as a 2-coordinate
// Point. Geodesics walk the tree; `sample` ignores the scale argument (the
// tree is bounded) and picks an edge weighted by length.
class TreeSpace final : public Space {
 public:
  TreeSpace(TreeRealization tree, std::string name,
            std::vector<Isometry> isos = {});
  int dim() const override { return 2; }
  double dist(const Point& a, const Point& b) const override;
  Point bicombe(const Point& x, const Point& y, double t) const override;
  Point sample(Rng& rng, double scale) const override;
  double declared_tol() const override { return 1e-12; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

  const TreeRealization& tree() const { return tree_; }
  // Representation of the original point i as a space point.
  Point original_point(int i) const;

 private:
  struct Located {
    int edge;
    double off;
  };
  Located locate(const Point& p) const;
  // Distance plus the optimal exit/entry nodes (-1 for the same-edge case).
  double route(const Located& a, const Located& b, int* exit_a, int* enter_b) const;

  TreeRealization tree_;
  std::vector<double> cumulative_;  // edge sampling weights
  std::vector<Isometry> isos_;
};

}  // namespace bicomb
