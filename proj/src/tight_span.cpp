#include "bicomb/tight_span.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bicomb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSnap = 1e-9;  // positions closer than this reuse a node

}  // namespace

void FiniteMetric::validate(double tol) const {
  if (n < 1 || d.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("FiniteMetric: bad shape");
  for (int i = 0; i < n; ++i) {
    if (std::abs(at(i, i)) > tol)
      throw std::invalid_argument("FiniteMetric: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (!(at(i, j) >= -tol)) throw std::invalid_argument("FiniteMetric: negative");
      if (std::abs(at(i, j) - at(j, i)) > tol)
        throw std::invalid_argument("FiniteMetric: asymmetric");
      for (int k = 0; k < n; ++k)
        if (at(i, j) > at(i, k) + at(k, j) + tol)
          throw std::invalid_argument("FiniteMetric: triangle violation");
    }
  }
}

FiniteMetric graph_metric(int n,
                          const std::vector<std::tuple<int, int, double>>& edges) {
  if (n < 1) throw std::invalid_argument("graph_metric: empty graph");
  FiniteMetric m;
  m.n = n;
  m.d.assign(static_cast<std::size_t>(n) * n, kInf);
  for (int i = 0; i < n; ++i) m.at(i, i) = 0.0;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v || !(w >= 0))
      throw std::invalid_argument("graph_metric: bad edge");
    m.at(u, v) = std::min(m.at(u, v), w);
    m.at(v, u) = m.at(u, v);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.at(i, j) = std::min(m.at(i, j), m.at(i, k) + m.at(k, j));
  for (double v : m.d)
    if (v == kInf) throw std::invalid_argument("graph_metric: disconnected graph");
  return m;
}

FiniteMetric random_tree_metric(Rng& rng, int n) {
  if (n < 1) throw std::invalid_argument("random_tree_metric: n < 1");
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 1; i < n; ++i) {
    int parent = static_cast<int>(rng.below(i));
    edges.emplace_back(parent, i, rng.uniform(0.5, 2.0));
  }
  return graph_metric(n, edges);
}

double linf(const std::vector<double>& f, const std::vector<double>& g) {
  if (f.size() != g.size()) throw std::invalid_argument("linf: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

bool admissible(const FiniteMetric& m, const std::vector<double>& f, double tol) {
  if (static_cast<int>(f.size()) != m.n)
    throw std::invalid_argument("admissible: size mismatch");
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (f[i] + f[j] < m.at(i, j) - tol) return false;
  return true;
}

std::vector<double> conjugate(const FiniteMetric& m, const std::vector<double>& g) {
  if (static_cast<int>(g.size()) != m.n)
    throw std::invalid_argument("conjugate: size mismatch");
  std::vector<double> p(m.n, -kInf);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) p[i] = std::max(p[i], m.at(i, j) - g[j]);
  return p;
}

double extremality_defect(const FiniteMetric& m, const std::vector<double>& f) {
  return linf(f, conjugate(m, f));
}

std::vector<double> kuratowski_row(const FiniteMetric& m, int i) {
  if (i < 0 || i >= m.n) throw std::invalid_argument("kuratowski_row: bad index");
  std::vector<double> r(m.n);
  for (int j = 0; j < m.n; ++j) r[j] = m.at(i, j);
  return r;
}

std::vector<double> make_admissible(const FiniteMetric& m, std::vector<double> g) {
  if (static_cast<int>(g.size()) != m.n)
    throw std::invalid_argument("make_admissible: size mismatch");
  double deficiency = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      deficiency = std::max(deficiency, m.at(i, j) - g[i] - g[j]);
  if (deficiency > 0)
    for (double& v : g) v += deficiency / 2.0;
  return g;
}

std::vector<double> project_extremal(const FiniteMetric& m, std::vector<double> g,
                                     double eps, int max_iter) {
  if (!admissible(m, g, 1e-9))
    throw std::invalid_argument("project_extremal: start is not admissible");
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> p = conjugate(m, g);
    double defect = linf(g, p);
    if (defect <= eps) return g;
    // (g + p(g))/2 stays admissible and halves the defect.
    for (int i = 0; i < m.n; ++i) g[i] = 0.5 * (g[i] + p[i]);
  }
  if (extremality_defect(m, g) <= eps) return g;
  throw std::runtime_error("project_extremal: did not converge");
}

double four_point_delta(const FiniteMetric& m) {
  double delta = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      for (int k = j + 1; k < m.n; ++k)
        for (int l = k + 1; l < m.n; ++l) {
          double s1 = m.at(i, j) + m.at(k, l);
          double s2 = m.at(i, k) + m.at(j, l);
          double s3 = m.at(i, l) + m.at(j, k);
          double top = std::max({s1, s2, s3});
          double bottom = std::min({s1, s2, s3});
          double mid = s1 + s2 + s3 - top - bottom;
          delta = std::max(delta, (top - mid) / 2.0);
        }
  return delta;
}

double covering_radius_estimate(const FiniteMetric& m, Rng& rng, int probes) {
  double diam = 0.0;
  for (double v : m.d) diam = std::max(diam, v);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    int anchor = static_cast<int>(rng.below(m.n));
    std::vector<double> g = kuratowski_row(m, anchor);
    for (double& v : g) v += rng.uniform(0.0, 0.5 + diam / 2.0);
    std::vector<double> f = project_extremal(m, make_admissible(m, std::move(g)));
    double nearest = kInf;
    for (int i = 0; i < m.n; ++i)
      nearest = std::min(nearest, linf(f, kuratowski_row(m, i)));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double TreeRealization::node_dist(int a, int b) const {
  return dist_[static_cast<std::size_t>(a) * n_nodes + b];
}

std::vector<int> TreeRealization::node_path(int a, int b) const {
  if (node_dist(a, b) == kInf)
    throw std::logic_error("TreeRealization: nodes not connected");
  std::vector<int> path{a};
  while (a != b) {
    a = next_[static_cast<std::size_t>(a) * n_nodes + b];
    path.push_back(a);
  }
  return path;
}

const std::vector<int>& TreeRealization::edges_at(int node) const {
  return incident_[node];
}

int TreeRealization::edge_between(int u, int v) const {
  for (int e : incident_[u])
    if (edges[e].u + edges[e].v - u == v) return e;
  return -1;
}

void TreeRealization::refresh() {
  std::size_t nn = static_cast<std::size_t>(n_nodes) * n_nodes;
  dist_.assign(nn, kInf);
  next_.assign(nn, -1);
  incident_.assign(n_nodes, {});
  auto at = [this](int i, int j) -> double& {
    return dist_[static_cast<std::size_t>(i) * n_nodes + j];
  };
  auto hop = [this](int i, int j) -> int& {
    return next_[static_cast<std::size_t>(i) * n_nodes + j];
  };
  for (int i = 0; i < n_nodes; ++i) {
    at(i, i) = 0.0;
    hop(i, i) = i;
  }
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const Edge& ed = edges[e];
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
    if (ed.len < at(ed.u, ed.v)) {
      at(ed.u, ed.v) = at(ed.v, ed.u) = ed.len;
      hop(ed.u, ed.v) = ed.v;
      hop(ed.v, ed.u) = ed.u;
    }
  }
  for (int k = 0; k < n_nodes; ++k)
    for (int i = 0; i < n_nodes; ++i) {
      if (at(i, k) == kInf) continue;
      for (int j = 0; j < n_nodes; ++j) {
        double via = at(i, k) + at(k, j);
        if (via < at(i, j)) {
          at(i, j) = via;
          hop(i, j) = hop(i, k);
        }
      }
    }
}

TreeRealization realize_tree_metric(const FiniteMetric& m, double tol) {
  m.validate(std::max(tol, 1e-12));
  TreeRealization t;
  t.n_original = m.n;
  t.n_nodes = m.n;
  if (m.n >= 2) t.edges.push_back({0, 1, m.at(0, 1)});
  t.refresh();

  for (int k = 2; k < m.n; ++k) {
    // Projection of k onto the span of 0..k-1: the pair with the smallest
    // stub length, first such pair in lexicographic order on ties.
    double best_h = kInf;
    int bi = 0, bj = 1;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        double h = 0.5 * (m.at(i, k) + m.at(j, k) - m.at(i, j));
        if (h < best_h) {
          best_h = h;
          bi = i;
          bj = j;
        }
      }
    double along = std::clamp(m.at(bi, k) - best_h, 0.0, m.at(bi, bj));

    // Walk from bi toward bj and find the attachment node, splitting an edge
    // if the position is not an existing node.
    int attach = bj;
    std::vector<int> path = t.node_path(bi, bj);
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      int u = path[s], v = path[s + 1];
      int e = t.edge_between(u, v);
      double el = t.edges[e].len;
      if (along <= acc + kSnap) {
        attach = u;
        break;
      }
      if (along < acc + el - kSnap) {
        int split = t.n_nodes++;
        double off = along - acc;
        t.edges[e] = {u, split, off};
        t.edges.push_back({split, v, el - off});
        attach = split;
        break;
      }
      acc += el;
    }
    t.edges.push_back({attach, k, std::max(0.0, best_h)});
    t.refresh();
  }

  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (std::abs(t.node_dist(i, j) - m.at(i, j)) > tol)
        throw std::invalid_argument("realize_tree_metric: input is not a tree metric");
  return t;
}

TreeSpace::TreeSpace(TreeRealization tree, std::string name,
                     std::vector<Isometry> isos)
    : Space(std::move(name)), tree_(std::move(tree)), isos_(std::move(isos)) {
  if (tree_.edges.empty())
    throw std::invalid_argument("TreeSpace: need at least one edge");
  double acc = 0.0;
  for (const auto& e : tree_.edges) {
    acc += e.len;
    cumulative_.push_back(acc);
  }
}

TreeSpace::Located TreeSpace::locate(const Point& p) const {
  if (p.size() != 2) throw std::domain_error("TreeSpace: point needs 2 coordinates");
  double ei = p[0];
  int e = static_cast<int>(std::llround(ei));
  if (std::abs(ei - e) > 1e-9 || e < 0 || e >= static_cast<int>(tree_.edges.size()))
    throw std::domain_error("TreeSpace: bad edge index");
  double len = tree_.edges[e].len;
  double off = p[1];
  if (off < -1e-9 || off > len + 1e-9)
    throw std::domain_error("TreeSpace: offset outside edge");
  return {e, std::clamp(off, 0.0, len)};
}

double TreeSpace::route(const Located& a, const Located& b, int* exit_a,
                        int* enter_b) const {
  if (a.edge == b.edge) {
    if (exit_a) *exit_a = -1;
    if (enter_b) *enter_b = -1;
    return std::abs(a.off - b.off);
  }
  const auto& ea = tree_.edges[a.edge];
  const auto& eb = tree_.edges[b.edge];
  double best = kInf;
  int bu = ea.u, bv = eb.u;
  for (int na : {ea.u, ea.v})
    for (int nb : {eb.u, eb.v}) {
      double da = na == ea.u ? a.off : ea.len - a.off;
      double db = nb == eb.u ? b.off : eb.len - b.off;
      double d = da + tree_.node_dist(na, nb) + db;
      if (d < best) {
        best = d;
        bu = na;
        bv = nb;
      }
    }
  if (exit_a) *exit_a = bu;
  if (enter_b) *enter_b = bv;
  return best;
}

double TreeSpace::dist(const Point& a, const Point& b) const {
  return route(locate(a), locate(b), nullptr, nullptr);
}

Point TreeSpace::bicombe(const Point& x, const Point& y, double t) const {
  Located a = locate(x), b = locate(y);
  int na = -1, nb = -1;
  double d = route(a, b, &na, &nb);
  t = std::clamp(t, 0.0, 1.0);
  if (d < 1e-15) return x;
  if (na < 0)  // same edge
    return Point{static_cast<double>(a.edge), a.off + t * (b.off - a.off)};

  double s = t * d;
  const auto& ea = tree_.edges[a.edge];
  double head = na == ea.u ? a.off : ea.len - a.off;
  if (s <= head)
    return Point{static_cast<double>(a.edge),
                 na == ea.u ? a.off - s : a.off + s};
  s -= head;
  std::vector<int> path = tree_.node_path(na, nb);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int u = path[i], v = path[i + 1];
    int e = tree_.edge_between(u, v);
    double el = tree_.edges[e].len;
    if (s <= el)
      return Point{static_cast<double>(e),
                   tree_.edges[e].u == u ? s : el - s};
    s -= el;
  }
  const auto& eb = tree_.edges[b.edge];
  double off = nb == eb.u ? std::min(s, b.off) : std::max(eb.len - s, b.off);
  return Point{static_cast<double>(b.edge), off};
}

Point TreeSpace::sample(Rng& rng, double) const {
  double total = cumulative_.back();
  double r = rng.uniform(0.0, total);
  std::size_t e =
      std::lower_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin();
  if (e >= tree_.edges.size()) e = tree_.edges.size() - 1;
  return Point{static_cast<double>(e),
               rng.uniform(0.0, tree_.edges[e].len)};
}

Point TreeSpace::original_point(int i) const {
  if (i < 0 || i >= tree_.n_original)
    throw std::invalid_argument("TreeSpace: bad original index");
  const auto& inc = tree_.edges_at(i);
  if (inc.empty()) throw std::logic_error("TreeSpace: isolated original point");
  const auto& e = tree_.edges[inc[0]];
  return Point{static_cast<double>(inc[0]), e.u == i ? 0.0 : e.len};
}

}  // namespace bicomb
