#include "bicomb/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bicomb {
namespace {

double denom(const ContractionConstants& c, double beta, double L,
             const LengthModulus& f) {
  return c.r_double_prime + 2.0 * c.r_prime + f(beta) + L;
}

// Left-hand side of the tail-weight condition: the mass of (1 + |t|) e^{-|t|}
// beyond r' on one side, in closed form.
double tail_mass(double r_prime) {
  return (2.0 + r_prime) * std::exp(-r_prime);
}

}  // namespace

double shadow_ratio(const ContractionConstants& c, double beta, double L,
                    const LengthModulus& f) {
  return c.r_double_prime / denom(c, beta, L, f);
}

double shadow_bound(const ContractionConstants& c, double beta, double L,
                    const ConvexityModulus& A, const LengthModulus& f) {
  double fb = f(beta);
  return A(shadow_ratio(c, beta, L, f), beta, 0.0) +
         fb * (2.0 * c.r_prime + fb + L) / c.r_double_prime;
}

std::array<double, 5> recipe_residuals(const ContractionConstants& c,
                                       double beta, double L, double delta,
                                       const ConvexityModulus& A,
                                       const LengthModulus& f) {
  double fb = f(beta);
  std::array<double, 5> res;
  res[0] = tail_mass(c.r_prime) - delta / 3.0;
  res[1] = 2.0 * c.delta_prime * (1.0 - std::exp(-c.r_prime)) - delta / 3.0;
  res[2] = 2.0 / 3.0 - shadow_ratio(c, beta, L, f);
  res[3] = shadow_bound(c, beta, L, A, f) - c.delta_prime;
  res[4] = std::abs(c.r - (2.0 * c.r_prime + c.r_double_prime + fb)) +
           std::abs(c.T - (c.r - c.r_prime - fb));
  return res;
}

ContractionConstants contraction_constants(double beta, double L, double delta,
                                           const ConvexityModulus& A,
                                           const LengthModulus& f) {
  if (!(beta > 0.0) || !(L > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("contraction_constants: need beta, L, delta > 0");

  // The whole construction hinges on the modulus vanishing against a fixed
  // second separation as t -> 1.
  double vanish = A(1.0, beta, 0.0);
  for (int k = 1; k <= 24; ++k)
    vanish = std::min(vanish, A(1.0 - std::pow(0.5, k), beta, 0.0));
  if (!(vanish <= 1e-9))
    throw std::invalid_argument(
        "contraction_constants: A(t, beta, 0) does not vanish as t -> 1");

  ContractionConstants c;
  // Minimal r' > 1 with the tail-weight condition, by doubling then
  // bisection (tail_mass is strictly decreasing).
  double target = delta / 3.0;
  double lo = 1.0;
  double hi = 2.0;
  while (tail_mass(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6)
      throw std::runtime_error("contraction_constants: r' search diverged");
  }
  if (tail_mass(lo) <= target) {
    hi = lo;  // satisfied at the floor already
  } else {
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (tail_mass(mid) <= target ? hi : lo) = mid;
    }
  }
  c.r_prime = std::max(hi, 1.0 + 1e-9);  // the recipe wants r' strictly > 1

  // Largest admissible delta' < 1.
  c.delta_prime =
      std::min(1.0 - 1e-6, delta / (6.0 * (1.0 - std::exp(-c.r_prime))));

  // Minimal r'' on the doubling grid; the starting point already enforces
  // the ratio floor r''/(r'' + 2r' + f(beta) + L) >= 2/3.
  double fb = f(beta);
  if (!(fb >= 0.0))
    throw std::invalid_argument("contraction_constants: f(beta) < 0");
  double start = 2.0 * (2.0 * c.r_prime + fb + L);
  c.r_double_prime = std::max(start, std::nextafter(fb, 1e300));
  while (true) {
    if (shadow_bound(c, beta, L, A, f) <= c.delta_prime) break;
    c.r_double_prime *= 2.0;
    if (c.r_double_prime > 1e15)
      throw std::runtime_error(
          "contraction_constants: no convergence (shadow bound stuck above "
          "delta')");
  }

  c.r = 2.0 * c.r_prime + c.r_double_prime + fb;
  c.T = c.r - c.r_prime - fb;

  auto res = recipe_residuals(c, beta, L, delta, A, f);
  for (double v : res)
    if (!(v <= 1e-12))
      throw std::logic_error("contraction_constants: recipe recheck failed");
  return c;
}

ContractionConstants shadow_constants(double beta, double L, double r_prime,
                                      double r_double_prime,
                                      const ConvexityModulus& A,
                                      const LengthModulus& f) {
  if (!(beta > 0.0) || !(L > 0.0))
    throw std::invalid_argument("shadow_constants: need beta, L > 0");
  if (!(r_prime > 0.0))
    throw std::invalid_argument("shadow_constants: need r' > 0");
  double fb = f(beta);
  if (!(r_double_prime > fb))
    throw std::invalid_argument("shadow_constants: need r'' > f(beta)");
  ContractionConstants c;
  c.r_prime = r_prime;
  c.r_double_prime = r_double_prime;
  c.r = 2.0 * r_prime + r_double_prime + fb;
  c.T = c.r - r_prime - fb;
  if (!(shadow_ratio(c, beta, L, f) >= 2.0 / 3.0))
    throw std::invalid_argument("shadow_constants: ratio below 2/3");
  c.delta_prime = shadow_bound(c, beta, L, A, f);
  return c;
}

namespace {

struct ShadowInstance {
  double violation = 0.0;
  double worst_t = 0.0;
  double tau = 0.0;
  double bound = 0.0;
};

ShadowInstance shadow_instance(const Space& s, const ConvexityModulus& A,
                               const ContractionConstants& c, double beta,
                               double L, const Point& x1, const Point& x2,
                               const Point& x, int grid, double bound,
                               nlohmann::json* curve = nullptr) {
  if (!A.decreasing_tail)
    throw std::invalid_argument(
        "shadow check needs a modulus with the decreasing-tail property; "
        "monotonize it first");
  if (grid < 2) throw std::invalid_argument("shadow check: grid < 2");
  if (s.dist(x1, x2) > beta * (1.0 + 1e-12))
    throw std::invalid_argument("shadow check: d(x1, x2) exceeds beta");
  double l1 = s.path_length(x1, x);
  if (l1 > (c.r + L) * (1.0 + 1e-12))
    throw std::invalid_argument("shadow check: x outside P_{r+L}(x1)");
  Trail c1{&s, x1, x, 0.0};
  Trail c2{&s, x2, x, 0.0};
  ShadowInstance inst;
  inst.tau = trail_length(c2) - trail_length(c1);
  inst.bound = bound;
  bool os = s.one_sided();
  inst.violation = -bound;
  for (int k = 0; k < grid; ++k) {
    double t = c.T - c.r_prime + (2.0 * c.r_prime) * k / (grid - 1);
    Point p1 = trail_eval(c1, t);
    Point p2 = trail_eval(c2, t + inst.tau);
    double lhs = os ? s.dist_lower(p1, p2) : s.dist(p1, p2);
    if (curve) curve->push_back({t, lhs});
    if (lhs - bound > inst.violation) {
      inst.violation = lhs - bound;
      inst.worst_t = t;
    }
  }
  return inst;
}

}  // namespace

Point pull_toward(const Space& s, const Point& center, const Point& q,
                  double radius) {
  double d = s.path_length(center, q);
  if (d <= radius) return q;
  return s.bicombe(center, q, radius / d);
}

PropertyReport check_shadow_lemma(const Space& s, const ConvexityModulus& A,
                                  const LengthModulus& f,
                                  const ContractionConstants& c, double beta,
                                  double L, const Point& x1, const Point& x2,
                                  const Point& x, int grid) {
  double bound = shadow_bound(c, beta, L, A, f);
  nlohmann::json curve = nlohmann::json::array();
  ShadowInstance inst =
      shadow_instance(s, A, c, beta, L, x1, x2, x, grid, bound, &curve);
  PropertyReport rep;
  rep.check = "shadow-lemma";
  rep.space = s.name();
  rep.mode = s.one_sided() ? "one_sided" : "exact";
  rep.seed = 0;
  rep.n = static_cast<std::uint64_t>(grid);
  rep.tol = s.declared_tol();
  rep.max_violation = inst.violation;
  rep.witness = {{"x1", point_json(x1)},
                 {"x2", point_json(x2)},
                 {"x", point_json(x)},
                 {"tau", inst.tau},
                 {"worst_t", inst.worst_t},
                 {"bound", inst.bound}};
  rep.details["T"] = c.T;
  rep.details["r_prime"] = c.r_prime;
  rep.details["bound"] = bound;
  rep.details["curve"] = curve;
  rep.finalize();
  return rep;
}

PropertyReport check_shadow_sweep(const Space& s, const ConvexityModulus& A,
                                  const LengthModulus& f,
                                  const ContractionConstants& c, double beta,
                                  double L, const CheckParams& p) {
  double scale = effective_scale(s, p);
  double bound = shadow_bound(c, beta, L, A, f);
  constexpr int kGrid = 25;
  auto eval = [&, scale, bound](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x1 = s.sample(rng, scale);
    Point x2 = pull_toward(s, x1, s.sample(rng, scale),
                           beta * rng.uniform() * 0.999);
    Point x =
        pull_toward(s, x1, s.sample(rng, scale), (c.r + L) * 0.999);
    nlohmann::json curve = nlohmann::json::array();
    ShadowInstance inst = shadow_instance(s, A, c, beta, L, x1, x2, x, kGrid,
                                          bound, w ? &curve : nullptr);
    if (w) {
      (*w)["x1"] = point_json(x1);
      (*w)["x2"] = point_json(x2);
      (*w)["x"] = point_json(x);
      (*w)["tau"] = inst.tau;
      (*w)["worst_t"] = inst.worst_t;
      (*w)["bound"] = inst.bound;
      (*w)["curve"] = curve;
    }
    return inst.violation;
  };
  return run_sweep("shadow-lemma", s, p, eval);
}

PropertyReport check_contraction(const Space& s, const ConvexityModulus& A,
                                 const LengthModulus& f, double beta, double L,
                                 double delta, const CheckParams& p) {
  ContractionConstants c = contraction_constants(beta, L, delta, A, f);
  double scale = effective_scale(s, p);
  double fb = f(beta);
  double fs_tol = std::max(1e-12, delta * 1e-3);
  bool os = s.one_sided();
  auto eval = [&, scale, fb, fs_tol, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x1 = s.sample(rng, scale);
    Point x2 = pull_toward(s, x1, s.sample(rng, scale),
                           beta * rng.uniform() * 0.999);
    Point x = pull_toward(s, x1, s.sample(rng, scale), (c.r + L) * 0.999);
    Trail ray1{&s, x1, x, 0.0};
    Trail ray2{&s, x2, x, 0.0};
    double tau_witness = trail_length(ray2) - trail_length(ray1);
    Point z1 = trail_eval(ray1, c.r);
    Point z2 = trail_eval(ray2, c.r);
    Trail left = Trail{&s, x1, z1, c.T};
    Trail base_right{&s, x2, z2, 0.0};
    double best = std::numeric_limits<double>::infinity();
    double best_tau = tau_witness;
    auto try_tau = [&](double tau) {
      FlowDistance fd =
          fs_distance(left, flow_shift(base_right, c.T + tau), fs_tol, os);
      double certified = fd.value - fd.error_bound;
      if (certified < best) {
        best = certified;
        best_tau = tau;
      }
    };
    try_tau(tau_witness);
    constexpr int kTauGrid = 17;
    for (int k = 0; k < kTauGrid; ++k)
      try_tau(-fb + 2.0 * fb * k / (kTauGrid - 1));
    if (w) {
      (*w)["x1"] = point_json(x1);
      (*w)["x2"] = point_json(x2);
      (*w)["x"] = point_json(x);
      (*w)["tau_witness"] = tau_witness;
      (*w)["tau_best"] = best_tau;
      (*w)["fs_best"] = best;
      (*w)["ray_length"] = trail_length(ray1);
      (*w)["pulled_back"] = trail_length(ray1) > c.r;
    }
    return best - delta;
  };
  PropertyReport rep = run_sweep("contraction", s, p, eval);
  rep.details["constants"] = {{"r_prime", c.r_prime},
                              {"delta_prime", c.delta_prime},
                              {"r_double_prime", c.r_double_prime},
                              {"r", c.r},
                              {"T", c.T}};
  return rep;
}

}  // namespace bicomb
