#include "bicomb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bicomb {
namespace {

PropertyReport base_report(const std::string& check, const Space& s,
                           const CheckParams& p) {
  PropertyReport r;
  r.check = check;
  r.space = s.name();
  r.mode = s.one_sided() ? "one_sided" : "exact";
  r.seed = p.seed;
  r.n = p.n;
  r.tol = p.tol < 0 ? s.declared_tol() : p.tol;
  return r;
}

}  // namespace

double effective_scale(const Space& s, const CheckParams& p) {
  return p.scale < 0 ? s.default_scale() : p.scale;
}

// Runs the sweep, then replays the worst sample to capture its witness.
PropertyReport run_sweep(
    const std::string& check, const Space& s, const CheckParams& p,
    const std::function<double(std::uint64_t, nlohmann::json*)>& eval) {
  PropertyReport rep = base_report(check, s, p);
  SweepResult sw = sweep_max(
      p.n, p.threads, [&](std::uint64_t i) { return eval(i, nullptr); },
      p.keep_values);
  rep.max_violation = p.n == 0 ? 0.0 : sw.worst;
  if (p.n > 0) {
    nlohmann::json w;
    w["index"] = sw.worst_index;
    eval(sw.worst_index, &w);
    rep.witness = w;
  }
  if (p.keep_values && !sw.values.empty())
    rep.details["histogram"] = slack_histogram(sw.values);
  rep.finalize();
  return rep;
}

PropertyReport check_metric(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    Point z = s.sample(rng, scale);
    double dxy = s.dist(x, y);
    double dyx = s.dist(y, x);
    double symmetry = std::abs(dxy - dyx);
    double triangle = os ? s.dist_lower(x, z) - (dxy + s.dist(y, z))
                         : s.dist(x, z) - (dxy + s.dist(y, z));
    double nonneg = -std::min(dxy, s.dist_lower(x, y));
    double self = std::max(s.dist(x, x), os ? s.dist_lower(x, x) : 0.0);
    double order = s.dist_lower(x, y) - dxy;          // lower <= upper
    double dominated = dxy - s.path_length(x, y);     // length >= distance
    double v = std::max({symmetry, triangle, nonneg, self, order, dominated});
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["z"] = point_json(z);
      (*w)["d_xy"] = dxy;
      (*w)["parts"] = {{"symmetry", symmetry}, {"triangle", triangle},
                       {"nonneg", nonneg},     {"self", self},
                       {"order", order},       {"dominated", dominated}};
    }
    return v;
  };
  return run_sweep("metric", s, p, eval);
}

PropertyReport check_geodesic(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    double t1 = rng.uniform();
    double t2 = rng.uniform();
    Point u = s.bicombe(x, y, t1);
    Point v = s.bicombe(x, y, t2);
    double span = std::abs(t1 - t2);
    double viol;
    double got, want;
    if (os) {
      // Necessary direction on the metric, exact statement on path lengths.
      got = s.dist_lower(u, v);
      want = span * s.dist(x, y);
      viol = std::max(got - want,
                      std::abs(s.path_length(u, v) - span * s.path_length(x, y)));
    } else {
      got = s.dist(u, v);
      want = span * s.dist(x, y);
      viol = std::abs(got - want);
    }
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["t1"] = t1;
      (*w)["t2"] = t2;
      (*w)["got"] = got;
      (*w)["want"] = want;
    }
    return viol;
  };
  return run_sweep("geodesic", s, p, eval);
}

PropertyReport check_consistency(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    double t1 = rng.uniform();
    double t2 = rng.uniform();
    double m = rng.uniform();
    Point u = s.bicombe(x, y, t1);
    Point v = s.bicombe(x, y, t2);
    Point direct = s.bicombe(x, y, t1 + m * (t2 - t1));
    Point restricted = s.bicombe(u, v, m);
    // Equality of points; the certified upper estimate of their distance is
    // a sound gauge on one-sided spaces too.
    double viol = s.dist(direct, restricted);
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["t1"] = t1;
      (*w)["t2"] = t2;
      (*w)["m"] = m;
      (*w)["direct"] = point_json(direct);
      (*w)["restricted"] = point_json(restricted);
    }
    return viol;
  };
  return run_sweep("consistency", s, p, eval);
}

PropertyReport check_equivariance(const Space& s, const CheckParams& p) {
  const auto& isos = s.isometries();
  if (isos.empty()) {
    PropertyReport rep = base_report("equivariance", s, p);
    rep.n = 0;
    rep.details["note"] = "no isometries registered";
    rep.finalize();
    return rep;
  }
  double scale = effective_scale(s, p);
  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    const Isometry& g = isos[i % isos.size()];
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    double t = rng.uniform();
    Point mapped = g.map(s.bicombe(x, y, t));
    Point replayed = s.bicombe(g.map(x), g.map(y), t);
    double viol = s.dist(mapped, replayed);
    if (w) {
      (*w)["isometry"] = g.label;
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["t"] = t;
      (*w)["mapped"] = point_json(mapped);
      (*w)["replayed"] = point_json(replayed);
    }
    return viol;
  };
  return run_sweep("equivariance", s, p, eval);
}

PropertyReport check_isometry_invariance(const Space& s, const CheckParams& p) {
  const auto& isos = s.isometries();
  if (isos.empty()) {
    PropertyReport rep = base_report("isometry", s, p);
    rep.n = 0;
    rep.details["note"] = "no isometries registered";
    rep.finalize();
    return rep;
  }
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    const Isometry& g = isos[i % isos.size()];
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    Point gx = g.map(x);
    Point gy = g.map(y);
    double viol = std::abs(s.dist(gx, gy) - s.dist(x, y));
    if (os)
      viol = std::max(viol, std::abs(s.dist_lower(gx, gy) - s.dist_lower(x, y)));
    if (w) {
      (*w)["isometry"] = g.label;
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["d"] = s.dist(x, y);
      (*w)["d_mapped"] = s.dist(gx, gy);
    }
    return viol;
  };
  return run_sweep("isometry", s, p, eval);
}

PropertyReport check_convexity(const Space& s, const ConvexityModulus& a,
                               const CheckParams& p) {
  if (s.one_sided() && !(a.increasing_in_s && a.increasing_in_s2))
    throw std::invalid_argument(
        "check_convexity: one-sided form needs a modulus that is increasing "
        "in both distance arguments");
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    Point x2 = s.sample(rng, scale);
    Point y2 = s.sample(rng, scale);
    double t = rng.uniform();
    Point u = s.bicombe(x, y, t);
    Point v = s.bicombe(x2, y2, t);
    double lhs, rhs;
    if (os) {
      // Upper estimates only strengthen the right side. The left side uses
      // the two-hop split through gamma_{x,y2}(t): each hop is a pair of
      // paths sharing an endpoint, which is exactly what the per-endpoint
      // modulus bounds, so a sound check needs min(direct, split).
      Point mid = s.bicombe(x, y2, t);
      double split = s.path_length(u, mid) + s.path_length(mid, v);
      lhs = std::min(s.path_length(u, v), split);
      rhs = a(t, s.dist(x, x2), s.dist(y, y2));
    } else {
      lhs = s.dist(u, v);
      rhs = a(t, s.dist(x, x2), s.dist(y, y2));
    }
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["x2"] = point_json(x2);
      (*w)["y2"] = point_json(y2);
      (*w)["t"] = t;
      (*w)["lhs"] = lhs;
      (*w)["rhs"] = rhs;
      (*w)["modulus"] = a.name;
    }
    return lhs - rhs;
  };
  return run_sweep("convexity", s, p, eval);
}

PropertyReport check_length_modulus(const Space& s, const LengthModulus& f,
                                    const CheckParams& p) {
  double scale = effective_scale(s, p);
  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    Point y = s.sample(rng, scale);
    Point x2 = s.sample(rng, scale);
    Point y2 = s.sample(rng, scale);
    double lhs = std::abs(s.path_length(x, y) - s.path_length(x2, y2));
    double rhs = f(s.dist(x, x2) + s.dist(y, y2));
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["y"] = point_json(y);
      (*w)["x2"] = point_json(x2);
      (*w)["y2"] = point_json(y2);
      (*w)["lhs"] = lhs;
      (*w)["rhs"] = rhs;
      (*w)["modulus"] = f.name;
    }
    return lhs - rhs;
  };
  return run_sweep("length-modulus", s, p, eval);
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> kNames = {
      "metric",   "geodesic",  "consistency",   "equivariance",
      "isometry", "convexity", "length-modulus"};
  return kNames;
}

PropertyReport run_check(const std::string& check, const Space& s,
                         const ConvexityModulus& a, const LengthModulus& f,
                         const CheckParams& p) {
  if (check == "metric") return check_metric(s, p);
  if (check == "geodesic") return check_geodesic(s, p);
  if (check == "consistency") return check_consistency(s, p);
  if (check == "equivariance") return check_equivariance(s, p);
  if (check == "isometry") return check_isometry_invariance(s, p);
  if (check == "convexity") return check_convexity(s, a, p);
  if (check == "length-modulus") return check_length_modulus(s, f, p);
  throw std::invalid_argument("unknown check: " + check);
}

}  // namespace bicomb
