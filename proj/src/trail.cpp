#include "bicomb/trail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bicomb {
namespace {

constexpr double kConstantTrail = 1e-14;  // below this a trail is a point

Point eval_with_length(const Trail& c, double l, double t) {
  if (l < kConstantTrail) return c.x;
  double s = std::clamp(t + c.shift, 0.0, l);
  return c.space->bicombe(c.x, c.y, s / l);
}

struct QuadAccum {
  double value = 0.0;
  double err = 0.0;
};

// Adaptive Simpson with Richardson correction; err collects the refinement
// estimates (with a safety factor) and the unresolved remainder when the
// depth cap is hit.
template <class F>
void simpson_step(const F& f, double a, double fa, double m, double fm,
                  double b, double fb, double whole, double tol, int depth,
                  QuadAccum* out) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    out->value += left + right + delta / 15.0;
    out->err += std::abs(delta) / 5.0;
    if (depth <= 0) out->err += std::abs(delta);
    return;
  }
  simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, out);
  simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, out);
}

template <class F>
void integrate_segment(const F& f, double a, double b, double tol,
                       QuadAccum* out) {
  if (!(b > a)) return;
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  simpson_step(f, a, fa, m, fm, b, fb, whole, tol, 28, out);
}

}  // namespace

double trail_length(const Trail& c) {
  return c.space->path_length(c.x, c.y);
}

double trail_cmin(const Trail& c) { return -c.shift; }

double trail_cmax(const Trail& c) { return trail_length(c) - c.shift; }

Point trail_eval(const Trail& c, double t) {
  return eval_with_length(c, trail_length(c), t);
}

Trail flow_shift(const Trail& c, double tau) {
  return Trail{c.space, c.x, c.y, c.shift + tau};
}

Trail restrict_trail(const Trail& c, double a, double b) {
  if (!(a < b)) throw std::domain_error("restrict_trail: need a < b");
  double l = trail_length(c);
  Point pa = eval_with_length(c, l, a);
  Point pb = eval_with_length(c, l, b);
  // The moving part starts at max(a, cmin), so the new shift cancels it.
  return Trail{c.space, pa, pb, -std::max(a, trail_cmin(c))};
}

FlowDistance fs_distance(const Trail& c, const Trail& d, double tol,
                         bool lower) {
  if (!c.space || !d.space)
    throw std::invalid_argument("fs_distance: trail without a space");
  if (c.space->name() != d.space->name())
    throw std::invalid_argument("fs_distance: trails in different spaces");
  if (!(tol > 0)) throw std::invalid_argument("fs_distance: tol must be > 0");
  const Space& s = *c.space;
  const double lc = trail_length(c);
  const double ld = trail_length(d);
  auto gap = [&](double t) {
    Point pc = eval_with_length(c, lc, t);
    Point pd = eval_with_length(d, ld, t);
    return lower ? s.dist_lower(pc, pd) : s.dist(pc, pd);
  };
  auto gap_upper = [&](double t) {
    Point pc = eval_with_length(c, lc, t);
    Point pd = eval_with_length(d, ld, t);
    return s.dist(pc, pd);
  };

  // 0 is always a breakpoint so each window endpoint has a definite sign
  // and the kink of e^{-|t|} never falls inside a segment.
  std::vector<double> bp = {0.0, trail_cmin(c), trail_cmax(c), trail_cmin(d),
                            trail_cmax(d)};
  std::sort(bp.begin(), bp.end());
  double lo = bp.front();
  double hi = bp.back();

  FlowDistance out;
  double a = lo;
  double b = hi;

  // Beyond the outermost breakpoints both trails are frozen, so the tails
  // integrate exactly. If a tail starts unworkably far out, clip instead:
  // everything past |t| = C is bounded by (gap(C) + 2) e^{-C} / 2 via the
  // 1-Lipschitz growth of the true distance, which dominates the lower
  // integrand as well.
  constexpr double kClipLadder[] = {20.0, 40.0, 80.0, 100.0};
  constexpr double kExactTailLimit = 100.0;
  if (lo >= -kExactTailLimit) {
    out.value += gap(lo) * std::exp(lo) * 0.5;
  } else {
    bool placed = false;
    for (double clip : kClipLadder) {
      double bound = (gap_upper(-clip) + 2.0) * std::exp(-clip) * 0.5;
      if (bound <= 0.25 * tol) {
        out.value += 0.5 * bound;
        out.error_bound += 0.5 * bound;
        a = -clip;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::runtime_error("fs_distance: requested accuracy unreachable");
  }
  if (hi <= kExactTailLimit) {
    out.value += gap(hi) * std::exp(-hi) * 0.5;
  } else {
    bool placed = false;
    for (double clip : kClipLadder) {
      double bound = (gap_upper(clip) + 2.0) * std::exp(-clip) * 0.5;
      if (bound <= 0.25 * tol) {
        out.value += 0.5 * bound;
        out.error_bound += 0.5 * bound;
        b = clip;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::runtime_error("fs_distance: requested accuracy unreachable");
  }

  // Interior: split at the breakpoints that fall inside the window and
  // integrate each smooth piece.
  std::vector<double> cuts = {a, b};
  for (double t : bp)
    if (t > a + 1e-12 && t < b - 1e-12) cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  double total = b - a;
  auto integrand = [&](double t) { return gap(t) * std::exp(-std::abs(t)) * 0.5; };
  QuadAccum acc;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double len = cuts[i + 1] - cuts[i];
    if (len <= 1e-12) continue;
    double seg_tol = 0.5 * tol * (total > 0 ? len / total : 1.0);
    integrate_segment(integrand, cuts[i], cuts[i + 1], seg_tol, &acc);
  }
  out.value += acc.value;
  out.error_bound += acc.err;
  if (out.error_bound > tol)
    throw std::runtime_error("fs_distance: requested accuracy unreachable");
  return out;
}

namespace {

constexpr double kFlowQuadTol = 1e-10;
constexpr double kShiftRange = 3.0;

Trail random_trail(const Space& s, Rng& rng, double scale) {
  Point x = s.sample(rng, scale);
  Point y = s.sample(rng, scale);
  double shift = rng.uniform(-kShiftRange, kShiftRange);
  return Trail{&s, x, y, shift};
}

}  // namespace

PropertyReport check_flow_eval(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Trail c = random_trail(s, rng, scale);
    Trail d = random_trail(s, rng, scale);
    double t0 = rng.uniform(-kShiftRange, kShiftRange);
    FlowDistance fs = fs_distance(c, d, kFlowQuadTol);
    Point pc = trail_eval(c, t0);
    Point pd = trail_eval(d, t0);
    double lhs = os ? s.dist_lower(pc, pd) : s.dist(pc, pd);
    double rhs = std::exp(std::abs(t0)) * (fs.value + fs.error_bound) + 2.0;
    if (w) {
      (*w)["t0"] = t0;
      (*w)["pointwise"] = lhs;
      (*w)["fs"] = fs.value;
      (*w)["fs_error"] = fs.error_bound;
      (*w)["bound"] = rhs;
    }
    return lhs - rhs;
  };
  return run_sweep("flow-eval", s, p, eval);
}

PropertyReport check_flow_shift(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  bool os = s.one_sided();
  auto eval = [&, scale, os](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Trail c = random_trail(s, rng, scale);
    Trail d = random_trail(s, rng, scale);
    double tau = rng.uniform(-kShiftRange, kShiftRange);
    double sigma = rng.uniform(-kShiftRange, kShiftRange);
    FlowDistance base = fs_distance(c, d, kFlowQuadTol);
    FlowDistance moved = fs_distance(flow_shift(c, tau), flow_shift(d, sigma),
                                     kFlowQuadTol, os);
    double lhs = moved.value - moved.error_bound;
    double rhs = std::exp(std::abs(tau)) * (base.value + base.error_bound) +
                 std::abs(sigma - tau);
    double pair_viol = lhs - rhs;
    FlowDistance self = fs_distance(flow_shift(c, tau), c, kFlowQuadTol, os);
    double self_viol = (self.value - self.error_bound) - std::abs(tau);
    if (w) {
      (*w)["tau"] = tau;
      (*w)["sigma"] = sigma;
      (*w)["fs_base"] = base.value;
      (*w)["fs_moved"] = moved.value;
      (*w)["fs_self"] = self.value;
      (*w)["parts"] = {{"pair", pair_viol}, {"self", self_viol}};
    }
    return std::max(pair_viol, self_viol);
  };
  return run_sweep("flow-shift", s, p, eval);
}

PropertyReport check_flow_restrict(const Space& s, const CheckParams& p) {
  double scale = effective_scale(s, p);
  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Trail c = random_trail(s, rng, scale);
    double a = rng.uniform(-kShiftRange, kShiftRange);
    double b = a + 0.05 + rng.uniform(0.0, 2.0 * kShiftRange);
    Trail r = restrict_trail(c, a, b);
    double t_in = rng.uniform(a, b);
    double t_below = a - rng.uniform(0.0, 2.0);
    double t_above = b + rng.uniform(0.0, 2.0);
    // Agreement of allegedly identical points, measured with the upper
    // estimate (identical inputs give zero even on one-sided spaces).
    double inside = s.dist(trail_eval(r, t_in), trail_eval(c, t_in));
    double below = s.dist(trail_eval(r, t_below), trail_eval(c, a));
    double above = s.dist(trail_eval(r, t_above), trail_eval(c, b));
    // The moving window of the restriction is the overlap of [a, b] with
    // the original's window.
    double overlap = std::max(
        0.0, std::min(b, trail_cmax(c)) - std::max(a, trail_cmin(c)));
    double window = std::abs(trail_length(r) - overlap) +
                    std::abs(trail_cmin(r) - std::max(a, trail_cmin(c)));
    double v = std::max({inside, below, above, window});
    if (w) {
      (*w)["a"] = a;
      (*w)["b"] = b;
      (*w)["parts"] = {{"inside", inside},
                       {"below", below},
                       {"above", above},
                       {"window", window}};
    }
    return v;
  };
  return run_sweep("flow-restrict", s, p, eval);
}

}  // namespace bicomb
