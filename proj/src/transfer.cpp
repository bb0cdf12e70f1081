#include "bicomb/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bicomb {
namespace {

// All letter tuples (innermost first, one generator label per slot) whose
// product, read outermost first, represents the same element as `a`.
std::vector<std::vector<std::string>> factor_tuples(const GroupAction& action,
                                                    const Word& a, int k) {
  const auto& gens = action.generators();
  const std::string target = action.element_key(a);
  const std::size_t slots = static_cast<std::size_t>(k) + 1;
  std::vector<std::vector<std::string>> found;
  std::vector<std::size_t> idx(slots, 0);
  for (;;) {
    Word w(slots);
    for (std::size_t j = 0; j < slots; ++j) w[j] = gens[idx[slots - 1 - j]];
    if (action.element_key(w) == target) {
      std::vector<std::string> tuple(slots);
      for (std::size_t j = 0; j < slots; ++j) tuple[j] = gens[idx[j]];
      found.push_back(std::move(tuple));
    }
    std::size_t d = 0;
    while (d < slots && ++idx[d] == gens.size()) idx[d++] = 0;
    if (d == slots) break;
  }
  return found;
}

Point sampled_ball_point(const Space& s, const Point& x0, double R,
                         double scale, Rng& rng) {
  double radius = R * 0.999 * rng.uniform();
  return pull_toward(s, x0, s.sample(rng, scale), radius);
}

}  // namespace

bool p_radius_membership(const Space& s, const Point& x, const Point& y,
                         double R) {
  return s.path_length(x, y) <= R;
}

Point retract_toward_ball(const Space& s, const Point& x0, double R,
                          const Point& x, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("retract_toward_ball: t outside [0,1]");
  const double l = s.path_length(x0, x);
  const double target = R + t * (l - R);
  // Covers the whole ball (for every t) and t = 1 (for every x) exactly.
  if (target >= l) return x;
  return s.bicombe(x0, x, std::max(0.0, target) / l);
}

nlohmann::json homotopy_word_json(const HomotopyWord& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t j = 0; j < w.size(); ++j) {
    nlohmann::json f;
    f["g"] = w[j].g;
    if (j > 0) f["t"] = w[j].t;
    arr.push_back(std::move(f));
  }
  return arr;
}

Point homotopy_action_eval(const Space& s, const GroupAction& action,
                           const Point& x0, double R, const HomotopyWord& w,
                           const Point& x) {
  if (w.empty())
    throw std::invalid_argument("homotopy word needs at least one factor");
  if (s.path_length(x0, x) > R * (1.0 + 1e-9) + 1e-9)
    throw std::invalid_argument(
        "homotopy action: point outside the radius-R ball");
  Point cur = action.apply_word(w[0].g, x);
  for (std::size_t j = 1; j < w.size(); ++j) {
    cur = retract_toward_ball(s, x0, R, cur, w[j].t);
    cur = action.apply_word(w[j].g, cur);
  }
  return retract_toward_ball(s, x0, R, cur, 0.0);
}

std::vector<HomotopyWord> sample_F(const GroupAction& action, const Word& a,
                                   int k, int count, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("sample_F: k must be >= 0");
  if (count <= 0) return {};
  const auto tuples = factor_tuples(action, a, k);
  if (tuples.empty())
    throw std::runtime_error("sample_F: element not expressible as a product of " +
                             std::to_string(k + 1) + " generators");
  std::vector<HomotopyWord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const auto& tuple = tuples[static_cast<std::size_t>(j) % tuples.size()];
    HomotopyWord w(tuple.size());
    Rng rng(seed, static_cast<std::uint64_t>(j));
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      w[i].g = Word{tuple[i]};
      if (i == 0) continue;  // innermost parameter slot is unused
      w[i].t = j == 0 ? 1.0 : (j == 1 ? 0.0 : rng.uniform());
    }
    out.push_back(std::move(w));
  }
  return out;
}

TransferConfig transfer_constants(const Space& s, const GroupAction& action,
                                  int k, double delta, const Point& x0,
                                  const ConvexityModulus& A,
                                  const LengthModulus& f) {
  if (k < 0) throw std::invalid_argument("transfer_constants: k must be >= 0");
  if (!(delta > 0.0))
    throw std::invalid_argument("transfer_constants: delta must be positive");
  TransferConfig cfg;
  cfg.k = k;
  cfg.delta = delta;
  cfg.x0 = x0;
  const auto& gens = action.generators();
  std::vector<Point> orbit;
  orbit.reserve(gens.size());
  for (const auto& g : gens) orbit.push_back(action.apply(g, x0));
  double bp = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.size(); ++j)
      bp = std::max(bp, s.dist(orbit[i], orbit[j]));
  cfg.beta_prime = bp;
  if (!(bp > 0.0))
    throw std::invalid_argument(
        "transfer_constants: generator orbit is a single point");
  cfg.beta = (k + 1) * f(bp);
  cfg.delta_inner = delta / (std::exp(cfg.beta) * (k + 1));
  // The ball swell L = beta absorbs how far the intermediate images can
  // leave the R-ball: each of the k+1 stages moves the anchoring path
  // length by at most f(beta').
  cfg.consts = contraction_constants(bp, cfg.beta, cfg.delta_inner, A, f);
  cfg.T = cfg.consts.T;
  cfg.R = cfg.consts.r;
  cfg.dim_bound = 2 * s.dim() + 1;
  return cfg;
}

nlohmann::json transfer_config_json(const TransferConfig& c) {
  nlohmann::json j;
  j["k"] = c.k;
  j["delta"] = c.delta;
  j["x0"] = point_json(c.x0);
  j["beta_prime"] = c.beta_prime;
  j["beta"] = c.beta;
  j["delta_inner"] = c.delta_inner;
  j["r_prime"] = c.consts.r_prime;
  j["delta_prime"] = c.consts.delta_prime;
  j["r_double_prime"] = c.consts.r_double_prime;
  j["T"] = c.T;
  j["R"] = c.R;
  j["dim_bound"] = c.dim_bound;
  return j;
}

Trail iota(const Space& s, const GroupAction& action, const Word& g,
           const Point& x0, const Point& x) {
  Trail c;
  c.space = &s;
  c.x = action.apply_word(g, x0);
  c.y = action.apply_word(g, x);
  c.shift = 0.0;
  return c;
}

PropertyReport check_transfer_condition(const Space& s,
                                        const GroupAction& action,
                                        const TransferConfig& config,
                                        const CheckParams& p) {
  const double scale = effective_scale(s, p);
  const auto& gens = action.generators();
  const double step_bound_unit = config.delta / (config.k + 1);
  const double fs_tol = std::max(1e-10, step_bound_unit * 1e-2);
  const double f_beta_prime = config.beta / (config.k + 1);
  std::atomic<std::uint64_t> fallback_rescues{0};

  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    // Most samples sit on a thin shell near the ball boundary, where the
    // retraction and the flow window have genuine content; every fourth
    // explores the interior.
    Point z_raw = s.sample(rng, scale);
    double u = rng.uniform();
    double l_target = i % 4 == 3 ? config.R * u : config.R - 40.0 * u;
    l_target = std::clamp(l_target, 0.0, config.R * (1.0 - 1e-12));
    Point z = pull_toward(s, config.x0, z_raw, l_target);

    int steps = static_cast<int>(rng.below(static_cast<std::uint64_t>(config.k) + 1));
    std::vector<std::string> letters(static_cast<std::size_t>(steps) + 1);
    for (auto& g : letters) g = gens[rng.below(gens.size())];
    std::vector<double> ts(letters.size(), 1.0);
    for (std::size_t m = 1; m < ts.size(); ++m) ts[m] = rng.uniform();

    Trail left = iota(s, action, Word{}, config.x0, z);
    left.shift = config.T;

    double tau = 0.0;
    double viol = -std::numeric_limits<double>::infinity();
    Word a_word;     // letters[m..0], outermost first
    Point omega = z; // the raw composition before the final retraction
    Point psi = z;
    std::vector<double> step_taus, step_certs, step_bounds;
    int worst_step = -1;
    bool worst_is_fs = false;

    for (int m = 0; m <= steps; ++m) {
      Point anchor;  // the moving point whose anchoring paths define tau
      if (m == 0) {
        anchor = z;
        omega = action.apply(letters[0], z);
      } else {
        anchor = retract_toward_ball(s, config.x0, config.R, omega, ts[m]);
        omega = action.apply(letters[m], anchor);
      }
      psi = retract_toward_ball(s, config.x0, config.R, omega, 0.0);
      a_word.insert(a_word.begin(), letters[m]);

      Point shifted_base = action.apply(action.inverse_label(letters[m]), config.x0);
      double l_anchor = s.path_length(config.x0, anchor);
      double step_tau = s.path_length(shifted_base, anchor) - l_anchor;
      tau += step_tau;
      step_taus.push_back(step_tau);

      // Each anchoring path stays within the swollen ball; each per-step
      // time shift within the single-stage length modulus.
      double mass_viol = l_anchor - (config.R + config.beta);
      double tau_viol = std::abs(step_tau) - f_beta_prime;

      Word a_inv = action.inverse_word(a_word);
      Trail right = iota(s, action, a_inv, config.x0, psi);
      right.shift = config.T + tau;
      FlowDistance fd = fs_distance(left, right, fs_tol, /*lower=*/true);
      double cert = fd.value - fd.error_bound;
      double bound = (m + 1) * step_bound_unit;
      step_certs.push_back(cert);
      step_bounds.push_back(bound);

      double local = std::max({cert - bound, mass_viol, tau_viol});
      if (local > viol) {
        viol = local;
        worst_step = m;
        worst_is_fs = cert - bound >= std::max(mass_viol, tau_viol);
      }
    }

    // The accumulated length-difference witness is the proof's tau; only if
    // it misses does a grid over the full window look for a replacement.
    bool fallback_used = false;
    double grid_best = std::numeric_limits<double>::infinity();
    if (viol > p.tol && worst_step == steps && worst_is_fs) {
      Word a_inv = action.inverse_word(a_word);
      Trail right0 = iota(s, action, a_inv, config.x0, psi);
      for (int j = 0; j < 201; ++j) {
        double tau_j = -config.beta + config.beta * j / 100.0;
        Trail right = right0;
        right.shift = config.T + tau_j;
        FlowDistance fd = fs_distance(left, right, fs_tol, /*lower=*/true);
        grid_best = std::min(grid_best, fd.value - fd.error_bound);
      }
      double rescued = grid_best - config.delta;
      if (rescued < viol) {
        fallback_used = true;
        if (rescued <= p.tol && w == nullptr) ++fallback_rescues;
        double rest = -std::numeric_limits<double>::infinity();
        for (int m = 0; m < steps; ++m)
          rest = std::max(rest, step_certs[static_cast<std::size_t>(m)] -
                                    step_bounds[static_cast<std::size_t>(m)]);
        viol = std::max(rest, rescued);
      }
    }

    if (w) {
      (*w)["z"] = point_json(z);
      (*w)["letters"] = letters;
      (*w)["ts"] = ts;
      (*w)["tau"] = tau;
      (*w)["step_taus"] = step_taus;
      (*w)["step_certs"] = step_certs;
      (*w)["step_bounds"] = step_bounds;
      (*w)["worst_step"] = worst_step;
      (*w)["fallback_used"] = fallback_used;
      if (fallback_used) (*w)["grid_best"] = grid_best;
    }
    return viol;
  };

  PropertyReport rep = run_sweep("transfer-condition", s, p, eval);
  rep.details["config"] = transfer_config_json(config);
  rep.details["fallback_rescues"] = fallback_rescues.load();
  return rep;
}

PropertyReport check_homotopy_axioms(const Space& s, const GroupAction& action,
                                     const Point& x0, double R,
                                     const CheckParams& p) {
  const double scale = effective_scale(s, p);
  const auto& gens = action.generators();

  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point z = sampled_ball_point(s, x0, R, scale, rng);
    int len = 1 + static_cast<int>(rng.below(3));
    HomotopyWord base(static_cast<std::size_t>(len));
    for (int j = 0; j < len; ++j) {
      base[static_cast<std::size_t>(j)].g = Word{gens[rng.below(gens.size())]};
      base[static_cast<std::size_t>(j)].t = j == 0 ? 1.0 : rng.uniform();
    }
    std::size_t pos = len >= 2 ? 1 + rng.below(static_cast<std::uint64_t>(len) - 1) : 0;
    double ta = rng.uniform();
    double tb = rng.uniform();

    auto psi = [&](const HomotopyWord& hw, const Point& pt) {
      return homotopy_action_eval(s, action, x0, R, hw, pt);
    };
    Point ref = psi(base, z);

    double worst = -std::numeric_limits<double>::infinity();
    const char* worst_axiom = "";
    auto consider = [&](const char* label, double v) {
      if (v > worst) {
        worst = v;
        worst_axiom = label;
      }
    };

    // (6) the bare identity acts trivially
    consider("identity-eval", s.dist(psi({{Word{"e"}, 1.0}}, z), z));

    // (3) a leading identity factor drops
    {
      HomotopyWord lhs = base;
      lhs.push_back({Word{"e"}, ta});
      consider("drop-leading-e", s.dist(psi(lhs, z), ref));
    }

    // (5) an innermost identity factor drops
    {
      HomotopyWord lhs = base;
      lhs.insert(lhs.begin(), {Word{"e"}, 1.0});
      lhs[1].t = tb;  // the old innermost factor gains a parameter
      consider("drop-inner-e", s.dist(psi(lhs, z), ref));
    }

    if (len >= 2) {
      // (1) parameter 0 splices the word
      {
        HomotopyWord lhs = base;
        lhs[pos].t = 0.0;
        HomotopyWord inner(base.begin(), base.begin() + static_cast<long>(pos));
        HomotopyWord outer(base.begin() + static_cast<long>(pos), base.end());
        Point spliced = psi(outer, psi(inner, z));
        consider("splice-at-zero", s.dist(psi(lhs, z), spliced));
      }
      // (2) parameter 1 multiplies adjacent factors
      {
        HomotopyWord lhs = base;
        lhs[pos].t = 1.0;
        HomotopyWord rhs;
        rhs.reserve(base.size() - 1);
        for (std::size_t j = 0; j + 1 < pos; ++j) rhs.push_back(base[j]);
        HomotopyFactor merged;
        merged.g = base[pos].g;
        merged.g.insert(merged.g.end(), base[pos - 1].g.begin(),
                        base[pos - 1].g.end());
        merged.t = base[pos - 1].t;
        rhs.push_back(merged);
        for (std::size_t j = pos + 1; j < base.size(); ++j) rhs.push_back(base[j]);
        consider("compose-at-one", s.dist(psi(lhs, z), psi(rhs, z)));
      }
      // (4) an interior identity multiplies the parameters
      {
        HomotopyWord lhs = base;
        lhs[pos].t = ta;
        lhs.insert(lhs.begin() + static_cast<long>(pos), {Word{"e"}, tb});
        HomotopyWord rhs = base;
        rhs[pos].t = ta * tb;
        consider("merge-parameters", s.dist(psi(lhs, z), psi(rhs, z)));
      }
    }

    // Outputs land back in the ball (clamping makes this structural).
    consider("ball-membership", s.path_length(x0, ref) - R);

    if (w) {
      (*w)["z"] = point_json(z);
      (*w)["word"] = homotopy_word_json(base);
      (*w)["axiom"] = worst_axiom;
      (*w)["pos"] = pos;
      (*w)["ta"] = ta;
      (*w)["tb"] = tb;
    }
    return worst;
  };

  PropertyReport rep = run_sweep("homotopy-axioms", s, p, eval);
  rep.details["R"] = R;
  return rep;
}

PropertyReport check_retraction_semigroup(const Space& s, const Point& x0,
                                          double R, const CheckParams& p) {
  const double scale = effective_scale(s, p);

  auto eval = [&, scale](std::uint64_t i, nlohmann::json* w) {
    Rng rng(p.seed, i);
    Point x = s.sample(rng, scale);
    double t = rng.uniform();
    double tp = rng.uniform();

    Point two_step = retract_toward_ball(s, x0, R, retract_toward_ball(s, x0, R, x, tp), t);
    Point one_step = retract_toward_ball(s, x0, R, x, t * tp);
    double semigroup = s.dist(two_step, one_step);
    double endpoint = s.dist(retract_toward_ball(s, x0, R, x, 1.0), x);
    double member = s.path_length(x0, retract_toward_ball(s, x0, R, x, 0.0)) - R;
    Point inside = pull_toward(s, x0, x, R * 0.9 * rng.uniform());
    double fixes_ball = s.dist(retract_toward_ball(s, x0, R, inside, t), inside);

    double viol = std::max({semigroup, endpoint, member, fixes_ball});
    if (w) {
      (*w)["x"] = point_json(x);
      (*w)["t"] = t;
      (*w)["t_prime"] = tp;
      (*w)["semigroup"] = semigroup;
      (*w)["endpoint"] = endpoint;
      (*w)["membership"] = member;
      (*w)["fixes_ball"] = fixes_ball;
    }
    return viol;
  };

  PropertyReport rep = run_sweep("retraction-semigroup", s, p, eval);
  rep.details["R"] = R;
  return rep;
}

S1Witness s1_witness_check(const Space& s, const GroupAction& action,
                           const TransferConfig& config, const Word& g,
                           const Point& x, const Word& h, const Point& y,
                           double tol, int count, std::uint64_t seed) {
  S1Witness out;
  Word gih = action.inverse_word(g);
  gih.insert(gih.end(), h.begin(), h.end());
  const std::string target = action.element_key(gih);
  const auto& gens = action.generators();
  nlohmann::json tried = nlohmann::json::array();

  for (const auto& a : gens) {
    for (const auto& b : gens) {
      if (action.element_key(Word{action.inverse_label(a), b}) != target)
        continue;
      auto maps_a = sample_F(action, Word{a}, config.k, count, seed);
      auto maps_b = sample_F(action, Word{b}, config.k, count, seed ^ 0x5851f42d4c957f2dull);
      for (const auto& f : maps_a) {
        Point fx = homotopy_action_eval(s, action, config.x0, config.R, f, x);
        for (const auto& fp : maps_b) {
          Point fpy = homotopy_action_eval(s, action, config.x0, config.R, fp, y);
          double d = s.dist(fx, fpy);
          if (d <= tol) {
            out.found = true;
            out.witness["a"] = a;
            out.witness["b"] = b;
            out.witness["f"] = homotopy_word_json(f);
            out.witness["f_prime"] = homotopy_word_json(fp);
            out.witness["dist"] = d;
            return out;
          }
        }
      }
      tried.push_back({{"a", a}, {"b", b}});
    }
  }
  out.witness["reason"] = tried.empty()
                              ? "no generator pair matches the label constraint"
                              : "no sampled map pair brought the points together";
  out.witness["pairs_tried"] = tried;
  return out;
}

}  // namespace bicomb
