#pragma once

#include <string>
#include <vector>

#include "bicomb/checks.hpp"
#include "bicomb/contraction.hpp"
#include "bicomb/group_action.hpp"
#include "bicomb/report.hpp"
#include "bicomb/space.hpp"
#include "bicomb/trail.hpp"

namespace bicomb {

// Is y within path-distance R of x? (Certified upper estimate, so a true
// membership certificate.)
bool p_radius_membership(const Space& s, const Point& x, const Point& y,
                         double R);

// The radial deformation retraction onto the R-ball around x0:
// H(x, t) = point of c_{x0, x} at arclength R + t (l - R), clamped into
// [0, l]. H(., 1) = id, H(., 0) retracts onto the ball, H_t H_t' = H_{t t'},
// and H is the identity on the ball for every t.
Point retract_toward_ball(const Space& s, const Point& x0, double R,
                          const Point& x, double t);

// One factor of a homotopy word: a group element (as a label word) preceded
// by a homotopy parameter. The innermost factor's t is unused.
struct HomotopyFactor {
  Word g;
  double t = 1.0;
};

// (g_k, t_k, ..., g_1, t_1, g_0), stored innermost-first:
// factors[0] = g_0, factors.back() = g_k.
using HomotopyWord = std::vector<HomotopyFactor>;

nlohmann::json homotopy_word_json(const HomotopyWord& w);

// The homotopy action applied to x in the R-ball around x0:
//   Psi(w, x) = H_0(Omega(w, x)),
//   Omega(g_0, x) = g_0 x,  Omega(g_j, t_j, rest) = g_j H_{t_j}(Omega(rest)).
// Throws std::invalid_argument when x lies outside the ball or w is empty.
Point homotopy_action_eval(const Space& s, const GroupAction& action,
                           const Point& x0, double R, const HomotopyWord& w,
                           const Point& x);

// All maps Psi(g_k, t_k, ..., g_0, .) whose letters multiply to the element
// of `a`: enumerates the letter sequences in S^(k+1) with matching element
// key and emits `count` homotopy words cycling through them. The first two
// get the all-ones and all-zeros parameter vectors (the strict cases);
// the rest draw parameters from Rng(seed, j). Throws std::runtime_error if
// the element has no such factorization.
std::vector<HomotopyWord> sample_F(const GroupAction& action, const Word& a,
                                   int k, int count, std::uint64_t seed);

// Constants wiring the contraction estimate into the action: beta_prime is
// the orbit diameter of the generators at x0, beta = (k+1) f(beta_prime)
// absorbs the per-step time shifts, and (T, R) come from the contraction
// recipe at target delta_inner = delta / (e^beta (k+1)) with the ball swell
// L = beta. dim_bound records 2 dim + 1.
struct TransferConfig {
  int k = 1;
  double delta = 0.1;
  Point x0;
  double beta_prime = 0.0;
  double beta = 0.0;
  double delta_inner = 0.0;
  ContractionConstants consts;
  double T = 0.0;
  double R = 0.0;
  int dim_bound = 0;
};

TransferConfig transfer_constants(const Space& s, const GroupAction& action,
                                  int k, double delta, const Point& x0,
                                  const ConvexityModulus& A,
                                  const LengthModulus& f);

nlohmann::json transfer_config_json(const TransferConfig& c);

// The embedding iota(g, x) = c_{g x0, g x} of pairs into trails.
Trail iota(const Space& s, const GroupAction& action, const Word& g,
           const Point& x0, const Point& x);

// Verifies the transfer condition by induction along sampled homotopy
// words: for each prefix a_m = (g_m ... g_0) of a random letter sequence,
// with f_m the corresponding partial map and tau_m the accumulated
// length-difference witnesses,
//   fs(shift_T iota(e, z), shift_{T + tau_m} iota(a_m^{-1}, f_m(z)))
//     <= (m+1) delta / (k+1) + quadrature error.
// If the witness fails the final bound, a 201-point grid over [-beta, beta]
// searches for a better tau before the violation is reported. Per-step
// worst bounds land in the report details.
PropertyReport check_transfer_condition(const Space& s,
                                        const GroupAction& action,
                                        const TransferConfig& config,
                                        const CheckParams& p);

// Axioms of the homotopy action on random letter words and points of the
// R-ball: splicing at t = 0, strict composition at t = 1, dropping leading
// and inner identities, and identity evaluation.
PropertyReport check_homotopy_axioms(const Space& s, const GroupAction& action,
                                     const Point& x0, double R,
                                     const CheckParams& p);

// The retraction semigroup law H_t H_t' = H_{t t'}, H_1 = id, and ball
// membership of H_0.
PropertyReport check_retraction_semigroup(const Space& s, const Point& x0,
                                          double R, const CheckParams& p);

// Membership test for the product witness relation: (h, y) is related to
// (g, x) when there are a, b in S and maps f in F_a, f' in F_b with
// f(x) = f'(y) and h = g a^-1 b. Searches label pairs whose element keys
// match g^-1 h, then samples maps; true only with an explicit witness,
// which is returned for replay.
struct S1Witness {
  bool found = false;
  nlohmann::json witness;
};

S1Witness s1_witness_check(const Space& s, const GroupAction& action,
                           const TransferConfig& config, const Word& g,
                           const Point& x, const Word& h, const Point& y,
                           double tol, int count, std::uint64_t seed);

}  // namespace bicomb
