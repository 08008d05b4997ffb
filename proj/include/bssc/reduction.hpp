#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bssc/prob.hpp"

namespace bssc {

/// Outcome of replacing a stochastic map (U,V) -> X by a deterministic map
/// (U,V,W) -> X with W independent of (U,V). W is built from the interval
/// partition of [0,1] cut by the conditional cumulative thresholds
/// t_i(u,v) = P(X <= i | u, v); |W| <= |U||V||X|.
struct FunctionalizationResult {
  ProbVec w_dist;
  std::size_t u_size, v_size, x_size;
  std::vector<std::size_t> f;  // flattened (u,v,w) -> x, w fastest

  std::size_t map(std::size_t u, std::size_t v, std::size_t w) const {
    return f[(u * v_size + v) * w_dist.size() + w];
  }
  /// sum_w p(w) 1{f(u,v,w) = x}; reproduces p(x|u,v) on positive-mass cells.
  std::vector<double> recompose(std::size_t u, std::size_t v) const;
};

/// Interval construction of W for a rank-3 joint p(u,v,x). Interval
/// endpoints closer than 1e-12 are merged, so zero-length intervals never
/// appear and |W| stays minimal.
FunctionalizationResult hajek_construct(const JointDist& p);

/// A multiplicative perturbation direction along one axis,
/// q(..a..,x) = p(..a..,x) (1 + epsilon L(a)). Preserves the x-marginal
/// because E(L | X = x) = 0 for every x of positive mass.
struct LyapunovDirection {
  std::vector<double> L;  // indexed by the axis alphabet; zero off support
  double epsilon;         // support-killing step: min_a (1 + epsilon L(a)) = 0
};

/// Checks the direction invariants for p along the axis: sum_a p(a) L(a) = 0
/// and E(L|X=x) = 0 within tol, and the chosen epsilon kills some support
/// point without driving any factor negative.
bool direction_valid(const JointDist& p, std::size_t axis,
                     const LyapunovDirection& dir, double tol = 1e-10);

/// A unit-norm direction in the null space of the constraint matrix
/// A[x][a] = sum_other p(..a..,x) restricted to the support of the axis,
/// or nullopt when the null space is trivial (guaranteed nontrivial when
/// the axis support exceeds |X|). Deterministic choice: the basis vector of
/// the last free column of the elimination, unit-normalized, first nonzero
/// entry positive; epsilon set to the support-killing step.
std::optional<LyapunovDirection> null_space_direction(const JointDist& p,
                                                      std::size_t axis = 0);

/// Applies q = p (1 + epsilon L(a)) along the axis. Rejects steps that drive
/// a factor below -1e-12; factors within 1e-12 of zero are clamped to exactly
/// zero so the killed slice vanishes bit-exactly. Preserves the x-marginal
/// and the zero pattern of p.
JointDist apply_perturbation(const JointDist& p, std::size_t axis,
                             const LyapunovDirection& dir);

struct ReductionStep {
  std::size_t axis;
  std::vector<double> L;
  double epsilon;
  double obj_before;
  double obj_after;
};

struct ReductionResult {
  JointDist reduced;
  std::vector<ReductionStep> certificate;
};

using ObjectiveFn = std::function<double(const JointDist&)>;

/// Repeatedly finds a null-space direction on each non-x axis and applies the
/// support-killing step, dropping the emptied slices, until no nontrivial
/// direction remains (support <= |X| per axis for generic instances). The
/// x-marginal is preserved throughout. The per-step certificate records the
/// direction, the step size, and the objective before/after; the objective is
/// preserved only at maximizers, so callers must not expect it constant at
/// arbitrary inputs.
ReductionResult reduce_support(const JointDist& p,
                               const ObjectiveFn& objective = nullptr);

/// I(U;Y1) + I(V;Y2) - I(U;V) of a rank-3 joint p(u,v,x) pushed through the
/// BSSC; the objective reduced by reduce_support on (u,v,x) instances.
double conjecture_lhs(const JointDist& p_uvx);

}  // namespace bssc
