#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bssc/prob.hpp"

namespace bssc {

/// Delta(x) = I(X;Y1) - I(X;Y2) over the BSSC with P(X=0) = x, evaluated via
/// the generic mutual-information pipeline. Skew-symmetry of the channel
/// gives Delta(x) = -Delta(1-x).
double difference_curve(double x);

struct MaxDifference {
  double d;    // max_x Delta(x)
  double x_d;  // maximizing P(X=0)
};
MaxDifference max_difference();

enum class EnvelopeMode { Analytic, Numeric };

/// Lower convex envelope g of the difference curve on [0,1]: a chord through
/// the origin up to the tangency breakpoint (4/5 analytically), Delta itself
/// beyond it.
struct EnvelopeResult {
  EnvelopeMode mode;
  double breakpoint;
  double chord_slope;  // Delta(breakpoint)/breakpoint
  std::vector<std::pair<double, double>> hull;  // numeric mode vertices

  double g(double x) const;
};

/// Analytic mode solves the tangency condition Delta(b)/b = Delta'(b) by
/// bisection (central-difference derivative); numeric mode takes the lower
/// hull of `samples` equispaced samples via a monotone chain.
EnvelopeResult lower_convex_envelope(std::size_t samples = 4096,
                                     EnvelopeMode mode = EnvelopeMode::Analytic);

/// One sum-rate evaluation with its achieving distribution: an auxiliary
/// variable A (W or U), branch input probabilities P(X=0|A=a), the named
/// mutual-information components, and the symmetric rate point.
struct SumRateReport {
  std::string bound_id;  // marton | outer | km
  double value;
  std::vector<double> aux_dist;     // p(a)
  std::vector<double> x0_given_aux; // P(X=0 | A=a)
  std::map<std::string, double> components;
  std::pair<double, double> rate_point;
};

/// Maximum sum rate of the two-auxiliary inner bound over binary W:
/// min(I(W;Y1), I(W;Y2)) + sum_w p(w) max(I(X;Y1|W=w), I(X;Y2|W=w)).
/// The per-branch max is valid because the U,V layer collapses under the
/// established inequality. Also computes the analytic cap
/// (max_x [I(X;Y1)+I(X;Y2)] + d) / 2 and checks value <= cap.
SumRateReport marton_sum_rate(double grid_step = 1.0 / 200, int refine_sweeps = 3);

/// Maximum sum rate of the (U,V)-pair outer bound at P(X=0) = 1/2:
/// I(X;Y1) - g(1/2) from the envelope, cross-checked against an independent
/// two-parameter grid search over binary-U p(u,x).
SumRateReport outer_sum_rate();

/// Maximum sum rate of the single-auxiliary (union-then-intersect) outer
/// bound: max over x in [0, breakpoint] of h(x/2) - x - g(x); reports the
/// stationarity constant c with x* = 2/(1+2^c) and the achieving p(u,x).
SumRateReport km_sum_rate();

/// Plot-ready rate pairs for one bound: single-user corners, the sum-rate
/// face endpoints, and the symmetric sum-rate point, ordered by increasing
/// R1 (R2 nonincreasing).
std::vector<std::pair<double, double>> rate_points(const std::string& bound_id);

/// min(I(W;Y1), I(W;Y2)) + sum_w p(w) max(I(X;Y1|W=w), I(X;Y2|W=w)) for a
/// rank-2 joint p(w,x) over the BSSC; the objective whose maximization needs
/// only |W| <= |X| support (see reduce_support).
double marton_objective(const JointDist& p_wx);

}  // namespace bssc
