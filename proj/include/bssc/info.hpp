#pragma once

#include "bssc/prob.hpp"

namespace bssc {

/// Binary entropy h(p) = -p log2 p - (1-p) log2(1-p), in bits.
/// h(0) = h(1) = 0; throws std::domain_error outside [0,1] beyond slack.
double binary_entropy(double p);

/// Shannon entropy in bits, in [0, log2 |alphabet|].
double entropy(const ProbVec& d);

/// Entropy of the whole table of a joint distribution, in bits.
double joint_entropy(const JointDist& j);

/// I(A;B) = H(A) + H(B) - H(A,B) of a rank-2 joint, in bits.
double mutual_information(const JointDist& j);

/// I(A;B|Z) = sum_z p(z) I(A;B|Z=z) of a rank-3 joint over (z, a, b).
/// Conditioning values with zero mass contribute 0.
double conditional_mi(const JointDist& j);

/// p(a,y) = sum_x p(a,x) ch(y|x); the a-marginal is preserved.
JointDist push_joint(const JointDist& j, const Channel& ch);

/// p(x,y) = px(x) ch(y|x).
JointDist joint_from_input(const ProbVec& px, const Channel& ch);

/// The binary skew-symmetric broadcast channel. Input 0 is erased to a
/// uniform Y1 while input 1 passes clean; Y2 sees the mirror image.
/// Relabeling X and swapping the receivers maps the channel to itself.
BroadcastChannel make_bssc();

/// Shared immutable instance of make_bssc().
const BroadcastChannel& bssc_channel();

struct CapacityResult {
  double value;    // bits
  ProbVec argmax;  // maximizing input distribution
};

/// max over p(x) of I(X;Y) for a binary-input channel, by grid scan plus
/// golden-section refinement of the (concave) objective.
CapacityResult single_user_capacity(const Channel& ch, double grid_step = 0.01,
                                    double tol = 1e-10);

}  // namespace bssc
