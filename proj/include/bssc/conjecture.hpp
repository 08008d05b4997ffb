#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bssc/info.hpp"
#include "bssc/prob.hpp"

namespace bssc {

/// Joint distribution of a binary pair (U,V); p_ij = P(U=i, V=j).
struct JointUV {
  double p00, p01, p10, p11;

  JointUV(double p00, double p01, double p10, double p11);

  double operator[](std::size_t cell) const {
    return cell == 0 ? p00 : cell == 1 ? p01 : cell == 2 ? p10 : p11;
  }
  std::array<double, 4> as_array() const { return {p00, p01, p10, p11}; }
  JointDist as_joint() const;
};

enum class FuncClass { Const0, Const1, UType, VType, AndType, OrType, XorType };

/// One of the 16 boolean functions X = f(U,V) on binary (U,V), keyed by the
/// truth table string f(0,0) f(0,1) f(1,0) f(1,1).
class BoolFunc2 {
 public:
  explicit BoolFunc2(std::array<int, 4> truth_table);
  static BoolFunc2 from_string(std::string_view bits);
  /// Accepts a 4-bit truth table or one of the aliases
  /// and, or, xor, u, v, const0, const1.
  static BoolFunc2 from_name(std::string_view name);
  static const std::vector<BoolFunc2>& all();

  int operator()(int u, int v) const { return table_[2 * u + v]; }
  const std::array<int, 4>& truth_table() const { return table_; }
  std::string bits() const;
  FuncClass func_class() const;

  bool operator==(const BoolFunc2& other) const { return table_ == other.table_; }

 private:
  std::array<int, 4> table_;
};

/// Relabeling class of a boolean function: the 16 functions fall into the
/// seven groups {const0, const1, u(2), v(2), and(4), or(4), xor(2)}.
FuncClass canonical_class(const BoolFunc2& f);
std::string class_name(FuncClass c);

/// The joints induced by (U,V) -> X = f(U,V) -> (Y1,Y2) over the BSSC.
struct InducedTriple {
  JointDist p_uy1;
  JointDist p_vy2;
  ProbVec p_x;
};
InducedTriple induced_triple(const JointUV& j, const BoolFunc2& f);

/// Both sides of the inequality
///   I(U;Y1) + I(V;Y2) - I(U;V) <= max(I(X;Y1), I(X;Y2)).
struct ObjectiveValue {
  double lhs;
  double rhs;
};
ObjectiveValue objective(const JointUV& j, const BoolFunc2& f);

/// Closed form of the left side for X = U AND V, term by term in binary
/// entropies. Matches objective(j, AND).lhs.
double lhs_closed_form_and(const JointUV& j);

/// Closed form of the left side for X = U OR V. Matches objective(j, OR).lhs.
double lhs_closed_form_or(const JointUV& j);

/// The involution p00<->q11, p01<->q01, p10<->q10, p11<->q00 carrying the
/// AND inequality into the OR inequality (gap-preserving).
JointUV and_or_bijection(const JointUV& j);

/// Per-function exhaustive grid check of the inequality.
struct ViolationReport {
  BoolFunc2 func;
  double grid_step;
  std::uint64_t points_checked;
  double max_gap;   // max over the grid of lhs - rhs
  JointUV arg_max;  // lexicographically smallest maximizer (tie-break)
  bool violated;    // max_gap > tol
};

/// Evaluates the objective at every point of the integer grid
/// { (i,j,k,l)/N : i+j+k+l = N }, N = 1/step. Deterministic: the report is
/// independent of the parallel schedule (per-slice results are merged in a
/// fixed order with a lexicographic tie-break).
ViolationReport verify_grid(const BoolFunc2& f, double step, double tol = 1e-9,
                            unsigned threads = 0);
std::vector<ViolationReport> verify_all(double step, double tol = 1e-9,
                                        unsigned threads = 0);

/// Grid scan of the left side followed by derivative-free local ascent with
/// pairwise mass-transfer moves of shrinking magnitude.
struct MaximizeResult {
  double value;
  JointUV arg;
};
MaximizeResult maximize_lhs(const BoolFunc2& f, double step = 0.02,
                            int refine_iters = 200);

/// The one-parameter family of interior first-order stationary joints for
/// X = U AND V: ((1-t)/3, 2(1-t)/3, t/5, 4t/5), t in [0,1].
JointUV stationary_family(double t);

/// First-order stationarity residuals for X = U AND V at an interior joint:
///   r1 = p00/p01 - (p00+p10)/(p01+p11/2)
///   r2 = p00/p10 - (p00+p01)/sqrt(p10(p10+2 p11))
/// Both vanish exactly on the stationary family. Joints with a vanishing
/// denominator are reported as boundary cases (they belong to the separate
/// boundary analyses, not to the interior ratio test).
struct AndResiduals {
  bool boundary;
  double r1;
  double r2;
};
AndResiduals and_first_order_residuals(const JointUV& j);

/// Multiplicative perturbation direction on the (U,V) cells,
/// q(u,v) = p(u,v) (1 + eps L(u,v)).
struct PerturbationUV {
  double L00, L01, L10, L11;
  double operator[](std::size_t cell) const {
    return cell == 0 ? L00 : cell == 1 ? L01 : cell == 2 ? L10 : L11;
  }
};

/// Checks the constraint set that keeps P(X=0) fixed under X = U AND V:
/// L11 = 0 and p00 L00 + p01 L01 + p10 L10 = 0.
bool satisfies_and_constraints(const JointUV& j, const PerturbationUV& L,
                               double tol = 1e-9);

/// Second-order quadratic form for X = U AND V:
///   Q(L) = E[E[L|U,Y1]^2] + E[E[L|V,Y2]^2] - E[E[L|U,V]^2]
/// under the joint induced over the BSSC. A local maximizer of the left side
/// (within its fixed-P(X=0) slice) must have Q(L) <= 0 for every admissible L.
double and_second_order_form(const JointUV& j, const PerturbationUV& L);

/// Directional derivative bracket for X = U XOR V under the admissible
/// additive perturbation family indexed by a,b,c,d >= 0:
///   (a-c)/2 log2 p00/(p00+2p01) + (d-b)/2 log2 p11/(p11+2p10)
/// + (b-a)/2 log2 p10/(p10+2p00) + (c-d)/2 log2 p01/(p01+2p11).
/// Must be >= 0 at any interior local maximizer, for all a,b,c,d >= 0.
/// Zero cell masses are rejected; those cases reduce to AND-type functions
/// (see xor_boundary_equivalent).
double xor_directional_derivative(const JointUV& j, double a, double b,
                                  double c, double d);

/// The additive 8-coefficient direction lambda(u,v,x) generated by
/// (a,b,c,d): lambda_001=a=-lambda_000, lambda_100=b=-lambda_101,
/// lambda_010=c=-lambda_011, lambda_111=d=-lambda_110. Indexing is
/// 4u+2v+x. Sign-feasible on the zero cells of the XOR-induced joint; it
/// preserves P(X=0) exactly when a + d = b + c (the balanced family, which
/// covers the paired-coefficient reductions used by the analysis).
std::array<double, 8> xor_additive_direction(double a, double b, double c,
                                             double d);
bool satisfies_xor_constraints(const std::array<double, 8>& lambda,
                               double tol = 1e-12);

/// For a XOR joint with one vanishing cell, the boolean function of AND/OR
/// type that agrees with XOR on the remaining support (cell = 2u+v).
BoolFunc2 xor_boundary_equivalent(std::size_t zero_cell);

/// On the stationary family, the slack of the inequality against the
/// I(X;Y1) branch:  numeric = H(Y1|U) - H(Y1|X) - H(V|U) + H(V|Y2),
/// closed = (3t/5) (h(1/3) - (3/2) h(1/9)). The two agree to rounding and
/// are nonnegative on [0,1].
struct GapIdentity {
  double numeric;
  double closed;
};
GapIdentity gap_identity(double t);

}  // namespace bssc
