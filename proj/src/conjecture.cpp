#include "bssc/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace bssc {

namespace {

// w * h(num/den) with vanishing-denominator terms dropping out (the weight
// vanishes with the denominator in every closed-form term below).
inline double weighted_h(double w, double num, double den) {
  if (w <= kZeroMass || den <= kZeroMass) return 0.0;
  return w * binary_entropy(num / den);
}

void check_mass(double p, const char* what) {
  if (p < -kMassTol) {
    throw std::invalid_argument(std::string(what) + ": negative entry");
  }
}

}  // namespace

JointUV::JointUV(double a00, double a01, double a10, double a11)
    : p00(a00), p01(a01), p10(a10), p11(a11) {
  check_mass(p00, "JointUV");
  check_mass(p01, "JointUV");
  check_mass(p10, "JointUV");
  check_mass(p11, "JointUV");
  p00 = std::max(p00, 0.0);
  p01 = std::max(p01, 0.0);
  p10 = std::max(p10, 0.0);
  p11 = std::max(p11, 0.0);
  const double sum = p00 + p01 + p10 + p11;
  if (std::abs(sum - 1.0) > kMassTol) {
    throw std::invalid_argument("JointUV: total mass " + std::to_string(sum) +
                                " != 1");
  }
  if (std::abs(sum - 1.0) > 1e-14) {
    p00 /= sum;
    p01 /= sum;
    p10 /= sum;
    p11 /= sum;
  }
}

JointDist JointUV::as_joint() const {
  return JointDist({2, 2}, {p00, p01, p10, p11});
}

BoolFunc2::BoolFunc2(std::array<int, 4> truth_table) : table_(truth_table) {
  for (int b : table_) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("BoolFunc2: truth table bits must be 0/1");
    }
  }
}

BoolFunc2 BoolFunc2::from_string(std::string_view bits) {
  if (bits.size() != 4 || bits.find_first_not_of("01") != std::string_view::npos) {
    throw std::invalid_argument("BoolFunc2: expected 4-bit string, got '" +
                                std::string(bits) + "'");
  }
  return BoolFunc2({bits[0] - '0', bits[1] - '0', bits[2] - '0', bits[3] - '0'});
}

BoolFunc2 BoolFunc2::from_name(std::string_view name) {
  if (name == "and") return from_string("0001");
  if (name == "or") return from_string("0111");
  if (name == "xor") return from_string("0110");
  if (name == "u") return from_string("0011");
  if (name == "v") return from_string("0101");
  if (name == "const0") return from_string("0000");
  if (name == "const1") return from_string("1111");
  return from_string(name);
}

const std::vector<BoolFunc2>& BoolFunc2::all() {
  static const std::vector<BoolFunc2> funcs = [] {
    std::vector<BoolFunc2> fs;
    for (int code = 0; code < 16; ++code) {
      fs.push_back(BoolFunc2({(code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1,
                              code & 1}));
    }
    return fs;
  }();
  return funcs;
}

std::string BoolFunc2::bits() const {
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + table_[i]);
  return s;
}

FuncClass BoolFunc2::func_class() const { return canonical_class(*this); }

FuncClass canonical_class(const BoolFunc2& f) {
  const auto& t = f.truth_table();
  const int ones = t[0] + t[1] + t[2] + t[3];
  if (ones == 0) return FuncClass::Const0;
  if (ones == 4) return FuncClass::Const1;
  const bool depends_u = (t[0] != t[2]) || (t[1] != t[3]);
  const bool depends_v = (t[0] != t[1]) || (t[2] != t[3]);
  if (depends_u && !depends_v) return FuncClass::UType;
  if (depends_v && !depends_u) return FuncClass::VType;
  if (ones == 1) return FuncClass::AndType;
  if (ones == 3) return FuncClass::OrType;
  return FuncClass::XorType;
}

std::string class_name(FuncClass c) {
  switch (c) {
    case FuncClass::Const0: return "const0";
    case FuncClass::Const1: return "const1";
    case FuncClass::UType: return "u";
    case FuncClass::VType: return "v";
    case FuncClass::AndType: return "and";
    case FuncClass::OrType: return "or";
    case FuncClass::XorType: return "xor";
  }
  return "?";
}

InducedTriple induced_triple(const JointUV& j, const BoolFunc2& f) {
  double p_ux[2][2] = {{0, 0}, {0, 0}};
  double p_vx[2][2] = {{0, 0}, {0, 0}};
  double p_x[2] = {0, 0};
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      const double p = j[static_cast<std::size_t>(2 * u + v)];
      const int x = f(u, v);
      p_ux[u][x] += p;
      p_vx[v][x] += p;
      p_x[x] += p;
    }
  }
  const BroadcastChannel& bc = bssc_channel();
  JointDist j_ux({2, 2}, {p_ux[0][0], p_ux[0][1], p_ux[1][0], p_ux[1][1]});
  JointDist j_vx({2, 2}, {p_vx[0][0], p_vx[0][1], p_vx[1][0], p_vx[1][1]});
  return InducedTriple{push_joint(j_ux, bc.ch1), push_joint(j_vx, bc.ch2),
                       ProbVec({p_x[0], p_x[1]})};
}

namespace {

double lhs_from_triple(const JointUV& j, const InducedTriple& tri) {
  return mutual_information(tri.p_uy1) + mutual_information(tri.p_vy2) -
         mutual_information(j.as_joint());
}

double lhs_only(const JointUV& j, const BoolFunc2& f) {
  return lhs_from_triple(j, induced_triple(j, f));
}

}  // namespace

ObjectiveValue objective(const JointUV& j, const BoolFunc2& f) {
  const InducedTriple tri = induced_triple(j, f);
  const BroadcastChannel& bc = bssc_channel();
  const double iy1 = mutual_information(joint_from_input(tri.p_x, bc.ch1));
  const double iy2 = mutual_information(joint_from_input(tri.p_x, bc.ch2));
  return ObjectiveValue{lhs_from_triple(j, tri), std::max(iy1, iy2)};
}

double lhs_closed_form_and(const JointUV& j) {
  const double p00 = j.p00, p01 = j.p01, p10 = j.p10, p11 = j.p11;
  return binary_entropy((p00 + p01 + p10) / 2) -
         (p00 + p01) * binary_entropy(0.5) -
         weighted_h(p10 + p11, p10, 2 * (p10 + p11)) +
         binary_entropy(p11 / 2) -
         weighted_h(p01 + p11, p11, 2 * (p01 + p11)) -
         binary_entropy(p00 + p01) +
         weighted_h(p00 + p10, p00, p00 + p10) +
         weighted_h(p01 + p11, p01, p01 + p11);
}

double lhs_closed_form_or(const JointUV& j) {
  const double q00 = j.p00, q01 = j.p01, q10 = j.p10, q11 = j.p11;
  return binary_entropy(q00 / 2) -
         weighted_h(q01 + q00, q00, 2 * (q01 + q00)) +
         binary_entropy((q11 + q01 + q10) / 2) -
         (q11 + q01) * binary_entropy(0.5) -
         weighted_h(q10 + q00, q10, 2 * (q10 + q00)) -
         binary_entropy(q11 + q01) +
         weighted_h(q11 + q10, q11, q11 + q10) +
         weighted_h(q01 + q00, q01, q01 + q00);
}

JointUV and_or_bijection(const JointUV& j) {
  return JointUV(j.p11, j.p01, j.p10, j.p00);
}

namespace {

struct SliceBest {
  double gap = -std::numeric_limits<double>::infinity();
  std::array<std::uint64_t, 4> idx{0, 0, 0, 0};
};

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::uint64_t grid_resolution(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw std::invalid_argument("verify_grid: step outside (0, 1/2]");
  }
  const auto n = static_cast<std::uint64_t>(std::llround(1.0 / step));
  if (n < 2 || std::abs(n * step - 1.0) > 1e-9) {
    throw std::invalid_argument("verify_grid: step must divide 1 into an integer grid");
  }
  return n;
}

}  // namespace

ViolationReport verify_grid(const BoolFunc2& f, double step, double tol,
                            unsigned threads) {
  const std::uint64_t n = grid_resolution(step);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<SliceBest> slice(n + 1);

  auto run_slice = [&](std::uint64_t i) {
    SliceBest best;
    const double pi = static_cast<double>(i) * inv_n;
    for (std::uint64_t jj = 0; jj + i <= n; ++jj) {
      const double pj = static_cast<double>(jj) * inv_n;
      for (std::uint64_t k = 0; k + jj + i <= n; ++k) {
        const std::uint64_t l = n - i - jj - k;
        const JointUV p(pi, pj, static_cast<double>(k) * inv_n,
                        static_cast<double>(l) * inv_n);
        const ObjectiveValue obj = objective(p, f);
        const double gap = obj.lhs - obj.rhs;
        if (gap > best.gap) {
          best.gap = gap;
          best.idx = {i, jj, k, l};
        }
      }
    }
    slice[i] = best;
  };

  const unsigned n_threads =
      std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(n + 1));
  if (n_threads <= 1) {
    for (std::uint64_t i = 0; i <= n; ++i) run_slice(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t i = t; i <= n; i += n_threads) run_slice(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  SliceBest best;  // merged in slice order => lexicographically smallest argmax
  for (const SliceBest& s : slice) {
    if (s.gap > best.gap) best = s;
  }
  const std::uint64_t points = (n + 1) * (n + 2) * (n + 3) / 6;
  const JointUV arg(static_cast<double>(best.idx[0]) * inv_n,
                    static_cast<double>(best.idx[1]) * inv_n,
                    static_cast<double>(best.idx[2]) * inv_n,
                    static_cast<double>(best.idx[3]) * inv_n);
  return ViolationReport{f, inv_n, points, best.gap, arg, best.gap > tol};
}

std::vector<ViolationReport> verify_all(double step, double tol,
                                        unsigned threads) {
  std::vector<ViolationReport> reports;
  reports.reserve(16);
  for (const BoolFunc2& f : BoolFunc2::all()) {
    reports.push_back(verify_grid(f, step, tol, threads));
  }
  return reports;
}

MaximizeResult maximize_lhs(const BoolFunc2& f, double step, int refine_iters) {
  const std::uint64_t n = grid_resolution(step);
  const double inv_n = 1.0 / static_cast<double>(n);

  std::array<double, 4> best{1.0, 0.0, 0.0, 0.0};
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i <= n; ++i) {
    for (std::uint64_t j = 0; j + i <= n; ++j) {
      for (std::uint64_t k = 0; k + j + i <= n; ++k) {
        const std::uint64_t l = n - i - j - k;
        const JointUV p(i * inv_n, j * inv_n, k * inv_n, l * inv_n);
        const double val = lhs_only(p, f);
        if (val > best_val) {
          best_val = val;
          best = p.as_array();
        }
      }
    }
  }

  // Local ascent with pairwise mass transfers; stays on the simplex by
  // construction and shrinks the move size down to 1e-10.
  for (double delta = step; delta >= 1e-10; delta /= 2) {
    for (int it = 0; it < refine_iters; ++it) {
      bool improved = false;
      for (std::size_t from = 0; from < 4; ++from) {
        if (best[from] < delta) continue;
        for (std::size_t to = 0; to < 4; ++to) {
          if (to == from) continue;
          std::array<double, 4> cand = best;
          cand[from] -= delta;
          cand[to] += delta;
          const JointUV p(cand[0], cand[1], cand[2], cand[3]);
          const double val = lhs_only(p, f);
          if (val > best_val) {
            best_val = val;
            best = p.as_array();
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
  return MaximizeResult{best_val, JointUV(best[0], best[1], best[2], best[3])};
}

JointUV stationary_family(double t) {
  if (t < -kMassTol || t > 1.0 + kMassTol) {
    throw std::domain_error("stationary_family: t outside [0,1]");
  }
  t = std::clamp(t, 0.0, 1.0);
  const double p00 = (1.0 - t) / 3.0;
  const double p10 = t / 5.0;
  return JointUV(p00, 2.0 * p00, p10, 4.0 * p10);
}

AndResiduals and_first_order_residuals(const JointUV& j) {
  const double root = std::sqrt(j.p10 * (j.p10 + 2.0 * j.p11));
  const double den1 = j.p01 + j.p11 / 2.0;
  if (j.p01 <= kMassTol || j.p10 <= kMassTol || den1 <= kMassTol ||
      root <= kMassTol) {
    return AndResiduals{true, 0.0, 0.0};
  }
  const double r1 = j.p00 / j.p01 - (j.p00 + j.p10) / den1;
  const double r2 = j.p00 / j.p10 - (j.p00 + j.p01) / root;
  return AndResiduals{false, r1, r2};
}

bool satisfies_and_constraints(const JointUV& j, const PerturbationUV& L,
                               double tol) {
  if (std::abs(L.L11) > tol) return false;
  const double dot = j.p00 * L.L00 + j.p01 * L.L01 + j.p10 * L.L10;
  return std::abs(dot) <= tol;
}

double and_second_order_form(const JointUV& j, const PerturbationUV& L) {
  if (!satisfies_and_constraints(j, L)) {
    throw std::invalid_argument(
        "and_second_order_form: L violates the fixed-P(X=0) constraint set");
  }
  const BroadcastChannel& bc = bssc_channel();
  const double p[2][2] = {{j.p00, j.p01}, {j.p10, j.p11}};
  const double l[2][2] = {{L.L00, L.L01}, {L.L10, L.L11}};

  // E[E[L|A,Y]^2] = sum_{a,y} (sum_hidden p * ch * L)^2 / p(a,y),
  // with A = U on channel 1 and A = V on channel 2, X = u AND v.
  double t_uy1 = 0.0;
  for (int u = 0; u < 2; ++u) {
    for (int y = 0; y < 2; ++y) {
      double num = 0.0, den = 0.0;
      for (int v = 0; v < 2; ++v) {
        const double w = p[u][v] * bc.ch1.prob(y, static_cast<std::size_t>(u & v));
        num += w * l[u][v];
        den += w;
      }
      if (den > kZeroMass) t_uy1 += num * num / den;
    }
  }
  double t_vy2 = 0.0;
  for (int v = 0; v < 2; ++v) {
    for (int y = 0; y < 2; ++y) {
      double num = 0.0, den = 0.0;
      for (int u = 0; u < 2; ++u) {
        const double w = p[u][v] * bc.ch2.prob(y, static_cast<std::size_t>(u & v));
        num += w * l[u][v];
        den += w;
      }
      if (den > kZeroMass) t_vy2 += num * num / den;
    }
  }
  double t_uv = 0.0;
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) t_uv += p[u][v] * l[u][v] * l[u][v];
  }
  return t_uy1 + t_vy2 - t_uv;
}

double xor_directional_derivative(const JointUV& j, double a, double b,
                                  double c, double d) {
  if (j.p00 <= kMassTol || j.p01 <= kMassTol || j.p10 <= kMassTol ||
      j.p11 <= kMassTol) {
    throw std::domain_error(
        "xor_directional_derivative: zero cell mass; the case reduces to an "
        "AND-type function (xor_boundary_equivalent)");
  }
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("xor_directional_derivative: negative coefficient");
  }
  return 0.5 * ((a - c) * std::log2(j.p00 / (j.p00 + 2.0 * j.p01)) +
                (d - b) * std::log2(j.p11 / (j.p11 + 2.0 * j.p10)) +
                (b - a) * std::log2(j.p10 / (j.p10 + 2.0 * j.p00)) +
                (c - d) * std::log2(j.p01 / (j.p01 + 2.0 * j.p11)));
}

std::array<double, 8> xor_additive_direction(double a, double b, double c,
                                             double d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("xor_additive_direction: negative coefficient");
  }
  std::array<double, 8> lambda{};
  lambda[0b000] = -a;  // (u,v,x) = (0,0,0)
  lambda[0b001] = a;
  lambda[0b010] = c;
  lambda[0b011] = -c;
  lambda[0b100] = b;
  lambda[0b101] = -b;
  lambda[0b110] = -d;
  lambda[0b111] = d;
  return lambda;
}

bool satisfies_xor_constraints(const std::array<double, 8>& lambda,
                               double tol) {
  // Sign feasibility on the cells where the XOR-induced joint vanishes.
  if (lambda[0b001] < -tol || lambda[0b010] < -tol || lambda[0b100] < -tol ||
      lambda[0b111] < -tol) {
    return false;
  }
  // P(X=0) and P(X=1) both preserved.
  const double s0 = lambda[0b000] + lambda[0b010] + lambda[0b100] + lambda[0b110];
  const double s1 = lambda[0b001] + lambda[0b011] + lambda[0b101] + lambda[0b111];
  return std::abs(s0) <= tol && std::abs(s1) <= tol;
}

BoolFunc2 xor_boundary_equivalent(std::size_t zero_cell) {
  switch (zero_cell) {
    case 0: return BoolFunc2::from_string("1110");  // NOT (U AND V)
    case 1: return BoolFunc2::from_string("0010");  // U AND NOT V
    case 2: return BoolFunc2::from_string("0100");  // NOT U AND V
    case 3: return BoolFunc2::from_string("0111");  // U OR V
    default:
      throw std::invalid_argument("xor_boundary_equivalent: cell must be 0..3");
  }
}

GapIdentity gap_identity(double t) {
  const JointUV j = stationary_family(t);
  const BoolFunc2 f_and = BoolFunc2::from_string("0001");
  const InducedTriple tri = induced_triple(j, f_and);
  const JointDist p_xy1 = joint_from_input(tri.p_x, bssc_channel().ch1);

  // H(Y1|U) - H(Y1|X) - H(V|U) + H(V|Y2), expanded into joint entropies.
  const double numeric = joint_entropy(tri.p_uy1) - joint_entropy(p_xy1) +
                         entropy(tri.p_x) - joint_entropy(j.as_joint()) +
                         joint_entropy(tri.p_vy2) -
                         entropy(tri.p_vy2.marginal(1));
  const double closed =
      (3.0 * t / 5.0) *
      (binary_entropy(1.0 / 3.0) - 1.5 * binary_entropy(1.0 / 9.0));
  return GapIdentity{numeric, closed};
}

}  // namespace bssc
