#include "bssc/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bssc/info.hpp"

namespace bssc {

namespace {

constexpr double kDedupTol = 1e-12;
constexpr double kPivotTol = 1e-12;

// Null-space basis vector of an m x n row-major matrix for the LAST free
// column after Gauss-Jordan elimination with partial pivoting, or nullopt if
// every column carries a pivot.
std::optional<std::vector<double>> last_null_basis(std::vector<std::vector<double>> a,
                                                   std::size_t rows,
                                                   std::size_t cols) {
  std::vector<int> pivot_row_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
    }
    if (std::abs(a[best][c]) <= kPivotTol) continue;  // free column
    std::swap(a[r], a[best]);
    const double piv = a[r][c];
    for (std::size_t cc = 0; cc < cols; ++cc) a[r][cc] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double factor = a[i][c];
      if (factor == 0.0) continue;
      for (std::size_t cc = 0; cc < cols; ++cc) a[i][cc] -= factor * a[r][cc];
    }
    pivot_row_of_col[c] = static_cast<int>(r);
    ++r;
  }
  std::ptrdiff_t free_col = -1;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_row_of_col[c] < 0) free_col = static_cast<std::ptrdiff_t>(c);
  }
  if (free_col < 0) return std::nullopt;
  std::vector<double> x(cols, 0.0);
  x[free_col] = 1.0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_row_of_col[c] >= 0) {
      x[c] = -a[pivot_row_of_col[c]][static_cast<std::size_t>(free_col)];
    }
  }
  return x;
}

// Constraint matrix A[x][a] = sum over the remaining axes of p, with columns
// restricted to the given support indices of `axis`. The x axis is the last
// one. Row normalization by p(x) would rescale rows only, so the unnormalized
// joint has the same null space without dividing by small masses.
std::vector<std::vector<double>> constraint_matrix(
    const JointDist& p, std::size_t axis, const std::vector<std::size_t>& support) {
  const std::size_t x_axis = p.rank() - 1;
  const std::size_t nx = p.shape()[x_axis];
  std::vector<std::vector<double>> a(nx, std::vector<double>(support.size(), 0.0));
  const auto& table = p.table();
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const std::size_t coord_a = (idx / p.stride(axis)) % p.shape()[axis];
    const std::size_t coord_x = (idx / p.stride(x_axis)) % nx;
    for (std::size_t s = 0; s < support.size(); ++s) {
      if (support[s] == coord_a) {
        a[coord_x][s] += table[idx];
        break;
      }
    }
  }
  return a;
}

JointDist drop_zero_slices(const JointDist& p, std::size_t axis) {
  const std::vector<double> mass = p.marginal_sums(axis);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] > kZeroMass) keep.push_back(i);
  }
  if (keep.size() == mass.size()) return p;
  if (keep.empty()) throw std::logic_error("drop_zero_slices: all slices empty");

  std::vector<std::size_t> new_shape = p.shape();
  new_shape[axis] = keep.size();
  std::size_t cells = 1;
  for (std::size_t s : new_shape) cells *= s;
  std::vector<double> out;
  out.reserve(cells);
  std::vector<std::size_t> pos(keep.size());
  for (std::size_t s = 0; s < keep.size(); ++s) pos[keep[s]] = s;
  const auto& table = p.table();
  out.assign(cells, 0.0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const std::size_t coord = (idx / p.stride(axis)) % p.shape()[axis];
    if (mass[coord] <= kZeroMass) continue;
    // Rebuild the flat index with the compacted coordinate.
    std::size_t rest = idx, packed = 0;
    for (std::size_t ax = 0; ax < p.rank(); ++ax) {
      std::size_t c = rest / p.stride(ax);
      rest %= p.stride(ax);
      if (ax == axis) c = pos[c];
      packed = packed * new_shape[ax] + c;
    }
    out[packed] = table[idx];
  }
  return JointDist(std::move(new_shape), std::move(out));
}

}  // namespace

std::vector<double> FunctionalizationResult::recompose(std::size_t u,
                                                       std::size_t v) const {
  std::vector<double> px(x_size, 0.0);
  for (std::size_t w = 0; w < w_dist.size(); ++w) {
    px[map(u, v, w)] += w_dist[w];
  }
  return px;
}

FunctionalizationResult hajek_construct(const JointDist& p) {
  if (p.rank() != 3) {
    throw std::invalid_argument("hajek_construct: rank-3 joint (u,v,x) required");
  }
  const std::size_t nu = p.shape()[0], nv = p.shape()[1], nx = p.shape()[2];

  // Cumulative conditional thresholds per (u,v); zero-mass pairs get the
  // degenerate law at x = 0 (they contribute no cut points).
  std::vector<std::vector<double>> cum(nu * nv, std::vector<double>(nx, 1.0));
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      double mass = 0.0;
      for (std::size_t x = 0; x < nx; ++x) mass += p.at3(u, v, x);
      if (mass <= kZeroMass) continue;
      double acc = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        acc += p.at3(u, v, x) / mass;
        cum[u * nv + v][x] = std::min(acc, 1.0);
        cuts.push_back(cum[u * nv + v][x]);
      }
      cum[u * nv + v][nx - 1] = 1.0;
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> points;
  for (double c : cuts) {
    if (points.empty() || c - points.back() > kDedupTol) points.push_back(c);
  }
  points.back() = 1.0;

  const std::size_t nw = points.size() - 1;
  std::vector<double> lengths(nw);
  for (std::size_t w = 0; w < nw; ++w) lengths[w] = points[w + 1] - points[w];

  FunctionalizationResult result{ProbVec(std::move(lengths)), nu, nv, nx, {}};
  result.f.assign(nu * nv * nw, 0);
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& c = cum[u * nv + v];
      for (std::size_t w = 0; w < nw; ++w) {
        const double mid = 0.5 * (points[w] + points[w + 1]);
        std::size_t x = 0;
        while (x + 1 < nx && c[x] < mid) ++x;
        result.f[(u * nv + v) * nw + w] = x;
      }
    }
  }
  return result;
}

bool direction_valid(const JointDist& p, std::size_t axis,
                     const LyapunovDirection& dir, double tol) {
  if (axis + 1 >= p.rank() || dir.L.size() != p.shape()[axis]) return false;
  const std::vector<double> mass = p.marginal_sums(axis);
  double dot = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < dir.L.size(); ++i) {
    dot += mass[i] * dir.L[i];
    norm += dir.L[i] * dir.L[i];
  }
  if (norm <= tol || std::abs(dot) > tol) return false;

  const std::size_t x_axis = p.rank() - 1;
  const std::vector<std::size_t> all_support = [&] {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < mass.size(); ++i)
      if (mass[i] > kZeroMass) s.push_back(i);
    return s;
  }();
  const auto a = constraint_matrix(p, axis, all_support);
  for (std::size_t x = 0; x < p.shape()[x_axis]; ++x) {
    double row = 0.0, px = 0.0;
    for (std::size_t s = 0; s < all_support.size(); ++s) {
      row += a[x][s] * dir.L[all_support[s]];
      px += a[x][s];
    }
    if (px > kZeroMass && std::abs(row) > tol) return false;
  }

  double min_factor = std::numeric_limits<double>::infinity();
  for (std::size_t i : all_support) {
    min_factor = std::min(min_factor, 1.0 + dir.epsilon * dir.L[i]);
  }
  return std::abs(min_factor) <= tol;
}

std::optional<LyapunovDirection> null_space_direction(const JointDist& p,
                                                      std::size_t axis) {
  if (p.rank() < 2 || axis + 1 >= p.rank()) {
    throw std::invalid_argument("null_space_direction: axis must precede the x axis");
  }
  const std::vector<double> mass = p.marginal_sums(axis);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] > kZeroMass) support.push_back(i);
  }
  if (support.size() < 2) return std::nullopt;

  const auto a = constraint_matrix(p, axis, support);
  auto basis = last_null_basis(a, a.size(), support.size());
  if (!basis) return std::nullopt;

  double norm = 0.0;
  for (double v : *basis) norm += v * v;
  norm = std::sqrt(norm);
  if (norm <= kPivotTol) return std::nullopt;
  double sign = 1.0;
  for (double v : *basis) {
    if (v != 0.0) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  LyapunovDirection dir{std::vector<double>(mass.size(), 0.0), 0.0};
  double min_l = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < support.size(); ++s) {
    const double v = (*basis)[s] * sign / norm;
    dir.L[support[s]] = v;
    min_l = std::min(min_l, v);
  }
  // sum_a p(a) L(a) = 0 with positive masses forces mixed signs, so the
  // support-killing step is always finite.
  if (!(min_l < 0.0)) return std::nullopt;
  dir.epsilon = -1.0 / min_l;
  return dir;
}

JointDist apply_perturbation(const JointDist& p, std::size_t axis,
                             const LyapunovDirection& dir) {
  if (axis + 1 >= p.rank() || dir.L.size() != p.shape()[axis]) {
    throw std::invalid_argument("apply_perturbation: direction does not match axis");
  }
  std::vector<double> factors(dir.L.size());
  for (std::size_t i = 0; i < dir.L.size(); ++i) {
    double f = 1.0 + dir.epsilon * dir.L[i];
    if (f < -kMassTol) {
      throw std::invalid_argument("apply_perturbation: step drives a factor negative");
    }
    factors[i] = std::abs(f) <= kMassTol ? 0.0 : f;
  }
  std::vector<double> out(p.table());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[idx] *= factors[(idx / p.stride(axis)) % p.shape()[axis]];
  }
  return JointDist(p.shape(), std::move(out));
}

ReductionResult reduce_support(const JointDist& p, const ObjectiveFn& objective) {
  ReductionResult result{p, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t axis = 0; axis + 1 < result.reduced.rank(); ++axis) {
    // Each step removes at least one support point, so this terminates in at
    // most |axis alphabet| - 1 iterations.
    for (std::size_t guard = p.shape()[axis]; guard > 0; --guard) {
      auto dir = null_space_direction(result.reduced, axis);
      if (!dir) break;
      const double before = objective ? objective(result.reduced) : nan;
      JointDist next =
          drop_zero_slices(apply_perturbation(result.reduced, axis, *dir), axis);
      const double after = objective ? objective(next) : nan;
      result.certificate.push_back(
          ReductionStep{axis, dir->L, dir->epsilon, before, after});
      result.reduced = std::move(next);
    }
  }
  return result;
}

double conjecture_lhs(const JointDist& p_uvx) {
  if (p_uvx.rank() != 3 || p_uvx.shape()[2] != 2) {
    throw std::invalid_argument("conjecture_lhs: rank-3 joint with binary x required");
  }
  const BroadcastChannel& bc = bssc_channel();
  const JointDist p_uy1 = push_joint(p_uvx.marginal2(0, 2), bc.ch1);
  const JointDist p_vy2 = push_joint(p_uvx.marginal2(1, 2), bc.ch2);
  return mutual_information(p_uy1) + mutual_information(p_vy2) -
         mutual_information(p_uvx.marginal2(0, 1));
}

}  // namespace bssc
