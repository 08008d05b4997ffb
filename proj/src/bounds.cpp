#include "bssc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bssc/info.hpp"
#include "bssc/optimize.hpp"

namespace bssc {

namespace {

double mi_y1(double x0) {
  return mutual_information(joint_from_input(ProbVec({x0, 1.0 - x0}), bssc_channel().ch1));
}

double mi_y2(double x0) {
  return mutual_information(joint_from_input(ProbVec({x0, 1.0 - x0}), bssc_channel().ch2));
}

// p(a,x,y) = p(a,x) ch(y|x); feeds conditional_mi for I(X;Y|A) components.
JointDist lift_through(const JointDist& p_ax, const Channel& ch) {
  const std::size_t na = p_ax.shape()[0], nx = p_ax.shape()[1];
  const std::size_t ny = ch.output_size();
  std::vector<double> out(na * nx * ny, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        out[(a * nx + x) * ny + y] = p_ax.at2(a, x) * ch.prob(y, x);
      }
    }
  }
  return JointDist({na, nx, ny}, std::move(out));
}

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

}  // namespace

double difference_curve(double x) {
  if (x < -kMassTol || x > 1.0 + kMassTol) {
    throw std::domain_error("difference_curve: x outside [0,1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  return mi_y1(x) - mi_y2(x);
}

MaxDifference max_difference() {
  const ScalarMax best = grid_golden_max(difference_curve, 0.0, 1.0, 1000, 1e-12);
  return MaxDifference{best.value, best.x};
}

double EnvelopeResult::g(double x) const {
  if (mode == EnvelopeMode::Analytic) {
    return x <= breakpoint ? chord_slope * x : difference_curve(x);
  }
  if (hull.size() < 2) throw std::logic_error("EnvelopeResult: empty hull");
  if (x <= hull.front().first) return hull.front().second;
  if (x >= hull.back().first) return hull.back().second;
  std::size_t lo = 0, hi = hull.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (hull[mid].first <= x ? lo : hi) = mid;
  }
  const auto& [x0, y0] = hull[lo];
  const auto& [x1, y1] = hull[hi];
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

EnvelopeResult lower_convex_envelope(std::size_t samples, EnvelopeMode mode) {
  if (mode == EnvelopeMode::Analytic) {
    // Tangency of the chord through the origin: Delta(b)/b = Delta'(b),
    // solved by bisection with a central-difference derivative.
    const double h = 1e-6;
    auto slope_gap = [&](double b) {
      const double deriv =
          (difference_curve(b + h) - difference_curve(b - h)) / (2.0 * h);
      return difference_curve(b) - b * deriv;
    };
    double lo = 0.5, hi = 1.0 - 1e-5;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope_gap(mid) > 0.0 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    return EnvelopeResult{mode, b, difference_curve(b) / b, {}};
  }

  if (samples < 64) {
    throw std::invalid_argument("lower_convex_envelope: needs >= 64 samples");
  }
  std::vector<std::pair<double, double>> hull;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
    const std::pair<double, double> pt{x, difference_curve(x)};
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  const double bp = hull.size() > 1 ? hull[1].first : 1.0;
  const double slope = hull.size() > 1
                           ? (hull[1].second - hull[0].second) / (hull[1].first - hull[0].first)
                           : 0.0;
  return EnvelopeResult{mode, bp, slope, std::move(hull)};
}

double marton_objective(const JointDist& p_wx) {
  if (p_wx.rank() != 2 || p_wx.shape()[1] != 2) {
    throw std::invalid_argument("marton_objective: rank-2 joint with binary x required");
  }
  const BroadcastChannel& bc = bssc_channel();
  const double iw1 = mutual_information(push_joint(p_wx, bc.ch1));
  const double iw2 = mutual_information(push_joint(p_wx, bc.ch2));
  double branch_sum = 0.0;
  for (std::size_t w = 0; w < p_wx.shape()[0]; ++w) {
    const double pw = p_wx.at2(w, 0) + p_wx.at2(w, 1);
    if (pw <= kZeroMass) continue;
    const double a = p_wx.at2(w, 0) / pw;
    branch_sum += pw * std::max(mi_y1(a), mi_y2(a));
  }
  return std::min(iw1, iw2) + branch_sum;
}

namespace {

JointDist marton_joint(double w0, double a0, double a1) {
  const double w1 = 1.0 - w0;
  return JointDist({2, 2}, {w0 * a0, w0 * (1.0 - a0), w1 * a1, w1 * (1.0 - a1)});
}

double marton_param_objective(double w0, double a0, double a1) {
  return marton_objective(marton_joint(w0, a0, a1));
}

struct MartonBest {
  double value = -std::numeric_limits<double>::infinity();
  std::array<int, 3> idx{0, 0, 0};
};

}  // namespace

SumRateReport marton_sum_rate(double grid_step, int refine_sweeps) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw std::invalid_argument("marton_sum_rate: grid_step outside (0, 1/2]");
  }
  const int n = std::max(2, static_cast<int>(std::lround(1.0 / grid_step)));
  const double inv_n = 1.0 / n;
  const BroadcastChannel& bc = bssc_channel();

  // The branch term depends on one coordinate only; memoize it on the grid.
  std::vector<double> branch(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double a = i * inv_n;
    branch[i] = std::max(mi_y1(a), mi_y2(a));
  }

  // Relabeling W maps (w0,a0,a1) -> (1-w0,a1,a0) without changing the
  // objective, so scanning w0 <= 1/2 covers the full grid.
  const int half = n / 2;
  std::vector<MartonBest> slice(half + 1);
  auto run_slice = [&](int iw) {
    MartonBest best;
    const double w0 = iw * inv_n, w1 = 1.0 - w0;
    for (int ia0 = 0; ia0 <= n; ++ia0) {
      const double a0 = ia0 * inv_n;
      for (int ia1 = 0; ia1 <= n; ++ia1) {
        const double a1 = ia1 * inv_n;
        const JointDist pwx = marton_joint(w0, a0, a1);
        const double iw1 = mutual_information(push_joint(pwx, bc.ch1));
        const double iw2 = mutual_information(push_joint(pwx, bc.ch2));
        const double value =
            std::min(iw1, iw2) + w0 * branch[ia0] + w1 * branch[ia1];
        if (value > best.value) {
          best.value = value;
          best.idx = {iw, ia0, ia1};
        }
      }
    }
    slice[iw] = best;
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned n_threads = std::min<unsigned>(hw > 0 ? hw : 1, half + 1);
  if (n_threads <= 1) {
    for (int iw = 0; iw <= half; ++iw) run_slice(iw);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t] {
        for (int iw = static_cast<int>(t); iw <= half; iw += n_threads) run_slice(iw);
      });
    }
    for (auto& th : pool) th.join();
  }
  MartonBest best;
  for (const MartonBest& s : slice) {
    if (s.value > best.value) best = s;
  }

  std::array<double, 3> arg{best.idx[0] * inv_n, best.idx[1] * inv_n,
                            best.idx[2] * inv_n};
  double best_val = best.value;
  for (int sweep = 0; sweep < refine_sweeps; ++sweep) {
    for (std::size_t c = 0; c < 3; ++c) {
      auto line = [&](double t) {
        std::array<double, 3> p = arg;
        p[c] = t;
        return marton_param_objective(p[0], p[1], p[2]);
      };
      const double lo = std::max(0.0, arg[c] - 2.0 * inv_n);
      const double hi = std::min(1.0, arg[c] + 2.0 * inv_n);
      const ScalarMax r = golden_section_max(line, lo, hi, 1e-12);
      if (r.value > best_val) {
        best_val = r.value;
        arg[c] = r.x;
      }
    }
    // Per-coordinate moves crawl along the ridge where the input marginal
    // stays balanced; add a paired line search that shifts (a0, a1) while
    // holding w0 a0 + w1 a1 fixed.
    if (arg[0] > 0.0 && arg[0] < 1.0) {
      const double ratio = arg[0] / (1.0 - arg[0]);
      auto ridge = [&](double t) {
        const double a0 = std::clamp(arg[1] + t, 0.0, 1.0);
        const double a1 = std::clamp(arg[2] - t * ratio, 0.0, 1.0);
        return marton_param_objective(arg[0], a0, a1);
      };
      const ScalarMax r = golden_section_max(ridge, -2.0 * inv_n, 2.0 * inv_n, 1e-12);
      if (r.value > best_val) {
        best_val = r.value;
        arg[1] = std::clamp(arg[1] + r.x, 0.0, 1.0);
        arg[2] = std::clamp(arg[2] - r.x * ratio, 0.0, 1.0);
      }
    }
  }
  if (arg[1] > arg[2]) {  // canonical labels: P(X=0|W=0) <= P(X=0|W=1)
    std::swap(arg[1], arg[2]);
    arg[0] = 1.0 - arg[0];
  }

  const double d = max_difference().d;
  const double max_sum_mi =
      grid_golden_max([](double x) { return mi_y1(x) + mi_y2(x); }, 0.0, 1.0, 1000)
          .value;
  const double cap = 0.5 * (max_sum_mi + d);
  if (best_val > cap + 1e-9) {
    throw std::logic_error("marton_sum_rate: value exceeds the analytic cap");
  }

  const JointDist pwx = marton_joint(arg[0], arg[1], arg[2]);
  SumRateReport report;
  report.bound_id = "marton";
  report.value = best_val;
  report.aux_dist = {arg[0], 1.0 - arg[0]};
  report.x0_given_aux = {arg[1], arg[2]};
  report.components["I(W;Y1)"] = mutual_information(push_joint(pwx, bc.ch1));
  report.components["I(W;Y2)"] = mutual_information(push_joint(pwx, bc.ch2));
  report.components["I(X;Y1|W)"] = conditional_mi(lift_through(pwx, bc.ch1));
  report.components["I(X;Y2|W)"] = conditional_mi(lift_through(pwx, bc.ch2));
  report.components["max_sum_mi"] = max_sum_mi;
  report.components["d"] = d;
  report.components["cap"] = cap;
  report.rate_point = {best_val / 2.0, best_val / 2.0};
  return report;
}

SumRateReport outer_sum_rate() {
  const BroadcastChannel& bc = bssc_channel();
  const EnvelopeResult env = lower_convex_envelope();
  const double base = mi_y1(0.5);
  const double value = base - env.g(0.5);

  // Independent oracle: search binary-U joints p(u,x) with P(X=0) = 1/2
  // directly; P(X=0|U=1) is pinned by the constraint.
  auto direct = [&](double u0, double b0) {
    const double u1 = 1.0 - u0;
    if (u1 <= 0.0) return -std::numeric_limits<double>::infinity();
    const double b1 = (0.5 - u0 * b0) / u1;
    if (b1 < 0.0 || b1 > 1.0) return -std::numeric_limits<double>::infinity();
    return base + u0 * (mi_y2(b0) - mi_y1(b0)) + u1 * (mi_y2(b1) - mi_y1(b1));
  };
  double grid_value = -std::numeric_limits<double>::infinity();
  double gu = 0.5, gb = 0.0;
  const int gn = 400;
  for (int i = 1; i < gn; ++i) {
    for (int j = 0; j <= gn; ++j) {
      const double v = direct(static_cast<double>(i) / gn, static_cast<double>(j) / gn);
      if (v > grid_value) {
        grid_value = v;
        gu = static_cast<double>(i) / gn;
        gb = static_cast<double>(j) / gn;
      }
    }
  }
  for (int sweep = 0; sweep < 2; ++sweep) {
    const ScalarMax ru = golden_section_max(
        [&](double u) { return direct(u, gb); }, std::max(1e-9, gu - 2.0 / gn),
        std::min(1.0 - 1e-9, gu + 2.0 / gn), 1e-12);
    if (ru.value > grid_value) {
      grid_value = ru.value;
      gu = ru.x;
    }
    const ScalarMax rb = golden_section_max(
        [&](double b) { return direct(gu, b); }, std::max(0.0, gb - 2.0 / gn),
        std::min(1.0, gb + 2.0 / gn), 1e-12);
    if (rb.value > grid_value) {
      grid_value = rb.value;
      gb = rb.x;
    }
  }

  // Achiever: U mixes the branch at x = 0 with the branch at the envelope
  // breakpoint so that the average input is 1/2.
  const double u1 = 0.5 / env.breakpoint;
  const double u0 = 1.0 - u1;
  const JointDist p_ux({2, 2}, {0.0, u0, u1 * env.breakpoint,
                                u1 * (1.0 - env.breakpoint)});
  SumRateReport report;
  report.bound_id = "outer";
  report.value = value;
  report.aux_dist = {u0, u1};
  report.x0_given_aux = {0.0, env.breakpoint};
  report.components["I(X;Y1)"] = base;
  report.components["I(X;Y1|U)"] = conditional_mi(lift_through(p_ux, bc.ch1));
  report.components["I(X;Y2|U)"] = conditional_mi(lift_through(p_ux, bc.ch2));
  report.components["I(U;Y1)"] = mutual_information(push_joint(p_ux, bc.ch1));
  report.components["g_half"] = env.g(0.5);
  report.components["grid_value"] = grid_value;
  report.rate_point = {value / 2.0, value / 2.0};
  return report;
}

SumRateReport km_sum_rate() {
  const BroadcastChannel& bc = bssc_channel();
  const EnvelopeResult env = lower_convex_envelope();

  auto phi = [&](double x) { return mi_y1(x) - env.g(x); };
  const ScalarMax best = grid_golden_max(phi, 0.0, env.breakpoint, 800, 1e-12);
  // Beyond the breakpoint g equals the difference curve, so the objective
  // collapses to I(X;Y2); confirm that branch stays below the maximum.
  const ScalarMax upper = grid_golden_max(mi_y2, env.breakpoint, 1.0, 200, 1e-12);

  const double x_star = best.x;
  const double c = 2.0 * (1.0 + env.chord_slope);
  const double x_star_closed = 2.0 / (1.0 + std::exp2(c));
  const double a = x_star / env.breakpoint;
  const JointDist p_ux({2, 2}, {0.0, 1.0 - a, a * env.breakpoint,
                                a * (1.0 - env.breakpoint)});

  SumRateReport report;
  report.bound_id = "km";
  report.value = best.value;
  report.aux_dist = {1.0 - a, a};
  report.x0_given_aux = {0.0, env.breakpoint};
  report.components["I(U;Y1)"] = mutual_information(push_joint(p_ux, bc.ch1));
  report.components["I(X;Y2|U)"] = conditional_mi(lift_through(p_ux, bc.ch2));
  report.components["I(X;Y2)"] = mi_y2(x_star);
  report.components["c"] = c;
  report.components["x_star"] = x_star;
  report.components["x_star_closed"] = x_star_closed;
  report.components["upper_branch_max"] = upper.value;
  report.components["breakpoint"] = env.breakpoint;
  report.rate_point = {best.value / 2.0, best.value / 2.0};
  return report;
}

std::vector<std::pair<double, double>> rate_points(const std::string& bound_id) {
  SumRateReport report;
  if (bound_id == "marton") {
    report = marton_sum_rate();
  } else if (bound_id == "outer") {
    report = outer_sum_rate();
  } else if (bound_id == "km") {
    report = km_sum_rate();
  } else {
    throw std::invalid_argument("rate_points: unknown bound '" + bound_id + "'");
  }
  const double c = single_user_capacity(bssc_channel().ch1).value;
  const double sr = report.value;
  return {{0.0, c}, {sr - c, c}, {sr / 2.0, sr / 2.0}, {c, sr - c}, {c, 0.0}};
}

}  // namespace bssc
