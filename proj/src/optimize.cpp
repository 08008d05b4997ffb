#include "bssc/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace bssc {

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo,
                             double hi, double xtol, int max_iters) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_max: lo > hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iters && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  ScalarMax best{mid, fmid};
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

ScalarMax grid_golden_max(const std::function<double(double)>& f, double lo,
                          double hi, int grid_steps, double xtol) {
  if (grid_steps < 1) throw std::invalid_argument("grid_golden_max: no grid");
  const double h = (hi - lo) / grid_steps;
  int best_i = 0;
  double best_v = f(lo);
  for (int i = 1; i <= grid_steps; ++i) {
    const double v = f(lo + i * h);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = std::max(lo, lo + (best_i - 1) * h);
  const double b = std::min(hi, lo + (best_i + 1) * h);
  ScalarMax refined = golden_section_max(f, a, b, xtol);
  if (refined.value >= best_v) return refined;
  return {lo + best_i * h, best_v};
}

}  // namespace bssc
