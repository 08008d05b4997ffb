#pragma once

#include <functional>

namespace bssc {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [lo, hi]. Derivative-free,
/// bracketing, deterministic; stops when the bracket shrinks below xtol or
/// after max_iters shrink steps.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo,
                             double hi, double xtol = 1e-12,
                             int max_iters = 200);

/// Grid scan with grid_steps+1 equispaced evaluations, then golden-section
/// refinement around the best grid point. Robust to multimodal f as long as
/// the grid resolves the global maximum's basin.
ScalarMax grid_golden_max(const std::function<double(double)>& f, double lo,
                          double hi, int grid_steps, double xtol = 1e-12);

}  // namespace bssc
