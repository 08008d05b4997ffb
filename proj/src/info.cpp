#include "bssc/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bssc/optimize.hpp"

namespace bssc {

namespace {

// p log2 p with the 0 log 0 = 0 convention, by branching rather than limits:
// boundary simplex points are first-class inputs.
inline double xlog2x(double p) {
  return p <= kZeroMass ? 0.0 : p * std::log2(p);
}

}  // namespace

double binary_entropy(double p) {
  if (p < -kMassTol || p > 1.0 + kMassTol) {
    throw std::domain_error("binary_entropy: p = " + std::to_string(p) +
                            " outside [0,1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double entropy(const ProbVec& d) {
  double h = 0.0;
  for (double p : d.values()) h -= xlog2x(p);
  return h;
}

double joint_entropy(const JointDist& j) {
  double h = 0.0;
  for (double p : j.table()) h -= xlog2x(p);
  return h;
}

double mutual_information(const JointDist& j) {
  if (j.rank() != 2) {
    throw std::invalid_argument("mutual_information: rank-2 joint required");
  }
  double ha = 0.0, hb = 0.0;
  for (double p : j.marginal_sums(0)) ha -= xlog2x(p);
  for (double p : j.marginal_sums(1)) hb -= xlog2x(p);
  return ha + hb - joint_entropy(j);
}

double conditional_mi(const JointDist& j) {
  if (j.rank() != 3) {
    throw std::invalid_argument("conditional_mi: rank-3 joint required");
  }
  const std::size_t nz = j.shape()[0], na = j.shape()[1], nb = j.shape()[2];
  double total = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    double pz = 0.0;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) pz += j.at3(z, a, b);
    if (pz <= kZeroMass) continue;
    // I(A;B | Z=z) on the conditional slice.
    double hab = 0.0, ha = 0.0, hb = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      double pa = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const double p = j.at3(z, a, b) / pz;
        hab -= xlog2x(p);
        pa += p;
      }
      ha -= xlog2x(pa);
    }
    for (std::size_t b = 0; b < nb; ++b) {
      double pb = 0.0;
      for (std::size_t a = 0; a < na; ++a) pb += j.at3(z, a, b) / pz;
      hb -= xlog2x(pb);
    }
    total += pz * (ha + hb - hab);
  }
  return total;
}

JointDist push_joint(const JointDist& j, const Channel& ch) {
  if (j.rank() != 2) {
    throw std::invalid_argument("push_joint: rank-2 joint required");
  }
  const std::size_t na = j.shape()[0], nx = j.shape()[1];
  if (nx != ch.input_size()) {
    throw std::invalid_argument("push_joint: joint x-axis does not match channel input");
  }
  const std::size_t ny = ch.output_size();
  std::vector<double> out(na * ny, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double pax = j.at2(a, x);
      if (pax <= kZeroMass) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        out[a * ny + y] += pax * ch.prob(y, x);
      }
    }
  }
  return JointDist({na, ny}, std::move(out));
}

JointDist joint_from_input(const ProbVec& px, const Channel& ch) {
  if (px.size() != ch.input_size()) {
    throw std::invalid_argument("joint_from_input: alphabet mismatch");
  }
  const std::size_t nx = px.size(), ny = ch.output_size();
  std::vector<double> out(nx * ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      out[x * ny + y] = px[x] * ch.prob(y, x);
    }
  }
  return JointDist({nx, ny}, std::move(out));
}

BroadcastChannel make_bssc() {
  Channel ch1({{0.5, 0.5}, {0.0, 1.0}});
  Channel ch2({{1.0, 0.0}, {0.5, 0.5}});
  return BroadcastChannel(std::move(ch1), std::move(ch2));
}

const BroadcastChannel& bssc_channel() {
  static const BroadcastChannel instance = make_bssc();
  return instance;
}

CapacityResult single_user_capacity(const Channel& ch, double grid_step,
                                    double tol) {
  if (ch.input_size() != 2) {
    throw std::invalid_argument("single_user_capacity: binary input required");
  }
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw std::invalid_argument("single_user_capacity: grid_step outside (0, 1/2]");
  }
  auto objective = [&ch](double p0) {
    return mutual_information(joint_from_input(ProbVec({p0, 1.0 - p0}), ch));
  };
  const int steps = std::max(2, static_cast<int>(std::lround(1.0 / grid_step)));
  ScalarMax best = grid_golden_max(objective, 0.0, 1.0, steps, tol);
  return {best.value, ProbVec({best.x, 1.0 - best.x})};
}

}  // namespace bssc
