#include "bssc/prob.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bssc {

namespace {

// Clamp tiny negatives, reject real ones, renormalize the in-slack mass
// drift. Drift below a few ulps is left alone: revalidating an already
// normalized table must keep its bit pattern (round trips, zero-step
// perturbations).
void validate_simplex(std::vector<double>& values, const char* what) {
  if (values.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty alphabet");
  }
  double sum = 0.0;
  for (double& p : values) {
    if (p < -kMassTol) {
      throw std::invalid_argument(std::string(what) + ": negative entry " +
                                  std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    throw std::invalid_argument(std::string(what) + ": total mass " +
                                std::to_string(sum) + " != 1");
  }
  if (std::abs(sum - 1.0) > 1e-14) {
    for (double& p : values) p /= sum;
  }
}

}  // namespace

ProbVec::ProbVec(std::vector<double> values) : values_(std::move(values)) {
  validate_simplex(values_, "ProbVec");
}

JointDist::JointDist(std::vector<std::size_t> shape, std::vector<double> table)
    : shape_(std::move(shape)), table_(std::move(table)) {
  if (shape_.empty()) throw std::invalid_argument("JointDist: rank 0");
  std::size_t cells = 1;
  for (std::size_t n : shape_) {
    if (n == 0) throw std::invalid_argument("JointDist: empty axis");
    cells *= n;
  }
  if (table_.size() != cells) {
    throw std::invalid_argument("JointDist: table size does not match shape");
  }
  validate_simplex(table_, "JointDist");
  strides_.assign(shape_.size(), 1);
  for (std::size_t a = shape_.size(); a-- > 1;) {
    strides_[a - 1] = strides_[a] * shape_[a];
  }
}

double JointDist::at2(std::size_t i, std::size_t j) const {
  return table_[i * strides_[0] + j * strides_[1]];
}

double JointDist::at3(std::size_t i, std::size_t j, std::size_t k) const {
  return table_[i * strides_[0] + j * strides_[1] + k * strides_[2]];
}

std::vector<double> JointDist::marginal_sums(std::size_t axis) const {
  if (axis >= rank()) throw std::invalid_argument("JointDist: bad axis");
  std::vector<double> sums(shape_[axis], 0.0);
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    sums[(idx / strides_[axis]) % shape_[axis]] += table_[idx];
  }
  return sums;
}

ProbVec JointDist::marginal(std::size_t axis) const {
  return ProbVec(marginal_sums(axis));
}

JointDist JointDist::marginal2(std::size_t axis_a, std::size_t axis_b) const {
  if (axis_a >= rank() || axis_b >= rank() || axis_a == axis_b) {
    throw std::invalid_argument("JointDist: bad axis pair");
  }
  const std::size_t na = shape_[axis_a], nb = shape_[axis_b];
  std::vector<double> out(na * nb, 0.0);
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    const std::size_t ia = (idx / strides_[axis_a]) % na;
    const std::size_t ib = (idx / strides_[axis_b]) % nb;
    out[ia * nb + ib] += table_[idx];
  }
  return JointDist({na, nb}, std::move(out));
}

JointDist JointDist::sum_out(std::size_t axis) const {
  if (rank() < 2) throw std::invalid_argument("JointDist: cannot reduce rank 1");
  if (axis >= rank()) throw std::invalid_argument("JointDist: bad axis");
  std::vector<std::size_t> new_shape;
  for (std::size_t a = 0; a < rank(); ++a) {
    if (a != axis) new_shape.push_back(shape_[a]);
  }
  std::size_t new_cells = 1;
  for (std::size_t n : new_shape) new_cells *= n;
  std::vector<double> out(new_cells, 0.0);
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    std::size_t rest = idx, packed = 0;
    for (std::size_t a = 0; a < rank(); ++a) {
      const std::size_t coord = rest / strides_[a];
      rest %= strides_[a];
      if (a != axis) packed = packed * shape_[a] + coord;
    }
    out[packed] += table_[idx];
  }
  return JointDist(std::move(new_shape), std::move(out));
}

Channel::Channel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("Channel: no input symbols");
  const std::size_t ny = rows_[0].size();
  for (auto& row : rows_) {
    if (row.size() != ny || ny == 0) {
      throw std::invalid_argument("Channel: ragged or empty rows");
    }
    validate_simplex(row, "Channel row");
  }
}

BroadcastChannel::BroadcastChannel(Channel c1, Channel c2)
    : ch1(std::move(c1)), ch2(std::move(c2)) {
  if (ch1.input_size() != ch2.input_size()) {
    throw std::invalid_argument("BroadcastChannel: input alphabets differ");
  }
}

}  // namespace bssc
