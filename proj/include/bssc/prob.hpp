#pragma once

#include <cstddef>
#include <vector>

namespace bssc {

// Validation slack for simplex constraints. Entries violating nonnegativity
// or unit mass by more than this are rejected; smaller deviations are
// clamped/renormalized away (grid generators accumulate rounding).
inline constexpr double kMassTol = 1e-12;

// Masses at or below this are treated as exactly zero (0 log 0 = 0).
inline constexpr double kZeroMass = 1e-300;

/// A probability distribution over a finite alphabet.
class ProbVec {
 public:
  explicit ProbVec(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// A joint distribution over k finite alphabets, stored row-major.
class JointDist {
 public:
  JointDist(std::vector<std::size_t> shape, std::vector<double> table);

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t cells() const { return table_.size(); }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  double at2(std::size_t i, std::size_t j) const;
  double at3(std::size_t i, std::size_t j, std::size_t k) const;

  /// Raw marginal sums along one axis (no renormalization).
  std::vector<double> marginal_sums(std::size_t axis) const;
  ProbVec marginal(std::size_t axis) const;
  /// Rank-2 marginal onto (axis_a, axis_b), in that order.
  JointDist marginal2(std::size_t axis_a, std::size_t axis_b) const;
  /// Sum out one axis, reducing the rank by one.
  JointDist sum_out(std::size_t axis) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> table_;
  std::vector<std::size_t> strides_;
};

/// Row-stochastic transition matrix; row x is the output law p(y|x).
class Channel {
 public:
  explicit Channel(std::vector<std::vector<double>> rows);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return rows_.empty() ? 0 : rows_[0].size(); }
  const std::vector<double>& row(std::size_t x) const { return rows_[x]; }
  double prob(std::size_t y, std::size_t x) const { return rows_[x][y]; }

 private:
  std::vector<std::vector<double>> rows_;
};

/// Two channels fed by the same input alphabet.
struct BroadcastChannel {
  Channel ch1;  // X -> Y1
  Channel ch2;  // X -> Y2
  BroadcastChannel(Channel c1, Channel c2);
};

}  // namespace bssc
