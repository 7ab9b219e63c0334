#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace shiftbench {

// Cubic B-spline basis with `size` functions on equally spaced knots covering
// [lower, upper]; knots extend three intervals beyond each end so every
// function has full support shape (P-spline layout).
class BSplineBasis {
 public:
  static constexpr int kDegree = 3;

  BSplineBasis(double lower, double upper, int size);

  int size() const { return size_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const std::vector<double>& knots() const { return knots_; }

  // Values of every basis function at x (clamped into [lower, upper]).
  void evaluate(double x, std::span<double> out) const;

  // Second-order difference penalty D'D, size x size.
  Eigen::MatrixXd difference_penalty() const;

 private:
  double lower_;
  double upper_;
  int size_;
  std::vector<double> knots_;
};

// Row i holds the basis evaluated at x[i]. Rows are computed in parallel.
Eigen::MatrixXd basis_matrix(const BSplineBasis& basis, std::span<const double> x);

}  // namespace shiftbench
