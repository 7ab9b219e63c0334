#include "shiftbench/bspline.hpp"

#include <algorithm>

#include "shiftbench/error.hpp"
#include "shiftbench/kernels.hpp"

namespace shiftbench {

BSplineBasis::BSplineBasis(double lower, double upper, int size) : lower_(lower), upper_(upper), size_(size) {
  if (size < kDegree + 1) throw ValidationError("basis size must be at least 4");
  if (!(upper > lower)) throw ValidationError("basis range is empty");
  const int intervals = size - kDegree;
  const double h = (upper - lower) / intervals;
  knots_.resize(static_cast<std::size_t>(size + kDegree + 1));
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    knots_[i] = lower + (static_cast<double>(i) - kDegree) * h;
  }
}

void BSplineBasis::evaluate(double x, std::span<double> out) const {
  x = std::clamp(x, lower_, upper_);
  const auto& t = knots_;
  // Knot interval containing x among the interior intervals [t_3, t_{size}].
  int span = kDegree;
  while (span < size_ - 1 && x >= t[static_cast<std::size_t>(span + 1)]) ++span;

  // Cox-de Boor on the degree+1 nonzero functions.
  double basis[kDegree + 1] = {1.0, 0.0, 0.0, 0.0};
  double left[kDegree + 1];
  double right[kDegree + 1];
  for (int j = 1; j <= kDegree; ++j) {
    left[j] = x - t[static_cast<std::size_t>(span + 1 - j)];
    right[j] = t[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = basis[r] / (right[r + 1] + left[j - r]);
      basis[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    basis[j] = saved;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int r = 0; r <= kDegree; ++r) out[static_cast<std::size_t>(span - kDegree + r)] = basis[r];
}

Eigen::MatrixXd BSplineBasis::difference_penalty() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size_ - 2, size_);
  for (int i = 0; i < size_ - 2; ++i) {
    d(i, i) = 1.0;
    d(i, i + 1) = -2.0;
    d(i, i + 2) = 1.0;
  }
  return d.transpose() * d;
}

Eigen::MatrixXd basis_matrix(const BSplineBasis& basis, std::span<const double> x) {
  return kernels::basis_rows(basis, x);
}

}  // namespace shiftbench
