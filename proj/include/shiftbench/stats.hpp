#pragma once

#include <span>
#include <vector>

namespace shiftbench {

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// Throws ValidationError on length mismatch, fewer than 2 values, or a
// zero-variance argument.
double pearson(std::span<const double> x, std::span<const double> y);

struct SpearmanResult {
  double rho = 0.0;
  double abs_rho = 0.0;
};

// Requires at least 3 observations; zero variance is an error, never 0.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

}  // namespace shiftbench
