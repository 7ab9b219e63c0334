#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shiftbench {

struct CurvePoint {
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
  // Standard error of the mean; NaN for a single-record bin.
  double std_error = 0.0;
};

// Equal-width bins over [min x, max x]; the last bin is closed. Bins without
// records are omitted. All records fall into one bin when x is constant.
std::vector<CurvePoint> preference_curve(std::span<const double> x, std::span<const double> y, int bins);

}  // namespace shiftbench
