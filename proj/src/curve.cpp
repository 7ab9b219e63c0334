#include "shiftbench/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftbench/error.hpp"

namespace shiftbench {

std::vector<CurvePoint> preference_curve(std::span<const double> x, std::span<const double> y, int bins) {
  if (x.size() != y.size()) throw ValidationError("curve inputs differ in length");
  if (bins < 1) throw ValidationError("bin count must be positive");
  if (x.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const int used_bins = hi > lo ? bins : 1;
  const double width = hi > lo ? (hi - lo) / used_bins : 0.0;

  std::vector<std::size_t> count(static_cast<std::size_t>(used_bins), 0);
  std::vector<double> sum(count.size(), 0.0);
  std::vector<std::size_t> which(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int b = width > 0.0 ? static_cast<int>((x[i] - lo) / width) : 0;
    b = std::clamp(b, 0, used_bins - 1);
    which[i] = static_cast<std::size_t>(b);
    ++count[which[i]];
    sum[which[i]] += y[i];
  }
  std::vector<double> squares(count.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - sum[which[i]] / static_cast<double>(count[which[i]]);
    squares[which[i]] += d * d;
  }

  std::vector<CurvePoint> curve;
  for (std::size_t b = 0; b < count.size(); ++b) {
    if (count[b] == 0) continue;
    CurvePoint p;
    p.lower = lo + width * static_cast<double>(b);
    p.upper = b + 1 == count.size() ? hi : lo + width * static_cast<double>(b + 1);
    p.center = (p.lower + p.upper) / 2.0;
    p.count = count[b];
    p.mean = sum[b] / static_cast<double>(count[b]);
    p.std_error = count[b] > 1
                      ? std::sqrt(squares[b] / static_cast<double>(count[b] - 1) / static_cast<double>(count[b]))
                      : std::numeric_limits<double>::quiet_NaN();
    curve.push_back(p);
  }
  return curve;
}

}  // namespace shiftbench
