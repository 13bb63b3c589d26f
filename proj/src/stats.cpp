#include "blockland/stats.hpp"

#include <algorithm>
#include <cmath>

#include "blockland/errors.hpp"

namespace blockland {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw UsageError("mean of empty list");
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (const double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw UsageError("quantile of empty list");
  if (sorted.size() == 1) return sorted[0];
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<size_t>(h);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::vector<double> xs) {
  if (xs.empty()) throw UsageError("summary of empty list");
  Summary s;
  s.mean = mean_of(xs);
  s.stddev = stddev_of(xs);
  std::sort(xs.begin(), xs.end());
  s.min = xs.front();
  s.max = xs.back();
  s.q1 = quantile_sorted(xs, 0.25);
  s.median = quantile_sorted(xs, 0.5);
  s.q3 = quantile_sorted(xs, 0.75);
  return s;
}

}  // namespace blockland
