#pragma once

#include <vector>

namespace blockland {

double mean_of(const std::vector<double>& xs);
// Sample standard deviation (ddof=1); 0 for fewer than two samples.
double stddev_of(const std::vector<double>& xs);
// Linear-interpolation quantile on sorted data (h = (n-1)p convention).
double quantile_sorted(const std::vector<double>& sorted, double p);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};
Summary summarize(std::vector<double> xs);  // copies, sorts

}  // namespace blockland
