#pragma once

#include <span>
#include <vector>

namespace cobweb::experiments {

/// Throws std::invalid_argument on an empty sample.
double mean(std::span<const double> samples);

struct Interval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  double half_width() const { return upper - mean; }
  bool overlaps(const Interval& other) const {
    return lower <= other.upper && other.lower <= upper;
  }
};

/// Normal-approximation 95% interval: mean +- 1.96 s / sqrt(n), with s the
/// sample standard deviation. Requires n >= 2.
Interval ci95(std::span<const double> samples);

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the average ranks. Requires equal lengths >= 2;
/// returns 0 when either side is constant.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace cobweb::experiments
