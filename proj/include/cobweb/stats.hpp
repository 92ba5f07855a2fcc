#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "cobweb/schema.hpp"

namespace cobweb {

/// Value counts for one categorical attribute, indexed by registry position.
/// The vector may be shorter than the registry; trailing values count zero.
struct CategoricalCounts {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;

  std::int64_t count(std::size_t value) const {
    return value < counts.size() ? counts[value] : 0;
  }
  void add(std::size_t value, std::int64_t times = 1);
  void merge(const CategoricalCounts& other);

  bool operator==(const CategoricalCounts& other) const;
};

/// Single-pass mean and sum of squared deviations (Welford).
struct GaussianStats {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  /// Pooled statistics of the union of both samples (Chan et al.).
  void merge(const GaussianStats& other);
  /// Population variance m2 / n; zero when n == 0.
  double variance() const;

  bool operator==(const GaussianStats& other) const = default;
};

using AttributeDistribution = std::variant<CategoricalCounts, GaussianStats>;

/// Sufficient statistics of a concept: instance count and one distribution
/// per schema attribute.
struct ConceptStats {
  std::int64_t count = 0;
  std::vector<AttributeDistribution> dists;

  ConceptStats() = default;
  explicit ConceptStats(const AttributeSchema& schema);

  /// Adds one instance. Missing attributes leave their distribution as is.
  void add(const EncodedInstance& x);
  void merge(const ConceptStats& other);

  const CategoricalCounts& categorical(std::size_t attr) const {
    return std::get<CategoricalCounts>(dists[attr]);
  }
  const GaussianStats& gaussian(std::size_t attr) const {
    return std::get<GaussianStats>(dists[attr]);
  }

  bool operator==(const ConceptStats& other) const = default;
};

}  // namespace cobweb
