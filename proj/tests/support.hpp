#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cobweb/schema.hpp"
#include "cobweb/stats.hpp"
#include "cobweb/tree.hpp"

namespace testing_support {

/// Schema with `n` binary categorical attributes a0..a{n-1} whose values
/// "0" and "1" are declared up front.
cobweb::AttributeSchema binary_schema(std::size_t n);

/// Instance over a0.. from a bit string such as "1010".
cobweb::Instance bits(const std::string& pattern);

/// Independent reference for partition mutual information: straight double
/// sums over raw counts, written without the library's helpers.
double mi_oracle(const std::vector<cobweb::ConceptStats>& children,
                 const std::vector<std::size_t>& k, double alpha,
                 double variance_floor);

/// Random statistics over a mixed schema, used by property checks.
struct RandomConfig {
  cobweb::AttributeSchema schema;
  std::vector<cobweb::ConceptStats> children;
  std::vector<std::size_t> k;
  double alpha = 1.0;
};
RandomConfig random_config(std::mt19937_64& rng);

/// Random instance over `schema` drawing categorical values from the first
/// `values` registry entries; each attribute is missing with probability
/// `missing`.
cobweb::Instance random_instance(std::mt19937_64& rng,
                                 const cobweb::AttributeSchema& schema,
                                 std::size_t values, double missing = 0.0);

}  // namespace testing_support
