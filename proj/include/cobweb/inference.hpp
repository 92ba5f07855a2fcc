#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cobweb/probability.hpp"
#include "cobweb/schema.hpp"
#include "cobweb/tree.hpp"

namespace cobweb {

struct ExpansionEntry {
  NodeId id = 0;
  const ConceptNode* node = nullptr;
  LogProb loglik;
  PmiScore pmi;
  double weight = 0.0;
};

/// Concepts visited for one query, in expansion order (root first).
struct ExpansionSet {
  std::vector<ExpansionEntry> entries;
  std::size_t budget_used = 0;
};

/// Best-first expansion by log p(x|c) over the attributes present in `x`,
/// at most max_nodes concepts, ties broken towards the lower id. Entries
/// come back weighted. Throws EmptyModelError on an untrained tree and
/// SchemaError when `x` does not conform.
ExpansionSet expand(const ConceptTree& tree, const Instance& x);
ExpansionSet expand(const ConceptTree& tree, const EncodedInstance& x);

/// Weights proportional to max(pmi, 0); uniform when no entry has a
/// positive PMI. Throws std::invalid_argument on an empty list.
void weights_from_pmi(std::vector<ExpansionEntry>& entries);

/// Weights proportional to exp(pmi). Throws std::invalid_argument on an
/// empty list.
void weights_from_pmi_ratio(std::vector<ExpansionEntry>& entries);

struct CategoricalPrediction {
  /// (value, probability) in registry order.
  std::vector<std::pair<std::string, double>> probabilities;

  double probability_of(const std::string& value) const;
  /// Value with the highest probability; ties keep registry order.
  std::vector<std::string> most_likely() const;
};

struct ContinuousPrediction {
  double mean = 0.0;
  double variance = 0.0;
};

struct PredictedDistribution {
  std::string attribute;
  std::variant<CategoricalPrediction, ContinuousPrediction> distribution;

  const CategoricalPrediction& categorical() const {
    return std::get<CategoricalPrediction>(distribution);
  }
  const ContinuousPrediction& continuous() const {
    return std::get<ContinuousPrediction>(distribution);
  }
};

/// PMI-weighted mixture of the expanded concepts' predictions for `target`.
/// Throws SchemaError for an unknown target or one already present in `x`.
PredictedDistribution predict(const ConceptTree& tree, const Instance& x,
                              const std::string& target);

/// Mixture over an existing expansion (no re-expansion).
PredictedDistribution predict_from(const ConceptTree& tree,
                                   const ExpansionSet& expansion,
                                   std::size_t target);

/// Recognition score: sum of w_i * log p(x|c_i) over the expansion.
double score_loglik(const ConceptTree& tree, const Instance& x);
double score_loglik(const ExpansionSet& expansion);

}  // namespace cobweb
