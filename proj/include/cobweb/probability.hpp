#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cobweb/schema.hpp"
#include "cobweb/stats.hpp"
#include "cobweb/tree.hpp"

namespace cobweb {

/// Natural-log probability; -inf is allowed, NaN is not.
struct LogProb {
  double value = 0.0;
};

/// log p(x|c) - log p(x), with p(x) taken from the `reference` node.
struct PmiScore {
  double value = 0.0;
  NodeId reference = 0;
};

/// Smoothed categorical probability (count(v) + alpha) / (n + alpha * k).
double cat_prob(const CategoricalCounts& counts, std::size_t value,
                double alpha, std::size_t k);

/// Variance used for likelihoods and entropies: max(m2/n, floor), or the
/// floor itself for n <= 1.
double floored_variance(const GaussianStats& stats, double variance_floor);

LogProb gauss_logpdf(const GaussianStats& stats, double value,
                     double variance_floor);

/// Sum over the attributes present in `x` of their log-probability under
/// the concept; missing attributes contribute nothing.
LogProb instance_loglik(const ConceptStats& stats, const EncodedInstance& x,
                        const TreeParams& params);

PmiScore pmi(const ConceptNode& node, const ConceptNode& reference,
             const EncodedInstance& x, const TreeParams& params);

/// Mutual information (nats) between the partition of `parent` into
/// `children` and the attribute values. Each child is weighted by
/// count / parent.count; categorical terms compare each smoothed child
/// distribution against the children's mixture, continuous terms compare
/// differential entropies of moment-matched Gaussians. `k` is the registry
/// size of every attribute. Throws std::invalid_argument on an empty list.
double partition_mi(const ConceptStats& parent,
                    std::span<const ConceptStats* const> children,
                    std::span<const std::size_t> k, const TreeParams& params);

/// partition_mi of the configuration obtained by adding `x` to child i, for
/// every i; the parent is the children plus x. Runs in time linear in the
/// number of children times the registry sizes.
std::vector<double> insertion_scores(
    std::span<const ConceptStats* const> children, const EncodedInstance& x,
    std::span<const std::size_t> k, const TreeParams& params);

/// Contribution of a single categorical attribute to partition_mi.
double categorical_mi(std::span<const double> weights,
                      std::span<const CategoricalCounts* const> children,
                      double alpha, std::size_t k);

/// Contribution of a single continuous attribute to partition_mi.
double continuous_mi(std::span<const double> weights,
                     std::span<const GaussianStats* const> children,
                     double variance_floor);

}  // namespace cobweb
