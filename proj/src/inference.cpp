#include "cobweb/inference.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "cobweb/errors.hpp"

namespace cobweb {

namespace {

struct FrontierItem {
  double loglik;
  const ConceptNode* node;
};

// Max-heap on log-likelihood; among equal scores the lower id pops first.
struct FrontierOrder {
  bool operator()(const FrontierItem& a, const FrontierItem& b) const {
    if (a.loglik != b.loglik) return a.loglik < b.loglik;
    return a.node->id > b.node->id;
  }
};

}  // namespace

ExpansionSet expand(const ConceptTree& tree, const Instance& x) {
  return expand(tree, tree.schema().encode_query(x));
}

ExpansionSet expand(const ConceptTree& tree, const EncodedInstance& x) {
  if (tree.empty()) throw EmptyModelError("the concept tree has no instances");
  const TreeParams& params = tree.params();
  const auto budget = static_cast<std::size_t>(params.max_nodes);

  const ConceptNode& root = tree.root();
  const double root_ll = instance_loglik(root.stats, x, params).value;

  std::priority_queue<FrontierItem, std::vector<FrontierItem>, FrontierOrder>
      frontier;
  frontier.push({root_ll, &root});

  ExpansionSet out;
  while (!frontier.empty() && out.entries.size() < budget) {
    const FrontierItem item = frontier.top();
    frontier.pop();
    ExpansionEntry entry;
    entry.id = item.node->id;
    entry.node = item.node;
    entry.loglik = {item.loglik};
    entry.pmi = {item.node == &root ? 0.0 : item.loglik - root_ll, root.id};
    out.entries.push_back(entry);
    for (const auto& child : item.node->children) {
      frontier.push({instance_loglik(child->stats, x, params).value, child.get()});
    }
  }
  out.budget_used = out.entries.size();
  if (params.weighting == PmiWeighting::ratio) {
    weights_from_pmi_ratio(out.entries);
  } else {
    weights_from_pmi(out.entries);
  }
  return out;
}

void weights_from_pmi(std::vector<ExpansionEntry>& entries) {
  if (entries.empty()) {
    throw std::invalid_argument("weights_from_pmi: no entries");
  }
  double total = 0.0;
  for (const auto& e : entries) total += std::max(e.pmi.value, 0.0);
  if (total > 0.0) {
    for (auto& e : entries) e.weight = std::max(e.pmi.value, 0.0) / total;
  } else {
    const double uniform = 1.0 / static_cast<double>(entries.size());
    for (auto& e : entries) e.weight = uniform;
  }
}

void weights_from_pmi_ratio(std::vector<ExpansionEntry>& entries) {
  if (entries.empty()) {
    throw std::invalid_argument("weights_from_pmi_ratio: no entries");
  }
  double top = entries.front().pmi.value;
  for (const auto& e : entries) top = std::max(top, e.pmi.value);
  double total = 0.0;
  for (auto& e : entries) {
    e.weight = std::exp(e.pmi.value - top);
    total += e.weight;
  }
  for (auto& e : entries) e.weight /= total;
}

double CategoricalPrediction::probability_of(const std::string& value) const {
  for (const auto& [v, p] : probabilities) {
    if (v == value) return p;
  }
  return 0.0;
}

std::vector<std::string> CategoricalPrediction::most_likely() const {
  std::vector<std::string> best;
  double top = -1.0;
  for (const auto& [v, p] : probabilities) {
    if (p > top) {
      top = p;
      best.assign({v});
    } else if (p == top) {
      best.push_back(v);
    }
  }
  return best;
}

PredictedDistribution predict_from(const ConceptTree& tree,
                                   const ExpansionSet& expansion,
                                   std::size_t target) {
  const Attribute& attr = tree.schema().at(target);
  const TreeParams& params = tree.params();
  PredictedDistribution out;
  out.attribute = attr.name();

  if (attr.is_categorical()) {
    const std::size_t k = attr.registry_size();
    CategoricalPrediction pred;
    pred.probabilities.reserve(k);
    for (std::size_t v = 0; v < k; ++v) {
      double p = 0.0;
      for (const auto& e : expansion.entries) {
        p += e.weight * cat_prob(e.node->stats.categorical(target), v,
                                 params.alpha, k);
      }
      pred.probabilities.emplace_back(attr.values()[v], p);
    }
    out.distribution = std::move(pred);
    return out;
  }

  // Moment-matched mixture over the concepts that observed the attribute.
  double mass = 0.0;
  double mean = 0.0;
  double second = 0.0;
  for (const auto& e : expansion.entries) {
    const GaussianStats& g = e.node->stats.gaussian(target);
    if (g.n == 0) continue;
    const double var = floored_variance(g, params.variance_floor);
    mass += e.weight;
    mean += e.weight * g.mean;
    second += e.weight * (var + g.mean * g.mean);
  }
  ContinuousPrediction pred;
  if (mass > 0.0) {
    pred.mean = mean / mass;
    pred.variance = std::max(second / mass - pred.mean * pred.mean,
                             params.variance_floor);
  } else {
    pred.variance = params.variance_floor;
  }
  out.distribution = pred;
  return out;
}

PredictedDistribution predict(const ConceptTree& tree, const Instance& x,
                              const std::string& target) {
  const auto index = tree.schema().find(target);
  if (!index) throw SchemaError("unknown target attribute '" + target + "'");
  if (x.find(target) != x.end()) {
    throw SchemaError("target attribute '" + target + "' is present in the query");
  }
  return predict_from(tree, expand(tree, x), *index);
}

double score_loglik(const ExpansionSet& expansion) {
  double total = 0.0;
  for (const auto& e : expansion.entries) total += e.weight * e.loglik.value;
  return total;
}

double score_loglik(const ConceptTree& tree, const Instance& x) {
  return score_loglik(expand(tree, x));
}

}  // namespace cobweb
