#include "cobweb/probability.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cobweb {

double cat_prob(const CategoricalCounts& counts, std::size_t value,
                double alpha, std::size_t k) {
  assert(k >= 1 && alpha > 0.0);
  return (static_cast<double>(counts.count(value)) + alpha) /
         (static_cast<double>(counts.n) + alpha * static_cast<double>(k));
}

double floored_variance(const GaussianStats& stats, double variance_floor) {
  if (stats.n <= 1) return variance_floor;
  return std::max(stats.variance(), variance_floor);
}

LogProb gauss_logpdf(const GaussianStats& stats, double value,
                     double variance_floor) {
  const double var = floored_variance(stats, variance_floor);
  const double diff = value - stats.mean;
  return {-0.5 * std::log(2.0 * std::numbers::pi * var) -
          0.5 * diff * diff / var};
}

LogProb instance_loglik(const ConceptStats& stats, const EncodedInstance& x,
                        const TreeParams& params) {
  assert(stats.dists.size() == x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const EncodedValue& v = x.values[i];
    switch (v.state) {
      case EncodedValue::State::missing:
        break;
      case EncodedValue::State::categorical:
        total += std::log(
            cat_prob(stats.categorical(i), v.index, params.alpha, x.k[i]));
        break;
      case EncodedValue::State::continuous:
        total += gauss_logpdf(stats.gaussian(i), v.real,
                              params.variance_floor)
                     .value;
        break;
    }
  }
  return {total};
}

PmiScore pmi(const ConceptNode& node, const ConceptNode& reference,
             const EncodedInstance& x, const TreeParams& params) {
  if (&node == &reference) return {0.0, reference.id};
  const double num = instance_loglik(node.stats, x, params).value;
  const double den = instance_loglik(reference.stats, x, params).value;
  return {num - den, reference.id};
}

double categorical_mi(std::span<const double> weights,
                      std::span<const CategoricalCounts* const> children,
                      double alpha, std::size_t k) {
  assert(weights.size() == children.size());
  if (k == 0) return 0.0;
  // p(v|c) laid out child-major.
  std::vector<double> cond(children.size() * k);
  std::vector<double> mixture(k, 0.0);
  for (std::size_t c = 0; c < children.size(); ++c) {
    for (std::size_t v = 0; v < k; ++v) {
      const double p = cat_prob(*children[c], v, alpha, k);
      cond[c * k + v] = p;
      mixture[v] += weights[c] * p;
    }
  }
  double mi = 0.0;
  for (std::size_t c = 0; c < children.size(); ++c) {
    if (weights[c] == 0.0) continue;
    double kl = 0.0;
    for (std::size_t v = 0; v < k; ++v) {
      const double p = cond[c * k + v];
      kl += p * std::log(p / mixture[v]);
    }
    mi += weights[c] * kl;
  }
  return mi;
}

double continuous_mi(std::span<const double> weights,
                     std::span<const GaussianStats* const> children,
                     double variance_floor) {
  assert(weights.size() == children.size());
  // Children with no observations of the attribute carry no information
  // about it; the remaining weights are renormalized.
  double mass = 0.0;
  for (std::size_t c = 0; c < children.size(); ++c) {
    if (children[c]->n > 0) mass += weights[c];
  }
  if (mass <= 0.0) return 0.0;

  double mean = 0.0;
  double second = 0.0;
  double child_entropy = 0.0;
  for (std::size_t c = 0; c < children.size(); ++c) {
    const GaussianStats& g = *children[c];
    if (g.n == 0) continue;
    const double w = weights[c] / mass;
    const double var = floored_variance(g, variance_floor);
    mean += w * g.mean;
    second += w * (var + g.mean * g.mean);
    child_entropy += w * 0.5 * std::log(var);
  }
  const double mix_var = std::max(second - mean * mean, variance_floor);
  return 0.5 * std::log(mix_var) - child_entropy;
}

double partition_mi(const ConceptStats& parent,
                    std::span<const ConceptStats* const> children,
                    std::span<const std::size_t> k, const TreeParams& params) {
  if (children.empty()) {
    throw std::invalid_argument("partition_mi: empty child list");
  }
  std::int64_t total = 0;
  for (const auto* child : children) total += child->count;
  if (total != parent.count) {
    throw std::invalid_argument(
        "partition_mi: child counts do not sum to the parent count");
  }
  if (parent.count == 0) return 0.0;

  std::vector<double> weights;
  weights.reserve(children.size());
  for (const auto* child : children) {
    weights.push_back(static_cast<double>(child->count) /
                      static_cast<double>(parent.count));
  }

  double mi = 0.0;
  std::vector<const CategoricalCounts*> cats(children.size());
  std::vector<const GaussianStats*> gausses(children.size());
  for (std::size_t a = 0; a < parent.dists.size(); ++a) {
    if (std::holds_alternative<CategoricalCounts>(parent.dists[a])) {
      for (std::size_t c = 0; c < children.size(); ++c) {
        cats[c] = &children[c]->categorical(a);
      }
      mi += categorical_mi(weights, cats, params.alpha, k[a]);
    } else {
      for (std::size_t c = 0; c < children.size(); ++c) {
        gausses[c] = &children[c]->gaussian(a);
      }
      mi += continuous_mi(weights, gausses, params.variance_floor);
    }
  }
  return mi;
}

namespace {

double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p) {
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

void smoothed(const CategoricalCounts& counts, double alpha, std::size_t k,
              std::vector<double>& out) {
  out.resize(k);
  for (std::size_t v = 0; v < k; ++v) out[v] = cat_prob(counts, v, alpha, k);
}

// Categorical MI written as H(mixture) - sum_c w_c H(p_c); only the
// candidate child's terms change per insertion.
void add_categorical_scores(std::span<const ConceptStats* const> children,
                            std::size_t a, const EncodedValue& value,
                            std::size_t k, double total,
                            const TreeParams& params,
                            std::vector<double>& scores) {
  if (k == 0) return;
  const std::size_t m = children.size();
  std::vector<std::vector<double>> cond(m);
  std::vector<double> ent(m);
  std::vector<double> mixture(k, 0.0);
  double within = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    smoothed(children[c]->categorical(a), params.alpha, k, cond[c]);
    ent[c] = entropy_of(cond[c]);
    const double w = static_cast<double>(children[c]->count) / total;
    for (std::size_t v = 0; v < k; ++v) mixture[v] += w * cond[c][v];
    within += w * ent[c];
  }

  std::vector<double> updated;
  std::vector<double> mix(k);
  for (std::size_t i = 0; i < m; ++i) {
    const double w_old = static_cast<double>(children[i]->count) / total;
    const double w_new = static_cast<double>(children[i]->count + 1) / total;
    double h_new = ent[i];
    if (value.present()) {
      CategoricalCounts counts = children[i]->categorical(a);
      counts.add(value.index);
      smoothed(counts, params.alpha, k, updated);
      h_new = entropy_of(updated);
    } else {
      updated = cond[i];
    }
    for (std::size_t v = 0; v < k; ++v) {
      mix[v] = mixture[v] - w_old * cond[i][v] + w_new * updated[v];
    }
    scores[i] += entropy_of(mix) - (within - w_old * ent[i] + w_new * h_new);
  }
}

struct GaussianTerms {
  double mass = 0.0;
  double mean = 0.0;
  double second = 0.0;
  double log_var = 0.0;

  void accumulate(const GaussianStats& g, double w, double floor,
                  double sign) {
    if (g.n == 0) return;
    const double var = floored_variance(g, floor);
    mass += sign * w;
    mean += sign * w * g.mean;
    second += sign * w * (var + g.mean * g.mean);
    log_var += sign * w * 0.5 * std::log(var);
  }

  double mi(double floor) const {
    if (mass <= 0.0) return 0.0;
    const double mu = mean / mass;
    const double mix_var = std::max(second / mass - mu * mu, floor);
    return 0.5 * std::log(mix_var) - log_var / mass;
  }
};

void add_continuous_scores(std::span<const ConceptStats* const> children,
                           std::size_t a, const EncodedValue& value,
                           double total, const TreeParams& params,
                           std::vector<double>& scores) {
  const double floor = params.variance_floor;
  GaussianTerms base;
  for (const auto* child : children) {
    base.accumulate(child->gaussian(a),
                    static_cast<double>(child->count) / total, floor, 1.0);
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    const GaussianStats& old = children[i]->gaussian(a);
    GaussianStats grown = old;
    if (value.present()) grown.add(value.real);
    GaussianTerms t = base;
    t.accumulate(old, static_cast<double>(children[i]->count) / total, floor,
                 -1.0);
    t.accumulate(grown, static_cast<double>(children[i]->count + 1) / total,
                 floor, 1.0);
    scores[i] += t.mi(floor);
  }
}

}  // namespace

std::vector<double> insertion_scores(
    std::span<const ConceptStats* const> children, const EncodedInstance& x,
    std::span<const std::size_t> k, const TreeParams& params) {
  std::vector<double> scores(children.size(), 0.0);
  if (children.empty()) return scores;
  std::int64_t count = 1;
  for (const auto* child : children) count += child->count;
  const double total = static_cast<double>(count);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (std::holds_alternative<CategoricalCounts>(children[0]->dists[a])) {
      add_categorical_scores(children, a, x.values[a], k[a], total, params,
                             scores);
    } else {
      add_continuous_scores(children, a, x.values[a], total, params, scores);
    }
  }
  return scores;
}

}  // namespace cobweb
