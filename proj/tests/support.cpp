#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace testing_support {

using namespace cobweb;

AttributeSchema binary_schema(std::size_t n) {
  AttributeSchema schema;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = "a" + std::to_string(i);
    schema.add_attribute(name, AttributeKind::categorical);
    schema.declare_value(name, "0");
    schema.declare_value(name, "1");
  }
  return schema;
}

Instance bits(const std::string& pattern) {
  Instance x;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    x["a" + std::to_string(i)] = std::string(1, pattern[i]);
  }
  return x;
}

double mi_oracle(const std::vector<ConceptStats>& children,
                 const std::vector<std::size_t>& k, double alpha,
                 double variance_floor) {
  double total = 0.0;
  for (const auto& c : children) total += static_cast<double>(c.count);
  double mi = 0.0;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (std::holds_alternative<CategoricalCounts>(children[0].dists[a])) {
      const double kk = static_cast<double>(k[a]);
      std::vector<std::vector<double>> p(children.size(), std::vector<double>(k[a]));
      std::vector<double> mix(k[a], 0.0);
      for (std::size_t c = 0; c < children.size(); ++c) {
        const auto& cc = std::get<CategoricalCounts>(children[c].dists[a]);
        for (std::size_t v = 0; v < k[a]; ++v) {
          const double count = v < cc.counts.size() ? static_cast<double>(cc.counts[v]) : 0.0;
          p[c][v] = (count + alpha) / (static_cast<double>(cc.n) + alpha * kk);
          mix[v] += static_cast<double>(children[c].count) / total * p[c][v];
        }
      }
      for (std::size_t c = 0; c < children.size(); ++c) {
        const double w = static_cast<double>(children[c].count) / total;
        for (std::size_t v = 0; v < k[a]; ++v) {
          if (w > 0.0) mi += w * p[c][v] * std::log(p[c][v] / mix[v]);
        }
      }
    } else {
      double mass = 0.0;
      for (const auto& c : children) {
        if (std::get<GaussianStats>(c.dists[a]).n > 0) mass += static_cast<double>(c.count);
      }
      if (mass == 0.0) continue;
      double m1 = 0.0;
      double m2 = 0.0;
      double h = 0.0;
      for (const auto& c : children) {
        const auto& g = std::get<GaussianStats>(c.dists[a]);
        if (g.n == 0) continue;
        const double w = static_cast<double>(c.count) / mass;
        const double var = g.n <= 1 ? variance_floor
                                    : std::max(g.m2 / static_cast<double>(g.n), variance_floor);
        m1 += w * g.mean;
        m2 += w * (var + g.mean * g.mean);
        h += w * 0.5 * std::log(var);
      }
      mi += 0.5 * std::log(std::max(m2 - m1 * m1, variance_floor)) - h;
    }
  }
  return mi;
}

RandomConfig random_config(std::mt19937_64& rng) {
  RandomConfig cfg;
  std::uniform_int_distribution<int> n_attrs(1, 3);
  std::uniform_int_distribution<int> n_children(1, 4);
  std::uniform_int_distribution<int> n_values(2, 4);
  std::uniform_real_distribution<double> alpha(0.05, 3.0);
  std::bernoulli_distribution continuous(0.3);
  cfg.alpha = alpha(rng);

  const int attrs = n_attrs(rng);
  for (int a = 0; a < attrs; ++a) {
    const std::string name = "x" + std::to_string(a);
    if (continuous(rng)) {
      cfg.schema.add_attribute(name, AttributeKind::continuous);
    } else {
      cfg.schema.add_attribute(name, AttributeKind::categorical);
      const int values = n_values(rng);
      for (int v = 0; v < values; ++v) cfg.schema.declare_value(name, "v" + std::to_string(v));
    }
  }
  cfg.k = cfg.schema.registry_sizes();

  const int children = n_children(rng);
  std::uniform_int_distribution<int> size(1, 6);
  for (int c = 0; c < children; ++c) {
    ConceptStats stats(cfg.schema);
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      stats.add(cfg.schema.encode_query(random_instance(rng, cfg.schema, 4, 0.15)));
    }
    cfg.children.push_back(std::move(stats));
  }
  return cfg;
}

Instance random_instance(std::mt19937_64& rng, const AttributeSchema& schema,
                         std::size_t values, double missing) {
  std::bernoulli_distribution drop(missing);
  std::uniform_int_distribution<std::size_t> pick(0, values - 1);
  std::normal_distribution<double> real(0.0, 2.0);
  Instance x;
  for (const auto& attr : schema.attributes()) {
    if (drop(rng)) continue;
    if (attr.is_categorical()) {
      const std::size_t v = std::min(pick(rng), attr.registry_size() ? attr.registry_size() - 1 : 0);
      x[attr.name()] = attr.registry_size() ? attr.values()[v] : std::string("v0");
    } else {
      x[attr.name()] = real(rng);
    }
  }
  return x;
}

}  // namespace testing_support
