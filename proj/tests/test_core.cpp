#include <cmath>
#include <numbers>

#include "cobweb/errors.hpp"
#include "cobweb/probability.hpp"
#include "cobweb/schema.hpp"
#include "cobweb/stats.hpp"
#include "cobweb/tree.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cobweb;
using testing_support::binary_schema;
using testing_support::bits;

TEST_CASE("new_tree starts empty and rejects bad parameters") {
  const ConceptTree tree = new_tree(binary_schema(4), 0.1, 100);
  CHECK(tree.empty());
  CHECK(tree.root().count() == 0);
  CHECK(tree.node_count() == 1);
  CHECK_THROWS_AS(new_tree(binary_schema(4), 0.0, 100), ConfigError);
  CHECK_THROWS_AS(new_tree(binary_schema(4), -1.0, 100), ConfigError);
  CHECK_THROWS_AS(new_tree(binary_schema(4), 1.0, 0), ConfigError);
}

TEST_CASE("schema keeps registry order and rejects duplicates") {
  AttributeSchema schema;
  schema.add_attribute("color", AttributeKind::categorical);
  CHECK_THROWS_AS(schema.add_attribute("color", AttributeKind::continuous), SchemaError);
  const auto first = schema.intern({{"color", std::string("red")}});
  const auto second = schema.intern({{"color", std::string("blue")}});
  const auto again = schema.intern({{"color", std::string("red")}});
  CHECK(first.values[0].index == 0);
  CHECK(second.values[0].index == 1);
  CHECK(again.values[0].index == 0);
  CHECK(schema.at(0).values() == std::vector<std::string>{"red", "blue"});
}

TEST_CASE("query encoding never grows the registry") {
  AttributeSchema schema = binary_schema(2);
  const auto before = schema.registry_sizes();
  const auto x = schema.encode_query(bits("12"));
  CHECK(schema.registry_sizes() == before);
  CHECK(x.values[0].index == 1);
  CHECK(x.k[0] == 2);
  CHECK(x.values[1].index == 2);
  CHECK(x.k[1] == 3);
}

TEST_CASE("queries that do not conform are rejected") {
  AttributeSchema schema = binary_schema(1);
  schema.add_attribute("size", AttributeKind::continuous);
  CHECK_THROWS_AS(schema.encode_query({{"nope", std::string("1")}}), SchemaError);
  CHECK_THROWS_AS(schema.encode_query({{"a0", 1.5}}), SchemaError);
  CHECK_THROWS_AS(schema.encode_query({{"size", std::string("big")}}), SchemaError);
}

TEST_CASE("gaussian stream 1,2,3") {
  GaussianStats g;
  for (double x : {1.0, 2.0, 3.0}) g.add(x);
  CHECK(g.n == 3);
  CHECK(g.mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.variance() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("concept stats update and skip missing attributes") {
  AttributeSchema schema = binary_schema(2);
  ConceptStats stats(schema);
  stats.add(schema.encode_query(bits("1")));
  stats.add(schema.encode_query(bits("1")));
  CHECK(stats.count == 2);
  CHECK(stats.categorical(0).count(1) == 2);
  CHECK(stats.categorical(1).n == 0);
}

TEST_CASE("cat_prob arithmetic") {
  CategoricalCounts c;
  c.add(0, 2);
  CHECK(cat_prob(c, 0, 1.0, 2) == doctest::Approx(0.75));
  CHECK(cat_prob(CategoricalCounts{}, 3, 1.0, 4) == doctest::Approx(0.25));
  CategoricalCounts d;
  d.add(0, 7);
  d.add(1, 3);
  CHECK(cat_prob(d, 1, 0.1, 2) == doctest::Approx(3.1 / 10.2).epsilon(1e-14));
  CHECK(cat_prob(d, 1, 0.1, 2) == doctest::Approx(0.30392).epsilon(1e-5));
}

TEST_CASE("gaussian log density") {
  GaussianStats unit;
  unit.add(-1.0);
  unit.add(1.0);
  CHECK(gauss_logpdf(unit, 0.0, 1e-3).value == doctest::Approx(-0.918939).epsilon(1e-6));

  GaussianStats four;
  four.add(0.0);
  four.add(4.0);
  CHECK(four.variance() == doctest::Approx(4.0));
  CHECK(gauss_logpdf(four, 4.0, 1e-3).value ==
        doctest::Approx(-0.5 * std::log(8.0 * std::numbers::pi) - 0.5).epsilon(1e-12));
  CHECK(gauss_logpdf(four, 4.0, 1e-3).value == doctest::Approx(-2.112086).epsilon(1e-6));

  GaussianStats single;
  single.add(7.0);
  CHECK(gauss_logpdf(single, 7.0, 0.01).value ==
        doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi * 0.01)));
}

TEST_CASE("instance log-likelihood") {
  AttributeSchema schema;
  schema.add_attribute("F", AttributeKind::categorical);
  schema.declare_value("F", "1");
  schema.declare_value("F", "0");
  schema.add_attribute("G", AttributeKind::categorical);
  schema.declare_value("G", "x");
  schema.declare_value("G", "y");
  ConceptStats stats(schema);
  for (int i = 0; i < 3; ++i) stats.add(schema.encode_query({{"F", std::string("1")}}));
  TreeParams params;

  CHECK(instance_loglik(stats, schema.encode_query({}), params).value == 0.0);
  const double f = instance_loglik(stats, schema.encode_query({{"F", std::string("1")}}), params).value;
  CHECK(f == doctest::Approx(std::log(4.0 / 5.0)).epsilon(1e-14));
  const double g = instance_loglik(stats, schema.encode_query({{"G", std::string("y")}}), params).value;
  const double both = instance_loglik(
      stats, schema.encode_query({{"F", std::string("1")}, {"G", std::string("y")}}), params).value;
  CHECK(both == doctest::Approx(f + g).epsilon(1e-14));
}

TEST_CASE("pmi sign and self reference") {
  AttributeSchema schema = binary_schema(1);
  auto tree = new_tree(schema, 1.0, 100);
  auto pure = std::make_unique<ConceptNode>();
  pure->id = 1;
  pure->stats = ConceptStats(schema);
  auto mixed = std::make_unique<ConceptNode>();
  mixed->id = 2;
  mixed->stats = ConceptStats(schema);
  for (int i = 0; i < 3; ++i) pure->stats.add(schema.encode_query(bits("1")));
  for (int i = 0; i < 3; ++i) mixed->stats.add(schema.encode_query(bits("0")));
  auto root = std::make_unique<ConceptNode>();
  root->stats = pure->stats;
  root->stats.merge(mixed->stats);
  const auto x = schema.encode_query(bits("1"));
  TreeParams params;
  CHECK(pmi(*root, *root, x, params).value == 0.0);
  CHECK(pmi(*pure, *root, x, params).value > 0.0);
  CHECK(pmi(*mixed, *root, x, params).value < 0.0);
}

TEST_CASE("partition_mi special cases") {
  AttributeSchema schema = binary_schema(1);
  const std::vector<std::size_t> k = schema.registry_sizes();

  ConceptStats zero(schema);
  ConceptStats one(schema);
  for (int i = 0; i < 5; ++i) {
    zero.add(schema.encode_query(bits("0")));
    one.add(schema.encode_query(bits("1")));
  }
  ConceptStats parent = zero;
  parent.merge(one);

  TreeParams params;
  params.alpha = 0.7;
  const ConceptStats* single[] = {&parent};
  CHECK(partition_mi(parent, single, k, params) == doctest::Approx(0.0).epsilon(1e-15));

  params.alpha = 1e-9;
  const ConceptStats* pair[] = {&zero, &one};
  CHECK(partition_mi(parent, pair, k, params) == doctest::Approx(std::log(2.0)).epsilon(1e-7));

  CHECK_THROWS_AS(partition_mi(parent, std::span<const ConceptStats* const>{}, k, params),
                  std::invalid_argument);
}

TEST_CASE("partition_mi matches a hand double sum") {
  AttributeSchema schema;
  schema.add_attribute("v", AttributeKind::categorical);
  schema.declare_value("v", "a");
  schema.declare_value("v", "b");
  auto with = [&](int a, int b) {
    ConceptStats s(schema);
    for (int i = 0; i < a; ++i) s.add(schema.encode_query({{"v", std::string("a")}}));
    for (int i = 0; i < b; ++i) s.add(schema.encode_query({{"v", std::string("b")}}));
    return s;
  };
  const ConceptStats c1 = with(2, 1);
  const ConceptStats c2 = with(1, 3);
  ConceptStats parent = c1;
  parent.merge(c2);

  // Smoothed at alpha 0.5: child 1 (2.5, 1.5)/4, child 2 (1.5, 3.5)/5,
  // weights 3/7 and 4/7.
  const double w1 = 3.0 / 7.0;
  const double w2 = 4.0 / 7.0;
  const double p1[] = {2.5 / 4.0, 1.5 / 4.0};
  const double p2[] = {1.5 / 5.0, 3.5 / 5.0};
  double expected = 0.0;
  for (int v = 0; v < 2; ++v) {
    const double mix = w1 * p1[v] + w2 * p2[v];
    expected += w1 * p1[v] * std::log(p1[v] / mix) + w2 * p2[v] * std::log(p2[v] / mix);
  }
  TreeParams params;
  params.alpha = 0.5;
  const ConceptStats* children[] = {&c1, &c2};
  const std::vector<std::size_t> k = {2};
  CHECK(partition_mi(parent, children, k, params) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(testing_support::mi_oracle({c1, c2}, k, 0.5, 1e-3) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("weighting names round trip") {
  for (auto w : {PmiWeighting::ratio, PmiWeighting::clamped}) {
    CHECK(parse_weighting(to_string(w)) == w);
  }
  CHECK_FALSE(parse_weighting("softmax").has_value());
}
