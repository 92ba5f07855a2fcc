#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cobweb/experiments/stimuli.hpp"
#include "cobweb/learner.hpp"
#include "cobweb/probability.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cobweb;
using testing_support::binary_schema;
using testing_support::bits;
using testing_support::mi_oracle;

namespace {

std::unique_ptr<ConceptNode> leaf(NodeId id, const AttributeSchema& schema,
                                  const std::vector<Instance>& members) {
  auto node = std::make_unique<ConceptNode>();
  node->id = id;
  node->stats = ConceptStats(schema);
  for (const auto& m : members) node->stats.add(schema.encode_query(m));
  return node;
}

// Parent with the given children whose statistics already include x.
ConceptNode branch(std::vector<std::unique_ptr<ConceptNode>> children,
                   const AttributeSchema& schema, const EncodedInstance& x) {
  ConceptNode node;
  node.id = 100;
  node.stats = ConceptStats(schema);
  for (const auto& c : children) node.stats.merge(c->stats);
  node.stats.add(x);
  node.children = std::move(children);
  return node;
}

std::vector<ConceptStats> stats_of(const ConceptNode& node) {
  std::vector<ConceptStats> out;
  for (const auto& c : node.children) out.push_back(c->stats);
  return out;
}

}  // namespace

TEST_CASE("first instance is absorbed by the root") {
  auto tree = new_tree(binary_schema(3), 1.0, 100);
  ifit(tree, bits("101"));
  CHECK(tree.root().count() == 1);
  CHECK(tree.root().is_leaf());
}

TEST_CASE("identical instance increments a leaf") {
  auto tree = new_tree(binary_schema(3), 1.0, 100);
  ifit(tree, bits("101"));
  ifit(tree, bits("101"));
  CHECK(tree.root().count() == 2);
  CHECK(tree.root().is_leaf());
}

TEST_CASE("differing instance splits the fringe into two children") {
  auto tree = new_tree(binary_schema(3), 1.0, 100);
  ifit(tree, bits("101"));
  ifit(tree, bits("100"));
  REQUIRE(tree.root().children.size() == 2);
  CHECK(tree.root().count() == 2);
  CHECK(tree.root().children[0]->count() == 1);
  CHECK(tree.root().children[1]->count() == 1);
  CHECK(invariant_violations(tree).empty());
}

TEST_CASE("insert wins for a copy of a child") {
  const AttributeSchema schema = binary_schema(3);
  const auto x = schema.encode_query(bits("000"));
  std::vector<std::unique_ptr<ConceptNode>> kids;
  kids.push_back(leaf(1, schema, {bits("000")}));
  kids.push_back(leaf(2, schema, {bits("111")}));
  const ConceptNode node = branch(std::move(kids), schema, x);
  TreeParams params;
  params.alpha = 0.5;

  const auto scores = score_operators(node, x, schema, params);
  const auto k = schema.registry_sizes();
  auto base = stats_of(node);
  auto into_a = base;
  into_a[0].add(x);
  auto alone = base;
  ConceptStats fresh(schema);
  fresh.add(x);
  alone.push_back(fresh);

  CHECK(scores[0].kind == OperatorKind::insert);
  CHECK(scores[0].targets == std::vector<NodeId>{1});
  CHECK(scores[0].score == doctest::Approx(mi_oracle(into_a, k, 0.5, 1e-3)).epsilon(1e-12));
  CHECK(scores[1].score == -std::numeric_limits<double>::infinity());
  CHECK(scores[2].score == -std::numeric_limits<double>::infinity());
  CHECK(scores[3].score == doctest::Approx(mi_oracle(alone, k, 0.5, 1e-3)).epsilon(1e-12));
  CHECK(scores[0].score > scores[3].score);
  CHECK(evaluate_operators(node, x, schema, params).kind == OperatorKind::insert);
}

TEST_CASE("new wins for an instance sharing nothing with the children") {
  AttributeSchema schema;
  for (const char* a : {"p", "q", "r", "s"}) {
    schema.add_attribute(a, AttributeKind::categorical);
    for (const char* v : {"0", "1", "2"}) schema.declare_value(a, v);
  }
  auto pattern = [](char c) {
    Instance x;
    for (const char* a : {"p", "q", "r", "s"}) x[a] = std::string(1, c);
    return x;
  };
  const auto x = schema.encode_query(pattern('2'));
  std::vector<std::unique_ptr<ConceptNode>> kids;
  kids.push_back(leaf(1, schema, {pattern('0'), pattern('0')}));
  kids.push_back(leaf(2, schema, {pattern('1'), pattern('1')}));
  const ConceptNode node = branch(std::move(kids), schema, x);
  TreeParams params;
  params.alpha = 0.1;

  const auto scores = score_operators(node, x, schema, params);
  const auto k = schema.registry_sizes();
  for (std::size_t host = 0; host < 2; ++host) {
    auto config = stats_of(node);
    config[host].add(x);
    CHECK(scores[3].score > mi_oracle(config, k, 0.1, 1e-3));
  }
  CHECK(evaluate_operators(node, x, schema, params).kind == OperatorKind::create);
}

TEST_CASE("evaluate_operators picks the best scoring candidate") {
  std::mt19937_64 rng(11);
  const AttributeSchema schema = binary_schema(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = new_tree(schema, 0.3 + 0.01 * trial, 100);
    std::uniform_int_distribution<int> bit(0, 1);
    auto draw = [&] {
      std::string s;
      for (int i = 0; i < 4; ++i) s += static_cast<char>('0' + bit(rng));
      return bits(s);
    };
    for (int i = 0; i < 12; ++i) ifit(tree, draw());
    if (tree.root().children.size() < 2) continue;
    ConceptNode& root = tree.root();
    const auto x = tree.schema().encode_query(draw());
    root.stats.add(x);
    const auto scores = score_operators(root, x, tree.schema(), tree.params());
    const auto choice = evaluate_operators(root, x, tree.schema(), tree.params());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : scores) best = std::max(best, s.score);
    CHECK(choice.score >= best - 1e-12);
    // Ties go to the first operator in priority order.
    for (const auto& s : scores) {
      if (s.kind == choice.kind) break;
      CHECK(s.score < best - 1e-12);
    }
  }
}

TEST_CASE("merge needs three children and split needs a non-leaf host") {
  const AttributeSchema schema = binary_schema(2);
  const auto x = schema.encode_query(bits("01"));
  std::vector<std::unique_ptr<ConceptNode>> kids;
  kids.push_back(leaf(1, schema, {bits("00")}));
  kids.push_back(leaf(2, schema, {bits("11")}));
  const ConceptNode node = branch(std::move(kids), schema, x);
  const auto scores = score_operators(node, x, schema, TreeParams{});
  CHECK(std::isinf(scores[1].score));
  CHECK(std::isinf(scores[2].score));
  CHECK(std::isfinite(scores[0].score));
  CHECK(std::isfinite(scores[3].score));
}

TEST_CASE("medin training items end up in leaves of their own") {
  const auto stimuli = experiments::gen_medin_exp1();
  ConceptTree tree(stimuli.schema, TreeParams{0.1, 100, 1e-3, PmiWeighting::ratio});
  for (const auto& item : stimuli.train) ifit(tree, stimuli.labeled(item));
  CHECK(tree.instances() == 6);
  CHECK(invariant_violations(tree).empty());

  // Each of the six distinct items is one leaf, and no leaf mixes items.
  std::size_t leaves = 0;
  tree.visit([&](const ConceptNode& n, std::size_t) {
    if (!n.is_leaf()) return;
    ++leaves;
    CHECK(n.count() == 1);
  });
  CHECK(leaves == 6);

  const auto label = stimuli.schema.index_of("category");
  const auto a_index = *stimuli.schema.at(label).lookup("A");
  auto leaf_for = [&](const Instance& features) {
    const ConceptNode* found = nullptr;
    const auto x = tree.schema().encode_query(features);
    tree.visit([&](const ConceptNode& n, std::size_t) {
      if (n.is_leaf() && attribute_identical(n.stats, x)) found = &n;
    });
    return found;
  };
  const ConceptNode* six = leaf_for(stimuli.labeled(stimuli.train[0]));
  const ConceptNode* fifteen = leaf_for(stimuli.labeled(stimuli.train[4]));
  REQUIRE(six != nullptr);
  REQUIRE(fifteen != nullptr);
  CHECK(six->stats.categorical(label).count(a_index) == 1);
  CHECK(fifteen->stats.categorical(label).count(a_index) == 0);

  const auto k = tree.schema().at(label).registry_size();
  CHECK(cat_prob(six->stats.categorical(label), a_index, 0.1, k) >
        cat_prob(fifteen->stats.categorical(label), a_index, 0.1, k));
}

TEST_CASE("frequent cards differing only in last name split on it") {
  AttributeSchema schema;
  schema.add_attribute("last_name", AttributeKind::categorical);
  for (const char* f : {"age", "education", "marital_status", "hobby", "club"}) {
    schema.add_attribute(f, AttributeKind::categorical);
  }
  ConceptTree tree(schema, TreeParams{});
  for (int i = 0; i < 10; ++i) {
    ifit(tree, {{"last_name", "name-" + std::to_string(i)},
                {"age", std::string("1")},
                {"education", std::string("1")},
                {"marital_status", std::string("2")},
                {"hobby", std::string("golf")},
                {"club", std::string("Club1")}});
  }
  CHECK(tree.instances() == 10);
  CHECK(invariant_violations(tree).empty());
  std::set<std::size_t> names;
  std::size_t leaves = 0;
  tree.visit([&](const ConceptNode& n, std::size_t) {
    if (!n.is_leaf()) return;
    ++leaves;
    CHECK(n.count() == 1);
    const auto& counts = n.stats.categorical(0).counts;
    names.insert(static_cast<std::size_t>(
        std::find(counts.begin(), counts.end(), 1) - counts.begin()));
  });
  CHECK(leaves == 10);
  CHECK(names.size() == 10);
}

TEST_CASE("ifit keeps counts consistent on every path") {
  auto tree = new_tree(binary_schema(5), 0.5, 100);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (int j = 0; j < 5; ++j) s += static_cast<char>('0' + bit(rng));
    ifit(tree, bits(s));
    REQUIRE(invariant_violations(tree).empty());
  }
  CHECK(tree.instances() == 200);
}
