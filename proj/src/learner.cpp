#include "cobweb/learner.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include "cobweb/probability.hpp"

namespace cobweb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

// Children ranked by the partition score of inserting x into each, best
// first; equal scores keep lower ids first. Returns the ranking and the
// scores indexed by child position.
struct HostRanking {
  std::vector<std::size_t> order;
  std::vector<double> scores;
};

HostRanking rank_hosts(std::span<const ConceptStats* const> config,
                       std::span<const NodeId> ids, const EncodedInstance& x,
                       std::span<const std::size_t> k,
                       const TreeParams& params) {
  HostRanking r;
  r.scores = insertion_scores(config, x, k, params);
  r.order.resize(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) r.order[i] = i;
  std::sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    return ids[a] < ids[b];
  });
  return r;
}

std::size_t index_of_child(const ConceptNode& node, NodeId id) {
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (node.children[i]->id == id) return i;
  }
  throw std::logic_error("operator target is not a child of the node");
}

// A node left with a single child takes over that child's children; the
// child's statistics are identical to its own at that point.
void collapse_single_child(ConceptNode& node) {
  while (node.children.size() == 1) {
    auto only = std::move(node.children.front());
    node.children = std::move(only->children);
  }
}

ConceptNode* merge_children(ConceptTree& tree, ConceptNode& node,
                            NodeId first, NodeId second) {
  const std::size_t i = index_of_child(node, first);
  const std::size_t j = index_of_child(node, second);
  ConceptStats fused = node.children[i]->stats;
  fused.merge(node.children[j]->stats);
  auto merged = tree.make_node(std::move(fused));
  merged->children.push_back(std::move(node.children[i]));
  merged->children.push_back(std::move(node.children[j]));

  const std::size_t slot = std::min(i, j);
  node.children.erase(node.children.begin() + static_cast<long>(std::max(i, j)));
  node.children[slot] = std::move(merged);
  ConceptNode* result = node.children[slot].get();
  collapse_single_child(node);
  return result;
}

void split_child(ConceptNode& node, NodeId target) {
  const std::size_t i = index_of_child(node, target);
  auto removed = std::move(node.children[i]);
  node.children.erase(node.children.begin() + static_cast<long>(i));
  node.children.insert(node.children.begin() + static_cast<long>(i),
                       std::make_move_iterator(removed->children.begin()),
                       std::make_move_iterator(removed->children.end()));
  collapse_single_child(node);
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::insert:
      return "insert";
    case OperatorKind::merge:
      return "merge";
    case OperatorKind::split:
      return "split";
    case OperatorKind::create:
      return "new";
  }
  return "?";
}

std::array<OperatorChoice, 4> score_operators(const ConceptNode& node,
                                              const EncodedInstance& x,
                                              const AttributeSchema& schema,
                                              const TreeParams& params) {
  const auto& children = node.children;
  if (children.size() < 2) {
    throw std::invalid_argument("score_operators: node needs two children");
  }
  const std::vector<std::size_t> k = schema.registry_sizes();

  std::vector<const ConceptStats*> config;
  std::vector<NodeId> ids;
  for (const auto& child : children) {
    config.push_back(&child->stats);
    ids.push_back(child->id);
  }
  const HostRanking hosts = rank_hosts(config, ids, x, k, params);
  const std::size_t best = hosts.order[0];
  const std::size_t second = hosts.order[1];
  auto score = [&]() { return partition_mi(node.stats, config, k, params); };

  std::array<OperatorChoice, 4> out;

  // insert into the best host
  out[0] = {OperatorKind::insert, {ids[best]}, hosts.scores[best]};

  // merge the two best hosts, with x inserted into the fusion
  {
    out[1] = {OperatorKind::merge, {ids[best], ids[second]}, kNegInf};
    // With two children a merge leaves one child and carries no partition.
    if (children.size() >= 3) {
      ConceptStats fused = children[best]->stats;
      fused.merge(children[second]->stats);
      fused.add(x);
      config.clear();
      config.push_back(&fused);
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i != best && i != second) config.push_back(&children[i]->stats);
      }
      out[1].score = score();
    }
  }

  // split the best host, then insert into the best of its children
  {
    out[2] = {OperatorKind::split, {ids[best]}, kNegInf};
    const ConceptNode& target = *children[best];
    if (!target.is_leaf()) {
      config.clear();
      std::vector<NodeId> promoted_ids;
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i == best) continue;
        config.push_back(&children[i]->stats);
        promoted_ids.push_back(children[i]->id);
      }
      const std::size_t first_grandchild = config.size();
      for (const auto& g : target.children) {
        config.push_back(&g->stats);
        promoted_ids.push_back(g->id);
      }
      const HostRanking promoted = rank_hosts(config, promoted_ids, x, k, params);
      for (std::size_t i : promoted.order) {
        if (i >= first_grandchild) {
          out[2].score = promoted.scores[i];
          break;
        }
      }
    }
  }

  // new singleton child
  {
    ConceptStats singleton(schema);
    singleton.add(x);
    config.clear();
    for (const auto& child : children) config.push_back(&child->stats);
    config.push_back(&singleton);
    out[3] = {OperatorKind::create, {}, score()};
  }
  return out;
}

OperatorChoice evaluate_operators(const ConceptNode& node,
                                  const EncodedInstance& x,
                                  const AttributeSchema& schema,
                                  const TreeParams& params) {
  auto candidates = score_operators(node, x, schema, params);
  std::size_t winner = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].score > candidates[winner].score + kTieTolerance) {
      winner = i;
    }
  }
  return std::move(candidates[winner]);
}

void update_stats(ConceptNode& node, const EncodedInstance& x) {
  node.stats.add(x);
}

bool attribute_identical(const ConceptStats& stats, const EncodedInstance& x) {
  if (stats.count == 0) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const EncodedValue& v = x.values[i];
    if (const auto* cat = std::get_if<CategoricalCounts>(&stats.dists[i])) {
      if (!v.present()) {
        if (cat->n != 0) return false;
        continue;
      }
      if (cat->n != stats.count || cat->count(v.index) != cat->n) return false;
    } else {
      const auto& g = std::get<GaussianStats>(stats.dists[i]);
      if (!v.present()) {
        if (g.n != 0) return false;
        continue;
      }
      if (g.n != stats.count || g.m2 != 0.0 || g.mean != v.real) return false;
    }
  }
  return true;
}

void fringe_expand(ConceptTree& tree, ConceptNode& leaf,
                   const EncodedInstance& x) {
  assert(leaf.is_leaf());
  if (leaf.count() == 0 || attribute_identical(leaf.stats, x)) {
    update_stats(leaf, x);
    return;
  }
  ConceptStats fresh(tree.schema());
  fresh.add(x);
  leaf.children.push_back(tree.make_node(leaf.stats));
  leaf.children.push_back(tree.make_node(std::move(fresh)));
  update_stats(leaf, x);
}

void ifit(ConceptTree& tree, const Instance& instance) {
  const EncodedInstance x = tree.schema().intern(instance);
  const TreeParams& params = tree.params();
  ConceptNode* node = &tree.root();

  while (true) {
    if (node->is_leaf()) {
      fringe_expand(tree, *node, x);
      return;
    }
    update_stats(*node, x);

    // Splits restructure this node in place and are re-evaluated here;
    // every other operator either finishes or moves one level down.
    std::optional<ConceptNode*> next;
    while (!next) {
      OperatorChoice choice = evaluate_operators(*node, x, tree.schema(), params);
      switch (choice.kind) {
        case OperatorKind::insert:
          next = node->children[index_of_child(*node, choice.targets[0])].get();
          break;
        case OperatorKind::create: {
          ConceptStats fresh(tree.schema());
          fresh.add(x);
          node->children.push_back(tree.make_node(std::move(fresh)));
          return;
        }
        case OperatorKind::merge:
          next = merge_children(tree, *node, choice.targets[0],
                                choice.targets[1]);
          break;
        case OperatorKind::split:
          split_child(*node, choice.targets[0]);
          break;
      }
    }
    node = *next;
  }
}

}  // namespace cobweb
