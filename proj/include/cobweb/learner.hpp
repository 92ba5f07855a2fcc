#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "cobweb/schema.hpp"
#include "cobweb/tree.hpp"

namespace cobweb {

/// Restructuring operators, listed in tie-break priority order.
enum class OperatorKind { insert, merge, split, create };

std::string_view to_string(OperatorKind kind);

/// A candidate operation at one branch and the partition mutual information
/// of the child configuration it would produce. `targets` holds the child
/// ids involved: insert and split name the best host, merge the two best
/// hosts, create none. A child's quality as host is the partition mutual
/// information after adding x to it. Unavailable candidates score -inf.
struct OperatorChoice {
  OperatorKind kind = OperatorKind::insert;
  std::vector<NodeId> targets;
  double score = 0.0;
};

/// Scores all four candidates at `node`, whose statistics must already
/// include `x` and which must have at least two children. Returned in
/// priority order: insert, merge, split, create.
std::array<OperatorChoice, 4> score_operators(const ConceptNode& node,
                                              const EncodedInstance& x,
                                              const AttributeSchema& schema,
                                              const TreeParams& params);

/// Highest-scoring candidate; near ties (within 1e-12) go to the earlier
/// operator in priority order.
OperatorChoice evaluate_operators(const ConceptNode& node,
                                  const EncodedInstance& x,
                                  const AttributeSchema& schema,
                                  const TreeParams& params);

void update_stats(ConceptNode& node, const EncodedInstance& x);

/// True when `x` carries exactly the values the concept holds for every
/// attribute and the concept's distributions are concentrated on them.
bool attribute_identical(const ConceptStats& stats, const EncodedInstance& x);

/// Incorporates `x` at a leaf: identical instances just increment it,
/// anything else turns the leaf into a parent of two children (the old
/// statistics and the new instance).
void fringe_expand(ConceptTree& tree, ConceptNode& leaf,
                   const EncodedInstance& x);

/// Sorts one training instance into the taxonomy, extending the schema
/// registries with any new values first.
void ifit(ConceptTree& tree, const Instance& x);

}  // namespace cobweb
