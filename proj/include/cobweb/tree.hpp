#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobweb/schema.hpp"
#include "cobweb/stats.hpp"

namespace cobweb {

using NodeId = std::uint64_t;

/// A concept in the taxonomy. Leaves play the role of stored exemplars,
/// interior nodes of prototypes summarizing everything beneath them.
struct ConceptNode {
  NodeId id = 0;
  ConceptStats stats;
  std::vector<std::unique_ptr<ConceptNode>> children;

  std::int64_t count() const { return stats.count; }
  bool is_leaf() const { return children.empty(); }
};

/// How expanded concepts are weighted at prediction time. `ratio`
/// normalizes exp(PMI) = p(x|c)/p(x), a posterior over the expanded concepts
/// under a uniform prior; `clamped` normalizes max(PMI, 0).
enum class PmiWeighting { ratio, clamped };

std::string_view to_string(PmiWeighting weighting);
std::optional<PmiWeighting> parse_weighting(std::string_view text);

struct TreeParams {
  double alpha = 1.0;
  std::int64_t max_nodes = 100;
  double variance_floor = 1e-3;
  PmiWeighting weighting = PmiWeighting::ratio;
};

/// Throws ConfigError unless alpha > 0, max_nodes >= 1, variance_floor > 0.
void validate(const TreeParams& params);

class ConceptTree {
 public:
  ConceptTree(AttributeSchema schema, TreeParams params);

  ConceptTree(ConceptTree&&) noexcept = default;
  ConceptTree& operator=(ConceptTree&&) noexcept = default;

  /// Deep copy; ids and the id counter are preserved.
  ConceptTree clone() const;

  const ConceptNode& root() const { return *root_; }
  ConceptNode& root() { return *root_; }
  const AttributeSchema& schema() const { return schema_; }
  AttributeSchema& schema() { return schema_; }
  const TreeParams& params() const { return params_; }

  bool empty() const { return root_->count() == 0; }
  std::int64_t instances() const { return root_->count(); }
  std::size_t node_count() const;

  NodeId next_id() const { return next_id_; }
  std::unique_ptr<ConceptNode> make_node(ConceptStats stats);

  /// Node lookup by id (linear scan); nullptr if absent.
  const ConceptNode* find(NodeId id) const;

  /// Preorder traversal; `fn(node, depth)`.
  template <typename Fn>
  void visit(Fn&& fn) const {
    visit_impl(*root_, 0, fn);
  }

  /// Reassembles a tree from restored parts. `next_id` must exceed every id
  /// in the hierarchy.
  static ConceptTree from_parts(AttributeSchema schema, TreeParams params,
                                std::unique_ptr<ConceptNode> root,
                                NodeId next_id);

 private:
  template <typename Fn>
  static void visit_impl(const ConceptNode& node, std::size_t depth, Fn& fn) {
    fn(node, depth);
    for (const auto& child : node.children) visit_impl(*child, depth + 1, fn);
  }

  AttributeSchema schema_;
  TreeParams params_;
  std::unique_ptr<ConceptNode> root_;
  NodeId next_id_ = 0;
};

ConceptTree new_tree(AttributeSchema schema, double alpha,
                     std::int64_t max_nodes);

std::unique_ptr<ConceptNode> clone_node(const ConceptNode& node);

/// Same ids, counts, distributions and child order, node by node.
bool structurally_equal(const ConceptNode& a, const ConceptNode& b);
bool structurally_equal(const ConceptTree& a, const ConceptTree& b);

/// Human-readable descriptions of every structural invariant violated by
/// the tree (count conservation, categorical aggregation, no single-child
/// interior nodes). Empty when the tree is well formed.
std::vector<std::string> invariant_violations(const ConceptTree& tree);

}  // namespace cobweb
