#include "cobweb/tree.hpp"

#include <cmath>
#include <sstream>

#include "cobweb/errors.hpp"

namespace cobweb {

std::string_view to_string(PmiWeighting weighting) {
  return weighting == PmiWeighting::ratio ? "ratio" : "clamped";
}

std::optional<PmiWeighting> parse_weighting(std::string_view text) {
  if (text == "ratio") return PmiWeighting::ratio;
  if (text == "clamped") return PmiWeighting::clamped;
  return std::nullopt;
}

void validate(const TreeParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) {
    throw ConfigError("alpha must be a positive finite number");
  }
  if (params.max_nodes < 1) throw ConfigError("max_nodes must be at least 1");
  if (!(params.variance_floor > 0.0)) {
    throw ConfigError("variance_floor must be positive");
  }
}

ConceptTree::ConceptTree(AttributeSchema schema, TreeParams params)
    : schema_(std::move(schema)), params_(params) {
  validate(params_);
  root_ = make_node(ConceptStats(schema_));
}

ConceptTree ConceptTree::clone() const {
  return from_parts(schema_, params_, clone_node(*root_), next_id_);
}

std::size_t ConceptTree::node_count() const {
  std::size_t total = 0;
  visit([&](const ConceptNode&, std::size_t) { ++total; });
  return total;
}

std::unique_ptr<ConceptNode> ConceptTree::make_node(ConceptStats stats) {
  auto node = std::make_unique<ConceptNode>();
  node->id = next_id_++;
  node->stats = std::move(stats);
  return node;
}

const ConceptNode* ConceptTree::find(NodeId id) const {
  const ConceptNode* found = nullptr;
  visit([&](const ConceptNode& node, std::size_t) {
    if (node.id == id) found = &node;
  });
  return found;
}

ConceptTree ConceptTree::from_parts(AttributeSchema schema, TreeParams params,
                                    std::unique_ptr<ConceptNode> root,
                                    NodeId next_id) {
  ConceptTree tree(std::move(schema), params);
  tree.root_ = std::move(root);
  tree.next_id_ = next_id;
  return tree;
}

ConceptTree new_tree(AttributeSchema schema, double alpha,
                     std::int64_t max_nodes) {
  TreeParams params;
  params.alpha = alpha;
  params.max_nodes = max_nodes;
  return ConceptTree(std::move(schema), params);
}

std::unique_ptr<ConceptNode> clone_node(const ConceptNode& node) {
  auto copy = std::make_unique<ConceptNode>();
  copy->id = node.id;
  copy->stats = node.stats;
  copy->children.reserve(node.children.size());
  for (const auto& child : node.children) {
    copy->children.push_back(clone_node(*child));
  }
  return copy;
}

bool structurally_equal(const ConceptNode& a, const ConceptNode& b) {
  if (a.id != b.id || !(a.stats == b.stats) ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

bool structurally_equal(const ConceptTree& a, const ConceptTree& b) {
  const auto& pa = a.params();
  const auto& pb = b.params();
  return pa.alpha == pb.alpha && pa.max_nodes == pb.max_nodes &&
         pa.variance_floor == pb.variance_floor &&
         pa.weighting == pb.weighting && a.next_id() == b.next_id() &&
         a.schema() == b.schema() && structurally_equal(a.root(), b.root());
}

namespace {

void check_node(const ConceptNode& node, const AttributeSchema& schema,
                std::vector<std::string>& out) {
  if (node.is_leaf()) return;
  auto report = [&](const std::string& msg) {
    std::ostringstream os;
    os << "node " << node.id << ": " << msg;
    out.push_back(os.str());
  };
  if (node.children.size() == 1) report("single-child interior node");

  std::int64_t total = 0;
  for (const auto& child : node.children) total += child->count();
  if (total != node.count()) report("count differs from sum of children");

  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (!schema.at(a).is_categorical()) continue;
    CategoricalCounts sum;
    for (const auto& child : node.children) sum.merge(child->stats.categorical(a));
    if (!(sum == node.stats.categorical(a))) {
      report("categorical counts of '" + schema.at(a).name() +
             "' differ from sum of children");
    }
  }
  for (const auto& child : node.children) check_node(*child, schema, out);
}

}  // namespace

std::vector<std::string> invariant_violations(const ConceptTree& tree) {
  std::vector<std::string> out;
  check_node(tree.root(), tree.schema(), out);
  return out;
}

}  // namespace cobweb
