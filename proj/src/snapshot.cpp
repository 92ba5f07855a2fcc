#include "cobweb/snapshot.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cobweb/errors.hpp"
#include "json.hpp"

namespace cobweb {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "cobweb-snapshot";
constexpr int kVersion = 1;

json node_to_json(const ConceptNode& node, const AttributeSchema& schema) {
  json dists = json::object();
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const auto& dist = node.stats.dists[a];
    if (const auto* cat = std::get_if<CategoricalCounts>(&dist)) {
      dists[schema.at(a).name()] = {{"n", cat->n}, {"counts", cat->counts}};
    } else {
      const auto& g = std::get<GaussianStats>(dist);
      dists[schema.at(a).name()] = {{"n", g.n}, {"mean", g.mean}, {"m2", g.m2}};
    }
  }
  json children = json::array();
  for (const auto& child : node.children) {
    children.push_back(node_to_json(*child, schema));
  }
  return {{"id", node.id},
          {"count", node.count()},
          {"dists", std::move(dists)},
          {"children", std::move(children)}};
}

[[noreturn]] void structural_error(const std::string& what) {
  throw ParseError("malformed snapshot: " + what, ParseError::npos);
}

std::unique_ptr<ConceptNode> node_from_json(const json& j,
                                            const AttributeSchema& schema,
                                            std::unordered_set<NodeId>& seen) {
  auto node = std::make_unique<ConceptNode>();
  node->id = j.at("id").get<NodeId>();
  if (!seen.insert(node->id).second) {
    structural_error("duplicate node id " + std::to_string(node->id));
  }
  node->stats = ConceptStats(schema);
  node->stats.count = j.at("count").get<std::int64_t>();
  if (node->stats.count < 0) structural_error("negative count");

  const json& dists = j.at("dists");
  if (dists.size() != schema.size()) {
    structural_error("node " + std::to_string(node->id) +
                     " does not hold one distribution per attribute");
  }
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema.at(a);
    const json& d = dists.at(attr.name());
    if (attr.is_categorical()) {
      CategoricalCounts cat;
      cat.n = d.at("n").get<std::int64_t>();
      cat.counts = d.at("counts").get<std::vector<std::int64_t>>();
      std::int64_t total = 0;
      for (auto c : cat.counts) {
        if (c < 0) structural_error("negative categorical count");
        total += c;
      }
      if (total != cat.n) structural_error("categorical counts do not sum to n");
      if (cat.counts.size() > attr.registry_size()) {
        structural_error("more counts than registered values for '" +
                         attr.name() + "'");
      }
      node->stats.dists[a] = std::move(cat);
    } else {
      GaussianStats g;
      g.n = d.at("n").get<std::int64_t>();
      g.mean = d.at("mean").get<double>();
      g.m2 = d.at("m2").get<double>();
      if (g.n < 0 || g.m2 < 0.0) structural_error("invalid gaussian stats");
      node->stats.dists[a] = g;
    }
  }
  for (const json& child : j.at("children")) {
    node->children.push_back(node_from_json(child, schema, seen));
  }
  return node;
}

}  // namespace

std::string snapshot(const ConceptTree& tree) {
  json attributes = json::array();
  for (const auto& attr : tree.schema().attributes()) {
    json a = {{"name", attr.name()}, {"kind", std::string(to_string(attr.kind()))}};
    if (attr.is_categorical()) a["values"] = attr.values();
    attributes.push_back(std::move(a));
  }
  const TreeParams& p = tree.params();
  json doc = {{"format", kFormat},
              {"version", kVersion},
              {"params",
               {{"alpha", p.alpha},
                {"max_nodes", p.max_nodes},
                {"variance_floor", p.variance_floor},
                {"weighting", std::string(to_string(p.weighting))}}},
              {"next_id", tree.next_id()},
              {"schema", {{"attributes", std::move(attributes)}}},
              {"root", node_to_json(tree.root(), tree.schema())}};
  return doc.dump(1) + "\n";
}

ConceptTree restore(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }

  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      structural_error("unexpected format tag");
    }
    if (doc.at("version").get<int>() != kVersion) {
      structural_error("unsupported version");
    }

    AttributeSchema schema;
    for (const json& a : doc.at("schema").at("attributes")) {
      const auto kind = parse_attribute_kind(a.at("kind").get<std::string>());
      if (!kind) structural_error("unknown attribute kind");
      const std::string name = a.at("name").get<std::string>();
      const std::size_t index = schema.add_attribute(name, *kind);
      if (*kind == AttributeKind::categorical) {
        for (const json& v : a.at("values")) {
          const std::string token = v.get<std::string>();
          if (schema.at(index).lookup(token)) {
            structural_error("duplicate registry value '" + token + "'");
          }
          schema.at(index).intern(token);
        }
      }
    }

    TreeParams params;
    const json& p = doc.at("params");
    params.alpha = p.at("alpha").get<double>();
    params.max_nodes = p.at("max_nodes").get<std::int64_t>();
    params.variance_floor = p.at("variance_floor").get<double>();
    if (p.contains("weighting")) {
      const auto w = parse_weighting(p.at("weighting").get<std::string>());
      if (!w) structural_error("unknown weighting scheme");
      params.weighting = *w;
    }
    validate(params);

    const NodeId next_id = doc.at("next_id").get<NodeId>();
    std::unordered_set<NodeId> seen;
    auto root = node_from_json(doc.at("root"), schema, seen);
    for (NodeId id : seen) {
      if (id >= next_id) structural_error("next_id does not exceed every node id");
    }
    return ConceptTree::from_parts(std::move(schema), params, std::move(root),
                                   next_id);
  } catch (const json::exception& e) {
    structural_error(e.what());
  } catch (const SchemaError& e) {
    structural_error(e.what());
  } catch (const ConfigError& e) {
    structural_error(e.what());
  }
}

void save_snapshot(const ConceptTree& tree, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << snapshot(tree);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

ConceptTree load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return restore(buffer.str());
}

}  // namespace cobweb
