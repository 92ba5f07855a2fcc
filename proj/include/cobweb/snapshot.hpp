#pragma once

#include <string>
#include <string_view>

#include "cobweb/tree.hpp"

namespace cobweb {

/// JSON document: format tag, parameters, id counter, the schema with its
/// value registries, then the node hierarchy {id, count, dists, children}.
/// Gaussian statistics are written as (n, mean, m2) with round-trip
/// precision.
std::string snapshot(const ConceptTree& tree);

/// Inverse of snapshot(). Throws ParseError; syntax errors carry the byte
/// offset of the failure.
ConceptTree restore(std::string_view bytes);

void save_snapshot(const ConceptTree& tree, const std::string& path);
ConceptTree load_snapshot(const std::string& path);

}  // namespace cobweb
