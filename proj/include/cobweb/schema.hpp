#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace cobweb {

enum class AttributeKind : std::uint8_t { categorical, continuous };

std::string_view to_string(AttributeKind kind);
std::optional<AttributeKind> parse_attribute_kind(std::string_view text);

/// One declared attribute. Categorical attributes carry a value registry
/// that only grows; the position of a value in the registry is its index in
/// every CategoricalCounts of the tree.
class Attribute {
 public:
  Attribute(std::string name, AttributeKind kind);

  const std::string& name() const { return name_; }
  AttributeKind kind() const { return kind_; }
  bool is_categorical() const { return kind_ == AttributeKind::categorical; }

  const std::vector<std::string>& values() const { return values_; }
  std::size_t registry_size() const { return values_.size(); }

  std::optional<std::size_t> lookup(std::string_view value) const;
  std::size_t intern(std::string_view value);

 private:
  std::string name_;
  AttributeKind kind_;
  std::vector<std::string> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

using Value = std::variant<std::string, double>;

/// A partial attribute -> value mapping. Absent attributes are missing.
using Instance = std::map<std::string, Value, std::less<>>;

/// An instance resolved against a schema: one slot per attribute, in schema
/// order. `k` holds the registry size each categorical slot is smoothed
/// against; a query value the registry has never seen gets the index one
/// past the registry and bumps its k by one.
struct EncodedValue {
  enum class State : std::uint8_t { missing, categorical, continuous };

  State state = State::missing;
  std::size_t index = 0;
  double real = 0.0;

  bool present() const { return state != State::missing; }
};

struct EncodedInstance {
  std::vector<EncodedValue> values;
  std::vector<std::size_t> k;

  std::size_t size() const { return values.size(); }
  bool empty() const;
};

class AttributeSchema {
 public:
  AttributeSchema() = default;

  /// Throws SchemaError on a duplicate name.
  std::size_t add_attribute(std::string name, AttributeKind kind);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::size_t size() const { return attributes_.size(); }
  const Attribute& at(std::size_t i) const { return attributes_.at(i); }
  Attribute& at(std::size_t i) { return attributes_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws SchemaError

  /// Registers `value` for categorical attribute `name` ahead of training.
  void declare_value(std::string_view name, std::string_view value);

  /// Resolves a training instance, extending the registries with any
  /// values not seen before.
  EncodedInstance intern(const Instance& x);

  /// Resolves a query without touching the registries.
  EncodedInstance encode_query(const Instance& x) const;

  std::vector<std::size_t> registry_sizes() const;

  bool operator==(const AttributeSchema& other) const;

 private:
  template <typename Resolve>
  EncodedInstance encode(const Instance& x, Resolve&& resolve) const;

  std::vector<Attribute> attributes_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

}  // namespace cobweb
