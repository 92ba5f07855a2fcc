#include "cobweb/schema.hpp"

#include <algorithm>

#include "cobweb/errors.hpp"

namespace cobweb {

std::string_view to_string(AttributeKind kind) {
  return kind == AttributeKind::categorical ? "categorical" : "continuous";
}

std::optional<AttributeKind> parse_attribute_kind(std::string_view text) {
  if (text == "categorical") return AttributeKind::categorical;
  if (text == "continuous") return AttributeKind::continuous;
  return std::nullopt;
}

Attribute::Attribute(std::string name, AttributeKind kind)
    : name_(std::move(name)), kind_(kind) {}

std::optional<std::size_t> Attribute::lookup(std::string_view value) const {
  auto it = index_.find(std::string(value));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Attribute::intern(std::string_view value) {
  auto [it, inserted] = index_.try_emplace(std::string(value), values_.size());
  if (inserted) values_.emplace_back(value);
  return it->second;
}

bool EncodedInstance::empty() const {
  return std::none_of(values.begin(), values.end(),
                      [](const EncodedValue& v) { return v.present(); });
}

std::size_t AttributeSchema::add_attribute(std::string name,
                                           AttributeKind kind) {
  if (name.empty()) throw SchemaError("attribute name must not be empty");
  if (by_name_.count(name) != 0) {
    throw SchemaError("duplicate attribute '" + name + "'");
  }
  const std::size_t index = attributes_.size();
  by_name_.emplace(name, index);
  attributes_.emplace_back(std::move(name), kind);
  return index;
}

std::optional<std::size_t> AttributeSchema::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t AttributeSchema::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw SchemaError("unknown attribute '" + std::string(name) + "'");
}

void AttributeSchema::declare_value(std::string_view name,
                                    std::string_view value) {
  Attribute& attr = attributes_.at(index_of(name));
  if (!attr.is_categorical()) {
    throw SchemaError("attribute '" + attr.name() + "' is not categorical");
  }
  attr.intern(value);
}

template <typename Resolve>
EncodedInstance AttributeSchema::encode(const Instance& x,
                                        Resolve&& resolve) const {
  EncodedInstance out;
  out.values.resize(attributes_.size());
  out.k = registry_sizes();
  for (const auto& [name, value] : x) {
    const std::size_t i = index_of(name);
    const Attribute& attr = attributes_[i];
    EncodedValue& slot = out.values[i];
    if (attr.is_categorical()) {
      const auto* token = std::get_if<std::string>(&value);
      if (token == nullptr) {
        throw SchemaError("attribute '" + name +
                          "' is categorical but got a number");
      }
      slot.state = EncodedValue::State::categorical;
      slot.index = resolve(i, *token);
      out.k[i] = std::max(out.k[i], slot.index + 1);
    } else {
      const auto* real = std::get_if<double>(&value);
      if (real == nullptr) {
        throw SchemaError("attribute '" + name +
                          "' is continuous but got a token");
      }
      slot.state = EncodedValue::State::continuous;
      slot.real = *real;
    }
  }
  return out;
}

EncodedInstance AttributeSchema::intern(const Instance& x) {
  // Validate first so a bad instance leaves the registries untouched.
  (void)encode_query(x);
  auto out = encode(x, [this](std::size_t i, const std::string& token) {
    return attributes_[i].intern(token);
  });
  out.k = registry_sizes();
  return out;
}

EncodedInstance AttributeSchema::encode_query(const Instance& x) const {
  return encode(x, [this](std::size_t i, const std::string& token) {
    const Attribute& attr = attributes_[i];
    return attr.lookup(token).value_or(attr.registry_size());
  });
}

std::vector<std::size_t> AttributeSchema::registry_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(attributes_.size());
  for (const auto& attr : attributes_) sizes.push_back(attr.registry_size());
  return sizes;
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
  if (attributes_.size() != other.attributes_.size()) return false;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const auto& a = attributes_[i];
    const auto& b = other.attributes_[i];
    if (a.name() != b.name() || a.kind() != b.kind() ||
        a.values() != b.values()) {
      return false;
    }
  }
  return true;
}

}  // namespace cobweb
