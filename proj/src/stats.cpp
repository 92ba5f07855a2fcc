#include "cobweb/stats.hpp"

#include <algorithm>
#include <cassert>

namespace cobweb {

void CategoricalCounts::add(std::size_t value, std::int64_t times) {
  if (counts.size() <= value) counts.resize(value + 1, 0);
  counts[value] += times;
  n += times;
}

void CategoricalCounts::merge(const CategoricalCounts& other) {
  if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t v = 0; v < other.counts.size(); ++v) counts[v] += other.counts[v];
  n += other.n;
}

bool CategoricalCounts::operator==(const CategoricalCounts& other) const {
  if (n != other.n) return false;
  const std::size_t len = std::max(counts.size(), other.counts.size());
  for (std::size_t v = 0; v < len; ++v) {
    if (count(v) != other.count(v)) return false;
  }
  return true;
}

void GaussianStats::add(double x) {
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

void GaussianStats::merge(const GaussianStats& other) {
  if (other.n == 0) return;
  if (n == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(other.n);
  const double total = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / total;
  m2 += other.m2 + delta * delta * na * nb / total;
  n += other.n;
}

double GaussianStats::variance() const {
  return n == 0 ? 0.0 : m2 / static_cast<double>(n);
}

ConceptStats::ConceptStats(const AttributeSchema& schema) {
  dists.reserve(schema.size());
  for (const auto& attr : schema.attributes()) {
    if (attr.is_categorical()) {
      dists.emplace_back(CategoricalCounts{});
    } else {
      dists.emplace_back(GaussianStats{});
    }
  }
}

void ConceptStats::add(const EncodedInstance& x) {
  assert(x.size() == dists.size());
  ++count;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const EncodedValue& v = x.values[i];
    switch (v.state) {
      case EncodedValue::State::missing:
        break;
      case EncodedValue::State::categorical:
        std::get<CategoricalCounts>(dists[i]).add(v.index);
        break;
      case EncodedValue::State::continuous:
        std::get<GaussianStats>(dists[i]).add(v.real);
        break;
    }
  }
}

void ConceptStats::merge(const ConceptStats& other) {
  if (dists.empty()) {
    *this = other;
    return;
  }
  assert(other.dists.size() == dists.size());
  count += other.count;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    std::visit(
        [&](auto& mine) {
          using T = std::decay_t<decltype(mine)>;
          mine.merge(std::get<T>(other.dists[i]));
        },
        dists[i]);
  }
}

}  // namespace cobweb
