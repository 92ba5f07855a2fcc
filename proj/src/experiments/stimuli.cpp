#include "cobweb/experiments/stimuli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace cobweb::experiments {

namespace {

using Pattern = std::array<int, 3>;

constexpr const char* kHobbies[] = {"golf", "chess", "sailing"};
constexpr const char* kClassFeatures[] = {"age", "education", "marital_status"};

std::string pattern_string(const Pattern& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('0' + v);
  return s;
}

std::string last_name(std::size_t serial) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "name-%03zu", serial);
  return buf;
}

// Bit-pattern stimuli: "0110" -> {F: "0", S: "1", ...}.
Instance bits_instance(const std::vector<std::string>& names,
                       std::string_view bits) {
  Instance x;
  for (std::size_t i = 0; i < names.size(); ++i) {
    x.emplace(names[i], std::string(1, bits[i]));
  }
  return x;
}

StimulusSet binary_schema(const std::vector<std::string>& names) {
  StimulusSet set;
  for (const auto& n : names) {
    set.schema.add_attribute(n, AttributeKind::categorical);
    set.schema.declare_value(n, "0");
    set.schema.declare_value(n, "1");
  }
  set.label_attribute = "category";
  set.labels = {"A", "B"};
  set.schema.add_attribute(set.label_attribute, AttributeKind::categorical);
  for (const auto& l : set.labels) set.schema.declare_value(set.label_attribute, l);
  return set;
}

struct MedinItem {
  const char* id;
  const char* bits;
  const char* category;
};

StimulusSet medin(const std::vector<MedinItem>& trained,
                  const std::vector<MedinItem>& novel) {
  const std::vector<std::string> names = {"F", "S", "C", "P"};
  StimulusSet set = binary_schema(names);
  for (const auto& item : trained) {
    set.train.push_back({bits_instance(names, item.bits), item.category, item.id,
                         std::string("old-") + item.category});
  }
  for (const auto& item : trained) {
    set.test.push_back({bits_instance(names, item.bits), item.id,
                        std::string("old-") + item.category, item.category});
  }
  for (const auto& item : novel) {
    set.test.push_back({bits_instance(names, item.bits), item.id,
                        std::string("new-") + item.category, item.category});
  }
  return set;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::hayes_roth:
      return "hayes-roth";
    case ExperimentId::medin_1:
      return "medin-1";
    case ExperimentId::medin_2:
      return "medin-2";
    case ExperimentId::smith_minda:
      return "smith-minda";
  }
  return "?";
}

std::optional<ExperimentId> parse_experiment(std::string_view name) {
  for (auto id : {ExperimentId::hayes_roth, ExperimentId::medin_1,
                  ExperimentId::medin_2, ExperimentId::smith_minda}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

Instance StimulusSet::labeled(const TrainItem& item) const {
  Instance x = item.features;
  x.insert_or_assign(label_attribute, item.label);
  return x;
}

StimulusSet gen_hayes_roth(std::uint64_t seed, EitherLabeling labeling) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> hobby_pick(0, 2);
  std::bernoulli_distribution coin(0.5);

  StimulusSet set;
  set.schema.add_attribute("last_name", AttributeKind::categorical);
  for (const char* f : kClassFeatures) {
    set.schema.add_attribute(f, AttributeKind::categorical);
    for (const char* v : {"1", "2", "3", "4"}) set.schema.declare_value(f, v);
  }
  set.schema.add_attribute("hobby", AttributeKind::categorical);
  for (const char* h : kHobbies) set.schema.declare_value("hobby", h);
  set.label_attribute = "club";
  set.labels = {"Club1", "Club2", "Neither"};
  set.schema.add_attribute(set.label_attribute, AttributeKind::categorical);
  for (const auto& l : set.labels) set.schema.declare_value(set.label_attribute, l);

  std::size_t serial = 0;
  auto card = [&](const Pattern& p) {
    Instance x;
    x.emplace("last_name", last_name(serial++));
    for (std::size_t i = 0; i < 3; ++i) {
      x.emplace(kClassFeatures[i], std::to_string(p[i]));
    }
    x.emplace("hobby", kHobbies[hobby_pick(rng)]);
    return x;
  };

  struct Design {
    Pattern pattern;
    std::string id;
    std::string type;
    std::string label;      // empty for either items
    std::string reference;  // category reported at test
    int frequency;
  };
  std::vector<Design> trained;

  const std::array<std::string, 2> clubs = {"Club1", "Club2"};
  for (int c = 0; c < 2; ++c) {
    const int own = c + 1;
    const int other = 2 - c;
    const std::string prefix = c == 0 ? "club1-" : "club2-";
    for (std::size_t pos = 0; pos < 3; ++pos) {
      Pattern p = {own, own, own};
      p[pos] = 3;
      trained.push_back({p, prefix + pattern_string(p), "1t-f1", clubs[c], clubs[c], 1});
    }
    for (std::size_t pos = 0; pos < 3; ++pos) {
      Pattern p = {3, 3, 3};
      p[pos] = own;
      trained.push_back({p, prefix + pattern_string(p), "2t-f1", clubs[c], clubs[c], 1});
    }
    // Value 3 is already spent on the once-seen one-transform items, so the
    // frequent ones take the other club's prototype value.
    for (std::size_t pos = 0; pos < 3; ++pos) {
      Pattern p = {own, own, own};
      p[pos] = other;
      trained.push_back({p, prefix + pattern_string(p), "1t-f10", clubs[c], clubs[c], 10});
    }
  }
  for (const Pattern& p : {Pattern{3, 1, 2}, Pattern{2, 3, 1}, Pattern{1, 3, 2}}) {
    trained.push_back({p, "either-" + pattern_string(p), "either", "", "Club1", 10});
  }

  // Neither items: 30 of the 36 non-prototype patterns containing a 4.
  std::vector<Pattern> neither_pool;
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      for (int c = 1; c <= 4; ++c) {
        const Pattern p = {a, b, c};
        if ((a == 4 || b == 4 || c == 4) && p != Pattern{4, 4, 4}) {
          neither_pool.push_back(p);
        }
      }
    }
  }
  std::shuffle(neither_pool.begin(), neither_pool.end(), rng);
  neither_pool.resize(30);
  std::sort(neither_pool.begin(), neither_pool.end());

  for (const auto& d : trained) {
    const std::string item_label = clubs[coin(rng) ? 1 : 0];
    for (int rep = 0; rep < d.frequency; ++rep) {
      std::string label = d.label;
      if (label.empty()) {
        label = labeling == EitherLabeling::per_item ? item_label
                                                     : clubs[coin(rng) ? 1 : 0];
      }
      set.train.push_back({card(d.pattern), label, d.id, d.type});
    }
  }
  for (const Pattern& p : neither_pool) {
    set.train.push_back({card(p), "Neither", "neither-" + pattern_string(p), "neither"});
  }

  for (const auto& d : trained) {
    set.test.push_back({card(d.pattern), d.id, d.type, d.reference});
  }
  const std::vector<Design> novel = {
      {{1, 1, 1}, "club1-111", "prototype", "", "Club1", 0},
      {{2, 2, 2}, "club2-222", "prototype", "", "Club2", 0},
      {{1, 2, 3}, "either-123", "either-prototype", "", "Club1", 0},
      {{4, 4, 4}, "neither-444", "neither-prototype", "", "Club1", 0},
      {{2, 1, 3}, "either-213", "either-novel", "", "Club1", 0},
      {{3, 2, 1}, "either-321", "either-novel", "", "Club1", 0},
      {{1, 2, 4}, "either-124", "either-novel", "", "Club1", 0},
  };
  for (const auto& d : novel) {
    set.test.push_back({card(d.pattern), d.id, d.type, d.reference});
  }
  return set;
}

StimulusSet gen_medin_exp1() {
  return medin({{"6", "1111", "A"},
                {"7", "1010", "A"},
                {"9", "0101", "A"},
                {"10", "0000", "B"},
                {"15", "1011", "B"},
                {"16", "0100", "B"}},
               {{"5", "0111", "A"},
                {"13", "1101", "A"},
                {"4", "1110", "A"},
                {"3", "1000", "B"},
                {"8", "0010", "B"},
                {"14", "0001", "B"}});
}

StimulusSet gen_medin_exp2() {
  return medin({{"4", "1110", "A"},
                {"7", "1010", "A"},
                {"15", "1011", "A"},
                {"13", "1101", "A"},
                {"5", "0111", "A"},
                {"12", "1100", "B"},
                {"2", "0110", "B"},
                {"14", "0001", "B"},
                {"10", "0000", "B"}},
               {{"1", "1001", "A"},
                {"6", "1111", "A"},
                {"9", "0101", "A"},
                {"11", "0011", "A"},
                {"3", "1000", "B"},
                {"8", "0010", "B"},
                {"16", "0100", "B"}});
}

StimulusSet gen_smith_minda() {
  const std::vector<std::string> names = {"b1", "b2", "b3", "b4", "b5", "b6"};
  StimulusSet set = binary_schema(names);
  struct Item {
    const char* bits;
    const char* category;
    const char* type;
  };
  // Category B mirrors A: complement, with the fifth and sixth positions
  // exchanged so that no pattern appears in both categories.
  const Item items[] = {
      {"000000", "A", "prototype"}, {"100000", "A", "standard"},
      {"010000", "A", "standard"},  {"001000", "A", "standard"},
      {"000100", "A", "standard"},  {"000010", "A", "standard"},
      {"111101", "A", "exception"}, {"111111", "B", "prototype"},
      {"011111", "B", "standard"},  {"101111", "B", "standard"},
      {"110111", "B", "standard"},  {"111011", "B", "standard"},
      {"111110", "B", "standard"},  {"000001", "B", "exception"},
  };
  for (const auto& item : items) {
    const std::string id = std::string(item.category) + "-" + item.bits;
    set.train.push_back({bits_instance(names, item.bits), item.category, id, item.type});
    set.test.push_back({bits_instance(names, item.bits), id, item.type, item.category});
  }
  return set;
}

StimulusSet make_stimuli(ExperimentId id, std::uint64_t seed,
                         EitherLabeling labeling) {
  switch (id) {
    case ExperimentId::hayes_roth:
      return gen_hayes_roth(seed, labeling);
    case ExperimentId::medin_1:
      return gen_medin_exp1();
    case ExperimentId::medin_2:
      return gen_medin_exp2();
    case ExperimentId::smith_minda:
      return gen_smith_minda();
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace cobweb::experiments
