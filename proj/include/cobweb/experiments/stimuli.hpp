#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobweb/schema.hpp"

namespace cobweb::experiments {

enum class ExperimentId { hayes_roth, medin_1, medin_2, smith_minda };

std::string_view to_string(ExperimentId id);
std::optional<ExperimentId> parse_experiment(std::string_view name);

struct TrainItem {
  Instance features;  // without the label
  std::string label;
  std::string item_id;
  std::string item_type;
};

struct TestItem {
  Instance features;
  std::string item_id;
  std::string item_type;
  std::string reference;  // category whose probability is reported
};

/// Everything a simulated participant sees. `schema` already declares the
/// class-relevant feature values and the labels; distractor tokens are left
/// to grow the registry during training.
struct StimulusSet {
  AttributeSchema schema;
  std::string label_attribute;
  std::vector<std::string> labels;
  std::vector<TrainItem> train;  // one entry per presentation
  std::vector<TestItem> test;

  /// Training instance including the label attribute.
  Instance labeled(const TrainItem& item) const;
};

/// How the ambiguous "either" items get their training labels.
enum class EitherLabeling { per_presentation, per_item };

/// Club-membership flashcards: three four-valued class features plus a
/// unique last name and one of three hobbies per card. 132 presentations,
/// 28 test cards.
StimulusSet gen_hayes_roth(std::uint64_t seed,
                           EitherLabeling labeling = EitherLabeling::per_presentation);

/// Four binary features F, S, C, P; non-linearly separable categories.
StimulusSet gen_medin_exp1();
/// Four binary features F, S, C, P; linearly separable categories.
StimulusSet gen_medin_exp2();

/// Six binary features; per category a prototype, five standards and one
/// exception.
StimulusSet gen_smith_minda();

StimulusSet make_stimuli(ExperimentId id, std::uint64_t seed,
                         EitherLabeling labeling = EitherLabeling::per_presentation);

}  // namespace cobweb::experiments
