#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobweb/experiments/stimuli.hpp"
#include "cobweb/tree.hpp"

namespace cobweb::experiments {

enum class StoppingRule {
  single_pass,   // one pass over the training multiset, then test
  until_clean,   // runs until `clean_runs` consecutive error-free runs
  fixed_blocks,  // `blocks` shuffled blocks, probes after each segment
};

struct ProtocolParams {
  ExperimentId experiment = ExperimentId::medin_1;
  int n_participants = 32;
  double alpha = 0.1;
  std::int64_t max_nodes = 100;
  double variance_floor = 1e-3;
  PmiWeighting weighting = PmiWeighting::ratio;
  StoppingRule stopping = StoppingRule::until_clean;
  int max_runs = 20;
  int clean_runs = 2;
  int blocks = 40;
  int blocks_per_segment = 4;
  std::uint64_t seed = 0;
  EitherLabeling either_labeling = EitherLabeling::per_presentation;

  /// Published settings for each study.
  static ProtocolParams defaults(ExperimentId id);

  TreeParams tree_params() const {
    return {alpha, max_nodes, variance_floor, weighting};
  }

  int segments() const { return blocks / blocks_per_segment; }
  std::uint64_t participant_seed(int participant) const {
    return seed + static_cast<std::uint64_t>(participant);
  }
};

/// One probe of one item. `segment` is 0 for a post-training test phase and
/// 1..segments for probes taken after each training segment.
struct Observation {
  std::string item_id;
  std::string item_type;
  std::string reference;
  int segment = 0;
  double p_reference = 0.0;
  double loglik = 0.0;
};

struct ParticipantResult {
  int participant = 0;
  std::uint64_t seed = 0;
  int training_runs = 0;
  /// Per training run (or block): whether every item was classified
  /// correctly before being trained on.
  std::vector<bool> clean_runs;
  std::vector<Observation> observations;
  std::optional<ConceptTree> tree;  // final model, when requested
};

/// Simulates one participant: classify-then-train over shuffled runs, the
/// stopping rule, and probes that never update the tree.
ParticipantResult run_participant(const ProtocolParams& protocol,
                                  const StimulusSet& stimuli,
                                  std::uint64_t seed, bool keep_tree = false);

/// Runs every participant (seed_i = seed + i), in parallel when more than
/// one hardware thread is available. Results are in participant order.
std::vector<ParticipantResult> run_experiment(const ProtocolParams& protocol,
                                              bool keep_trees = false);

}  // namespace cobweb::experiments
