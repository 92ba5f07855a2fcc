#include "cobweb/experiments/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

#include "cobweb/inference.hpp"
#include "cobweb/learner.hpp"

namespace cobweb::experiments {

ProtocolParams ProtocolParams::defaults(ExperimentId id) {
  ProtocolParams p;
  p.experiment = id;
  p.max_nodes = 100;
  switch (id) {
    case ExperimentId::hayes_roth:
      p.n_participants = 54;
      p.alpha = 1.0;
      p.stopping = StoppingRule::single_pass;
      p.max_runs = 1;
      break;
    case ExperimentId::medin_1:
      p.n_participants = 32;
      p.alpha = 0.1;
      p.stopping = StoppingRule::until_clean;
      p.max_runs = 20;
      p.clean_runs = 2;
      break;
    case ExperimentId::medin_2:
      p.n_participants = 32;
      p.alpha = 0.1;
      p.stopping = StoppingRule::until_clean;
      p.max_runs = 16;
      p.clean_runs = 1;
      break;
    case ExperimentId::smith_minda:
      p.n_participants = 16;
      p.alpha = 2.0;
      p.stopping = StoppingRule::fixed_blocks;
      p.blocks = 40;
      p.blocks_per_segment = 4;
      break;
  }
  return p;
}

namespace {

class Participant {
 public:
  Participant(const ProtocolParams& protocol, const StimulusSet& stimuli,
              std::uint64_t seed)
      : stimuli_(stimuli),
        tree_(stimuli.schema, protocol.tree_params()),
        label_(stimuli.schema.index_of(stimuli.label_attribute)) {
    // Shuffles and guesses draw from a stream separate from the one the
    // stimulus generator used with the same seed.
    std::seed_seq seq{seed, std::uint64_t{0x70726f746f636f6c}};
    rng_.seed(seq);
  }

  // Classifies then trains on every item in a fresh random order; returns
  // whether every classification was correct.
  bool training_run() {
    std::vector<std::size_t> order(stimuli_.train.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng_);
    bool clean = true;
    for (std::size_t i : order) {
      const TrainItem& item = stimuli_.train[i];
      if (classify(item.features) != item.label) clean = false;
      ifit(tree_, stimuli_.labeled(item));
    }
    return clean;
  }

  void probe(int segment, std::vector<Observation>& out) const {
    for (const TestItem& item : stimuli_.test) {
      const ExpansionSet expansion = expand(tree_, item.features);
      const PredictedDistribution pred = predict_from(tree_, expansion, label_);
      out.push_back({item.item_id, item.item_type, item.reference, segment,
                     pred.categorical().probability_of(item.reference),
                     score_loglik(expansion)});
    }
  }

  ConceptTree& tree() { return tree_; }

 private:
  std::string classify(const Instance& features) {
    std::vector<std::string> candidates;
    if (tree_.empty()) {
      candidates = stimuli_.labels;
    } else {
      candidates =
          predict_from(tree_, expand(tree_, features), label_).categorical().most_likely();
    }
    if (candidates.size() == 1) return candidates.front();
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng_)];
  }

  const StimulusSet& stimuli_;
  ConceptTree tree_;
  std::size_t label_;
  std::mt19937_64 rng_;
};

}  // namespace

ParticipantResult run_participant(const ProtocolParams& protocol,
                                  const StimulusSet& stimuli,
                                  std::uint64_t seed, bool keep_tree) {
  Participant participant(protocol, stimuli, seed);
  ParticipantResult result;
  result.seed = seed;

  switch (protocol.stopping) {
    case StoppingRule::single_pass:
      result.clean_runs.push_back(participant.training_run());
      result.training_runs = 1;
      participant.probe(0, result.observations);
      break;
    case StoppingRule::until_clean: {
      int consecutive = 0;
      for (int run = 1; run <= protocol.max_runs; ++run) {
        const bool clean = participant.training_run();
        result.clean_runs.push_back(clean);
        result.training_runs = run;
        consecutive = clean ? consecutive + 1 : 0;
        if (consecutive >= protocol.clean_runs) break;
      }
      participant.probe(0, result.observations);
      break;
    }
    case StoppingRule::fixed_blocks:
      for (int block = 1; block <= protocol.blocks; ++block) {
        result.clean_runs.push_back(participant.training_run());
        if (block % protocol.blocks_per_segment == 0) {
          participant.probe(block / protocol.blocks_per_segment,
                            result.observations);
        }
      }
      result.training_runs = protocol.blocks;
      break;
  }
  if (keep_tree) result.tree = std::move(participant.tree());
  return result;
}

std::vector<ParticipantResult> run_experiment(const ProtocolParams& protocol,
                                              bool keep_trees) {
  const int n = protocol.n_participants;
  std::vector<ParticipantResult> results(static_cast<std::size_t>(std::max(n, 0)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const std::uint64_t seed = protocol.participant_seed(i);
      const StimulusSet stimuli =
          make_stimuli(protocol.experiment, seed, protocol.either_labeling);
      ParticipantResult r = run_participant(protocol, stimuli, seed, keep_trees);
      r.participant = i;
      results[static_cast<std::size_t>(i)] = std::move(r);
    }
  };
  const unsigned threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(std::max(n, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace cobweb::experiments
