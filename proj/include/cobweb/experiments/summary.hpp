#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cobweb/experiments/protocol.hpp"
#include "cobweb/experiments/statistics.hpp"

namespace cobweb::experiments {

/// Aggregate of one item (or item type) at one probe. Intervals are taken
/// over per-participant means, so each participant counts once.
struct Cell {
  std::string key;
  int segment = 0;
  std::size_t participants = 0;
  Interval p_reference;
  Interval loglik;
};

struct Effect {
  std::string name;
  bool holds = false;
};

struct Summary {
  ProtocolParams protocol;
  std::size_t participants = 0;
  double mean_training_runs = 0.0;
  std::vector<Cell> items;  // in test-list order, then by segment
  std::vector<Cell> types;  // in order of first appearance, then by segment
  std::vector<Effect> effects;
  std::vector<std::pair<std::string, double>> correlations;
  /// Smith-Minda only: first segment whose mean exception P(correct)
  /// exceeds 0.5.
  std::optional<int> transition_segment;

  const Cell* item(const std::string& key, int segment = 0) const;
  const Cell* type(const std::string& key, int segment = 0) const;
  std::optional<bool> effect(const std::string& name) const;
};

/// Segment-by-segment mean P(correct) of one item type, index 0 holding
/// segment 1.
std::vector<double> trajectory(const Summary& summary, const std::string& type);

/// First 1-based segment with a value above 0.5.
std::optional<int> first_crossing(const std::vector<double>& series);

/// Throws std::invalid_argument when `results` is empty.
Summary summarize(const ProtocolParams& protocol,
                  const std::vector<ParticipantResult>& results);

nlohmann::ordered_json to_json(const Summary& summary);

}  // namespace cobweb::experiments
