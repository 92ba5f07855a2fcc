#include "cobweb/experiments/summary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cobweb::experiments {

namespace {

struct Accumulator {
  // participant -> (sum p, sum loglik, count)
  std::map<int, std::array<double, 3>> per_participant;

  void add(int participant, double p, double ll) {
    auto& acc = per_participant[participant];
    acc[0] += p;
    acc[1] += ll;
    acc[2] += 1.0;
  }
};

Interval interval_of(const std::vector<double>& samples) {
  if (samples.size() >= 2) return ci95(samples);
  const double m = mean(samples);
  return {m, m, m};
}

Cell finish(const std::string& key, int segment, const Accumulator& acc) {
  std::vector<double> p;
  std::vector<double> ll;
  for (const auto& [participant, sums] : acc.per_participant) {
    p.push_back(sums[0] / sums[2]);
    ll.push_back(sums[1] / sums[2]);
  }
  return {key, segment, p.size(), interval_of(p), interval_of(ll)};
}

// Groups observations by (key, segment), keeping keys in first-seen order.
std::vector<Cell> group(const std::vector<ParticipantResult>& results,
                        bool by_type) {
  std::vector<std::string> order;
  std::map<std::pair<std::string, int>, Accumulator> cells;
  for (const auto& r : results) {
    for (const auto& o : r.observations) {
      const std::string& key = by_type ? o.item_type : o.item_id;
      if (std::find(order.begin(), order.end(), key) == order.end()) {
        order.push_back(key);
      }
      cells[{key, o.segment}].add(r.participant, o.p_reference, o.loglik);
    }
  }
  std::vector<Cell> out;
  for (const auto& key : order) {
    for (auto it = cells.lower_bound({key, 0});
         it != cells.end() && it->first.first == key; ++it) {
      out.push_back(finish(key, it->first.second, it->second));
    }
  }
  return out;
}

const Cell* find_cell(const std::vector<Cell>& cells, const std::string& key,
                      int segment) {
  for (const auto& c : cells) {
    if (c.key == key && c.segment == segment) return &c;
  }
  return nullptr;
}

double p_of(const Summary& s, const std::string& item) {
  const Cell* c = s.item(item);
  if (!c) throw std::logic_error("missing item " + item);
  return c->p_reference.mean;
}

double type_p(const Summary& s, const std::string& type) {
  const Cell* c = s.type(type);
  if (!c) throw std::logic_error("missing item type " + type);
  return c->p_reference.mean;
}

void hayes_roth_effects(Summary& s) {
  const double proto = type_p(s, "prototype");
  bool highest = true;
  for (const auto& c : s.types) {
    if (c.key != "prototype" && c.p_reference.mean >= proto) highest = false;
  }
  const double f1 = type_p(s, "1t-f1");
  const double f10 = type_p(s, "1t-f10");
  const double two = type_p(s, "2t-f1");
  s.effects.push_back({"prototype_most_accurate", highest});
  s.effects.push_back({"one_transform_above_two_transform", f1 > two && f10 > two});
  s.effects.push_back({"frequency_does_not_change_accuracy", std::abs(f10 - f1) < 0.05});

  const Interval& ll1 = s.type("1t-f1")->loglik;
  const Interval& ll10 = s.type("1t-f10")->loglik;
  s.effects.push_back({"frequency_raises_recognition",
                       ll10.mean > ll1.mean && !ll10.overlaps(ll1)});

  std::vector<double> p;
  std::vector<double> ll;
  for (const auto& c : s.types) {
    p.push_back(c.p_reference.mean);
    ll.push_back(c.loglik.mean);
  }
  if (p.size() >= 2) {
    s.correlations.emplace_back("classification_vs_recognition", spearman(p, ll));
  }
}

void medin1_effects(Summary& s) {
  const std::vector<std::string> trained = {"6", "7", "9", "10", "15", "16"};
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& id : trained) ranked.emplace_back(p_of(s, id), id);
  std::sort(ranked.begin(), ranked.end(), std::greater<>());
  const bool top_two =
      (ranked[0].second == "6" || ranked[0].second == "10") &&
      (ranked[1].second == "6" || ranked[1].second == "10") &&
      ranked[1].first > ranked[2].first;
  bool fifteen_last = true;
  for (const auto& id : trained) {
    if (id != "15" && p_of(s, id) <= p_of(s, "15")) fifteen_last = false;
  }
  const bool rows = p_of(s, "5") > p_of(s, "3") && p_of(s, "13") > p_of(s, "8") &&
                    p_of(s, "4") > p_of(s, "14");
  s.effects.push_back({"prototypes_most_accurate", top_two});
  s.effects.push_back({"item10_above_item6", p_of(s, "10") > p_of(s, "6")});
  s.effects.push_back({"item15_least_accurate", fifteen_last});
  s.effects.push_back({"novel_a_above_novel_b", rows});
  s.effects.push_back({"training_runs_near_3", std::abs(s.mean_training_runs - 3.0) <= 1.0});
}

void medin2_effects(Summary& s) {
  s.effects.push_back({"item7_above_item4", p_of(s, "7") > p_of(s, "4")});
  s.effects.push_back({"training_runs_near_2", std::abs(s.mean_training_runs - 2.0) <= 1.0});
}

void smith_minda_effects(Summary& s) {
  const auto exc = trajectory(s, "exception");
  s.transition_segment = first_crossing(exc);
  if (exc.empty()) return;
  s.effects.push_back({"exceptions_correct_from_segment_1", exc.front() > 0.5});
  s.effects.push_back({"exceptions_wrong_at_segment_1", exc.front() < 0.5});
  if (exc.size() >= 3) {
    s.effects.push_back({"exceptions_flat_through_segment_3", exc[2] - exc[0] < 0.1});
  }
  s.effects.push_back({"exceptions_correct_at_end", exc.back() > 0.5});
  const int last = static_cast<int>(exc.size());
  s.effects.push_back({"transition_midway",
                       s.transition_segment && *s.transition_segment >= 3 &&
                           *s.transition_segment <= std::min(9, last)});

  if (exc.size() >= 2) {
    std::vector<double> segments(exc.size());
    for (std::size_t i = 0; i < exc.size(); ++i) segments[i] = static_cast<double>(i + 1);
    for (const std::string type : {"prototype", "standard", "exception"}) {
      const auto series = trajectory(s, type);
      if (series.size() == segments.size()) {
        s.correlations.emplace_back(type + "_trend", spearman(segments, series));
      }
    }
  }
}

nlohmann::ordered_json interval_json(const Interval& i) {
  return {{"mean", i.mean}, {"lower", i.lower}, {"upper", i.upper}};
}

nlohmann::ordered_json cells_json(const std::vector<Cell>& cells) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    out.push_back({{"key", c.key},
                   {"segment", c.segment},
                   {"participants", c.participants},
                   {"p_reference", interval_json(c.p_reference)},
                   {"loglik", interval_json(c.loglik)}});
  }
  return out;
}

}  // namespace

const Cell* Summary::item(const std::string& key, int segment) const {
  return find_cell(items, key, segment);
}

const Cell* Summary::type(const std::string& key, int segment) const {
  return find_cell(types, key, segment);
}

std::optional<bool> Summary::effect(const std::string& name) const {
  for (const auto& e : effects) {
    if (e.name == name) return e.holds;
  }
  return std::nullopt;
}

std::vector<double> trajectory(const Summary& summary, const std::string& type) {
  std::vector<double> out;
  for (int seg = 1;; ++seg) {
    const Cell* c = summary.type(type, seg);
    if (!c) break;
    out.push_back(c->p_reference.mean);
  }
  return out;
}

std::optional<int> first_crossing(const std::vector<double>& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i] > 0.5) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

Summary summarize(const ProtocolParams& protocol,
                  const std::vector<ParticipantResult>& results) {
  if (results.empty()) throw std::invalid_argument("summarize: no participants");
  Summary s;
  s.protocol = protocol;
  s.participants = results.size();
  double runs = 0.0;
  for (const auto& r : results) runs += r.training_runs;
  s.mean_training_runs = runs / static_cast<double>(results.size());
  s.items = group(results, false);
  s.types = group(results, true);

  switch (protocol.experiment) {
    case ExperimentId::hayes_roth:
      hayes_roth_effects(s);
      break;
    case ExperimentId::medin_1:
      medin1_effects(s);
      break;
    case ExperimentId::medin_2:
      medin2_effects(s);
      break;
    case ExperimentId::smith_minda:
      smith_minda_effects(s);
      break;
  }
  return s;
}

nlohmann::ordered_json to_json(const Summary& s) {
  const ProtocolParams& p = s.protocol;
  nlohmann::ordered_json effects = nlohmann::ordered_json::object();
  for (const auto& e : s.effects) effects[e.name] = e.holds;
  nlohmann::ordered_json corr = nlohmann::ordered_json::object();
  for (const auto& [name, rho] : s.correlations) corr[name] = rho;

  nlohmann::ordered_json out = {
      {"experiment", std::string(to_string(p.experiment))},
      {"parameters",
       {{"participants", p.n_participants},
        {"alpha", p.alpha},
        {"max_nodes", p.max_nodes},
        {"variance_floor", p.variance_floor},
        {"weighting", std::string(to_string(p.weighting))},
        {"seed", p.seed}}},
      {"mean_training_runs", s.mean_training_runs},
      {"effects", std::move(effects)},
      {"spearman", std::move(corr)}};
  if (p.experiment == ExperimentId::smith_minda) {
    out["transition_segment"] = s.transition_segment
                                    ? nlohmann::ordered_json(*s.transition_segment)
                                    : nlohmann::ordered_json(nullptr);
    out["exception_trajectory"] = trajectory(s, "exception");
  }
  out["item_types"] = cells_json(s.types);
  out["items"] = cells_json(s.items);
  return out;
}

}  // namespace cobweb::experiments
