#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cobweb/experiments/protocol.hpp"
#include "cobweb/experiments/summary.hpp"

namespace cobweb::report {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// One row per observation: participant, item_id, item_type, segment,
/// p_reference, loglik.
void write_results_csv(std::ostream& out,
                       const std::vector<experiments::ParticipantResult>& results);

struct Figure {
  std::string file_name;
  std::string svg;
};

/// The figures for one experiment: bars with interval whiskers per item
/// type (Hayes-Roth classification and recognition), per-item points
/// (Medin), or per-item segment trajectories of P(A) (Smith-Minda).
std::vector<Figure> figures(const experiments::Summary& summary,
                            const experiments::StimulusSet& stimuli);

}  // namespace cobweb::report
