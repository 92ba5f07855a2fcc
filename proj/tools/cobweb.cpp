#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cobweb/errors.hpp"
#include "cobweb/experiments/protocol.hpp"
#include "cobweb/experiments/summary.hpp"
#include "cobweb/report/config.hpp"
#include "cobweb/report/output.hpp"
#include "cobweb/snapshot.hpp"

namespace fs = std::filesystem;
using namespace cobweb;
using namespace cobweb::experiments;

namespace {

constexpr const char* kOutDirEnv = "COBWEB_OUT_DIR";

struct Overrides {
  std::optional<double> alpha;
  std::optional<std::int64_t> max_nodes;
  std::optional<int> participants;
  std::optional<std::uint64_t> seed;
  std::optional<double> variance_floor;
  std::optional<std::string> weighting;
  std::optional<std::string> either;
  std::optional<std::string> out;
};

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) {
    throw ConfigError("invalid value '" + text + "' for " + key);
  }
  return value;
}

// Settings from the config file fill whatever the command line left unset.
void merge_config(Overrides& o, const std::string& path) {
  for (const auto& [key, value] : report::load_config(path)) {
    if (key == "alpha") {
      if (!o.alpha) o.alpha = parse_number<double>(key, value);
    } else if (key == "max_nodes") {
      if (!o.max_nodes) o.max_nodes = parse_number<std::int64_t>(key, value);
    } else if (key == "participants") {
      if (!o.participants) o.participants = parse_number<int>(key, value);
    } else if (key == "seed") {
      if (!o.seed) o.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "variance_floor") {
      if (!o.variance_floor) o.variance_floor = parse_number<double>(key, value);
    } else if (key == "weighting") {
      if (!o.weighting) o.weighting = value;
    } else if (key == "either_labeling") {
      if (!o.either) o.either = value;
    } else if (key == "out") {
      if (!o.out) o.out = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

ProtocolParams protocol_for(ExperimentId id, const Overrides& o) {
  ProtocolParams p = ProtocolParams::defaults(id);
  if (o.alpha) p.alpha = *o.alpha;
  if (o.max_nodes) p.max_nodes = *o.max_nodes;
  if (o.participants) p.n_participants = *o.participants;
  if (o.seed) p.seed = *o.seed;
  if (o.variance_floor) p.variance_floor = *o.variance_floor;
  if (o.weighting) {
    const auto w = parse_weighting(*o.weighting);
    if (!w) throw ConfigError("weighting must be 'ratio' or 'clamped'");
    p.weighting = *w;
  }
  if (o.either) {
    if (*o.either == "per-presentation") {
      p.either_labeling = EitherLabeling::per_presentation;
    } else if (*o.either == "per-item") {
      p.either_labeling = EitherLabeling::per_item;
    } else {
      throw ConfigError("either labeling must be 'per-presentation' or 'per-item'");
    }
  }
  if (p.n_participants < 1) throw ConfigError("participants must be at least 1");
  validate(p.tree_params());
  return p;
}

fs::path output_dir(ExperimentId id, const Overrides& o) {
  if (o.out) return *o.out;
  const char* env = std::getenv(kOutDirEnv);
  const fs::path base = env && *env ? fs::path(env) : fs::path("results");
  return base / std::string(to_string(id));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

ExperimentId experiment_of(const std::string& name) {
  const auto id = parse_experiment(name);
  if (!id) throw ConfigError("unknown experiment '" + name + "'");
  return *id;
}

int cmd_run(const std::string& name, Overrides o, const std::string& config,
            bool snapshots) {
  const ExperimentId id = experiment_of(name);
  if (!config.empty()) merge_config(o, config);
  const ProtocolParams protocol = protocol_for(id, o);
  const fs::path dir = output_dir(id, o);
  fs::create_directories(dir);

  const auto results = run_experiment(protocol, snapshots);
  const Summary summary = summarize(protocol, results);

  std::ostringstream csv;
  report::write_results_csv(csv, results);
  write_file(dir / "results.csv", csv.str());
  write_file(dir / "summary.json", to_json(summary).dump(2) + "\n");
  const StimulusSet stimuli = make_stimuli(id, protocol.seed, protocol.either_labeling);
  for (const auto& fig : report::figures(summary, stimuli)) {
    write_file(dir / fig.file_name, fig.svg);
  }
  if (snapshots) {
    fs::create_directories(dir / "snapshots");
    for (const auto& r : results) {
      std::ostringstream file;
      file << "participant-" << r.participant << ".json";
      save_snapshot(*r.tree, (dir / "snapshots" / file.str()).string());
    }
  }

  std::cout << to_string(id) << ": " << results.size() << " participants, mean "
            << summary.mean_training_runs << " training runs\n";
  for (const auto& e : summary.effects) {
    std::cout << "  " << e.name << ": " << (e.holds ? "yes" : "no") << '\n';
  }
  if (id == ExperimentId::smith_minda) {
    std::cout << "  transition segment: "
              << (summary.transition_segment ? std::to_string(*summary.transition_segment)
                                             : std::string("none"))
              << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
  return 0;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int cmd_sweep(const std::string& name, Overrides o, const std::string& config,
              const std::string& param, const std::vector<std::string>& raw_values) {
  const ExperimentId id = experiment_of(name);
  if (param != "alpha" && param != "max_nodes") {
    throw ConfigError("sweep parameter must be 'alpha' or 'max_nodes'");
  }
  std::vector<std::string> values;
  for (const auto& v : raw_values) {
    for (auto& part : split_values(v)) values.push_back(std::move(part));
  }
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (!config.empty()) merge_config(o, config);

  std::ostringstream table;
  table << "param,value,mean_training_runs,effects_holding,transition_segment,"
           "exception_segment_1,exception_final\n";
  for (const auto& v : values) {
    Overrides run = o;
    if (param == "alpha") {
      run.alpha = parse_number<double>(param, v);
    } else {
      run.max_nodes = parse_number<std::int64_t>(param, v);
    }
    const ProtocolParams protocol = protocol_for(id, run);
    const Summary s = summarize(protocol, run_experiment(protocol));
    int holding = 0;
    for (const auto& e : s.effects) holding += e.holds ? 1 : 0;
    table << param << ',' << v << ',' << report::format_double(s.mean_training_runs) << ','
          << holding << '/' << s.effects.size() << ',';
    if (id == ExperimentId::smith_minda) {
      const auto exc = trajectory(s, "exception");
      table << (s.transition_segment ? std::to_string(*s.transition_segment) : "none")
            << ',' << (exc.empty() ? "" : report::format_double(exc.front())) << ','
            << (exc.empty() ? "" : report::format_double(exc.back()));
    } else {
      table << ",,";
    }
    table << '\n';
  }
  std::cout << table.str();
  if (o.out) {
    fs::create_directories(*o.out);
    write_file(fs::path(*o.out) / "sweep.csv", table.str());
  }
  return 0;
}

void print_node(const ConceptNode& node, const AttributeSchema& schema, int depth,
                std::size_t top) {
  std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ') << '#' << node.id
            << " count=" << node.count();
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema.at(a);
    if (attr.is_categorical()) {
      const auto& c = node.stats.categorical(a);
      if (c.n == 0) continue;
      std::vector<std::pair<std::int64_t, std::size_t>> ranked;
      for (std::size_t v = 0; v < c.counts.size(); ++v) {
        if (c.counts[v] > 0) ranked.emplace_back(-c.counts[v], v);
      }
      std::sort(ranked.begin(), ranked.end());
      std::cout << "  " << attr.name() << '=';
      for (std::size_t i = 0; i < ranked.size() && i < top; ++i) {
        std::cout << (i ? "," : "") << attr.values()[ranked[i].second] << ':'
                  << -ranked[i].first;
      }
      if (ranked.size() > top) std::cout << ",...";
    } else {
      const auto& g = node.stats.gaussian(a);
      if (g.n == 0) continue;
      std::cout << "  " << attr.name() << '=' << report::format_double(g.mean) << "+-"
                << report::format_double(std::sqrt(g.variance()));
    }
  }
  std::cout << '\n';
  for (const auto& child : node.children) print_node(*child, schema, depth + 1, top);
}

int cmd_inspect(const std::string& path, std::size_t top) {
  try {
    const ConceptTree tree = load_snapshot(path);
    print_node(tree.root(), tree.schema(), 0, top);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << path << ": " << e.what();
    if (e.position() != ParseError::npos) std::cerr << " (byte offset " << e.position() << ')';
    std::cerr << '\n';
    return 1;
  }
}

void add_overrides(CLI::App* cmd, Overrides& o, std::string& config) {
  cmd->add_option("--participants", o.participants, "Number of simulated participants");
  cmd->add_option("--seed", o.seed, "Master seed; participant i uses seed + i");
  cmd->add_option("--max-nodes", o.max_nodes, "Concepts expanded per query");
  cmd->add_option("--variance-floor", o.variance_floor, "Minimum Gaussian variance");
  cmd->add_option("--weighting", o.weighting, "Expansion weights: ratio or clamped");
  cmd->add_option("--either-labeling", o.either,
                  "Hayes-Roth either items: per-presentation or per-item");
  cmd->add_option("--config", config, "key = value settings file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-theoretic Cobweb categorization simulations"};
  app.require_subcommand(1);

  Overrides run_opts;
  std::string run_config;
  std::string run_experiment_name;
  bool snapshots = false;
  auto* run = app.add_subcommand("run", "Simulate one experiment and write results");
  run->add_option("experiment", run_experiment_name,
                  "hayes-roth, medin-1, medin-2 or smith-minda")
      ->required();
  run->add_option("--alpha", run_opts.alpha, "Pseudocount per attribute value");
  run->add_option("--out", run_opts.out,
                  std::string("Output directory (default $") + kOutDirEnv +
                      "/<experiment> or results/<experiment>)");
  run->add_flag("--snapshots", snapshots, "Also write each participant's final tree");
  add_overrides(run, run_opts, run_config);

  Overrides sweep_opts;
  std::string sweep_config;
  std::string sweep_experiment;
  std::string sweep_param;
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Compare summaries across parameter values");
  sweep->add_option("experiment", sweep_experiment)->required();
  sweep->add_option("--param", sweep_param, "alpha or max_nodes")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--alpha", sweep_opts.alpha, "Alpha when sweeping max_nodes");
  sweep->add_option("--out", sweep_opts.out, "Directory for sweep.csv");
  add_overrides(sweep, sweep_opts, sweep_config);

  std::string snapshot_path;
  std::size_t top = 3;
  auto* inspect = app.add_subcommand("inspect", "Print a saved concept tree");
  inspect->add_option("snapshot", snapshot_path)->required();
  inspect->add_option("--top", top, "Values listed per attribute")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_experiment_name, run_opts, run_config, snapshots);
    if (*sweep) {
      return cmd_sweep(sweep_experiment, sweep_opts, sweep_config, sweep_param,
                       sweep_values);
    }
    if (*inspect) return cmd_inspect(snapshot_path, top);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
