#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cobweb/errors.hpp"
#include "cobweb/experiments/protocol.hpp"
#include "cobweb/experiments/summary.hpp"
#include "cobweb/report/config.hpp"
#include "cobweb/report/output.hpp"
#include "doctest.h"

using namespace cobweb;
using namespace cobweb::experiments;

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = i % 3 ? u(rng) : u(rng) * 1e-300;
    const std::string s = report::format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(report::format_double(0.5) == "0.5");
  CHECK(report::format_double(3.0) == "3");
  CHECK(std::stod(report::format_double(std::numeric_limits<double>::min())) ==
        std::numeric_limits<double>::min());
}

TEST_CASE("config files") {
  std::istringstream in(
      "# comment\n"
      "alpha = 0.5\n"
      "\n"
      "out = \"my dir # not a comment\"  # trailing\n"
      "  participants=8\n");
  const auto cfg = report::read_config(in);
  CHECK(cfg.size() == 3);
  CHECK(cfg.at("alpha") == "0.5");
  CHECK(cfg.at("out") == "my dir # not a comment");
  CHECK(cfg.at("participants") == "8");

  for (const char* bad : {"alpha 0.5\n", "= 3\n", "a = \"open\n", "a = 1\na = 2\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(report::read_config(b), ConfigError);
  }
  CHECK_THROWS(report::load_config("/nonexistent/dir/config.txt"));
}

TEST_CASE("results csv has one row per observation") {
  auto protocol = ProtocolParams::defaults(ExperimentId::medin_1);
  protocol.n_participants = 2;
  const auto results = run_experiment(protocol);
  std::ostringstream out;
  report::write_results_csv(out, results);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "participant,item_id,item_type,segment,p_reference,loglik");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 24);
}

TEST_CASE("figures per experiment") {
  for (auto id : {ExperimentId::hayes_roth, ExperimentId::medin_1, ExperimentId::smith_minda}) {
    auto protocol = ProtocolParams::defaults(id);
    protocol.n_participants = 2;
    const auto s = summarize(protocol, run_experiment(protocol));
    const auto figs = report::figures(s, make_stimuli(id, 0));
    REQUIRE_FALSE(figs.empty());
    for (const auto& f : figs) {
      CHECK(f.file_name.ends_with(".svg"));
      CHECK(f.svg.starts_with("<svg"));
      CHECK(f.svg.find("</svg>") != std::string::npos);
    }
    if (id == ExperimentId::hayes_roth) CHECK(figs.size() == 2);
  }
}
